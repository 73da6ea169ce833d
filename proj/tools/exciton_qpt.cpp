// exciton_qpt — config-driven driver for the two-color photon-echo QPT
// pipeline: forward simulation, chi(T) reconstruction, conditioning sweeps,
// and file validation.

#include "xqpt/config.hpp"
#include "xqpt/diagnostics.hpp"
#include "xqpt/io.hpp"
#include "xqpt/reconstruct.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_config = 2;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

xqpt::RunConfig load_config(const CommonArgs& args) {
    xqpt::RunConfig config = xqpt::load_run_config(args.config_path);
    if (args.seed) config.ensemble.seed = *args.seed;
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    return config;
}

fs::path ensure_out_dir(const xqpt::RunConfig& config) {
    const fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw xqpt::io_error("cannot create output directory " + dir.string() + ": " +
                             ec.message());
    }
    return dir;
}

int cmd_simulate(const CommonArgs& args) {
    const xqpt::RunConfig config = load_config(args);
    const fs::path out = ensure_out_dir(config);

    for (const auto& warning : xqpt::diagnose_geometry(config.dimer).warnings) {
        std::cerr << "warning: " << warning << '\n';
    }

    const xqpt::SignalTrajectory trajectory = xqpt::simulate_trajectory(
        config.experiment, config.dimer, config.bath, config.ensemble, args.threads);
    xqpt::write_signals_csv((out / "signals.csv").string(), trajectory);
    xqpt::write_signal_meta_json((out / "signals.meta.json").string(), trajectory.meta);

    // the model's own chi(T), usable as ground truth for `reconstruct --truth`
    const xqpt::ExcitonBasis basis = xqpt::exciton_transform(config.dimer);
    std::vector<xqpt::ReconstructionResult> truth;
    truth.reserve(config.experiment.t_grid_fs.size());
    for (const double t : config.experiment.t_grid_fs) {
        xqpt::ReconstructionResult r;
        r.chi_hat = xqpt::true_process_matrix(basis, config.bath, t);
        truth.push_back(std::move(r));
    }
    xqpt::write_chi_trajectory_json((out / "chi_true.json").string(), truth);

    std::cout << "wrote " << (out / "signals.csv").string() << " ("
              << trajectory.sets.size() << " waiting times, n = "
              << config.ensemble.n << ")\n";
    return exit_ok;
}

int cmd_reconstruct(const CommonArgs& args, const std::string& signals_path,
                    const std::string& truth_path) {
    const xqpt::RunConfig config = load_config(args);
    const fs::path out = ensure_out_dir(config);

    const fs::path csv = signals_path.empty()
                             ? out / "signals.csv"
                             : fs::path(signals_path);
    const fs::path meta = csv.parent_path() / (csv.stem().string() + ".meta.json");
    const xqpt::SignalTrajectory trajectory =
        xqpt::read_signals(csv.string(), meta.string());

    const xqpt::ExcitonBasis basis = xqpt::exciton_transform(config.dimer);
    xqpt::DesignMatrix design;
    try {
        design = xqpt::assemble_design_matrix(basis, config.experiment,
                                              config.bath.gamma_opt_per_fs,
                                              &trajectory.meta.scales);
    } catch (const xqpt::rank_deficient_error& err) {
        const xqpt::GeometryDiagnostics geometry = xqpt::diagnose_geometry(config.dimer);
        std::cerr << "error: " << err.what() << '\n';
        for (const auto& warning : geometry.warnings) {
            std::cerr << "  geometry: " << warning << '\n';
        }
        for (const auto& direction : err.null_directions()) {
            std::cerr << "  unidentifiable: " << direction << '\n';
        }
        return exit_runtime;
    }

    std::vector<xqpt::ReconstructionResult> results;
    results.reserve(trajectory.sets.size());
    for (const xqpt::SignalSet& set : trajectory.sets) {
        results.push_back(xqpt::reconstruct_chi(set, design));
    }
    xqpt::write_chi_trajectory_json((out / "chi_trajectory.json").string(), results);
    xqpt::write_chi_trajectory_csv((out / "chi_trajectory.csv").string(), results);

    std::cout << "reconstructed " << results.size() << " waiting times, kappa = "
              << xqpt::condition_number(design) << '\n';

    if (!truth_path.empty()) {
        const auto truth = xqpt::read_chi_trajectory_json(truth_path);
        if (truth.size() != results.size()) {
            std::cerr << "error: truth file has " << truth.size()
                      << " records, expected " << results.size() << '\n';
            return exit_runtime;
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            sum += xqpt::relative_error(results[i].chi_hat, truth[i].chi_hat);
        }
        std::cout << "avg_rel_err = " << sum / results.size() << '\n';
    }
    return exit_ok;
}

std::vector<double> parse_grid(const std::string& spec, const std::string& name) {
    // "start:stop:count" or a single value
    std::vector<double> values;
    const auto first = spec.find(':');
    if (first == std::string::npos) {
        values.push_back(std::stod(spec));
        return values;
    }
    const auto second = spec.find(':', first + 1);
    if (second == std::string::npos) {
        throw std::invalid_argument(name + ": expected start:stop:count");
    }
    const double start = std::stod(spec.substr(0, first));
    const double stop = std::stod(spec.substr(first + 1, second - first - 1));
    const int count = std::stoi(spec.substr(second + 1));
    if (count < 1) throw std::invalid_argument(name + ": count must be >= 1");
    for (int i = 0; i < count; ++i) {
        values.push_back(count == 1 ? start
                                    : start + (stop - start) * i / (count - 1));
    }
    return values;
}

int cmd_diagnose(const CommonArgs& args, const std::string& theta_spec,
                 const std::string& ratio_spec, const std::string& phi_spec,
                 double threshold) {
    const xqpt::RunConfig config = load_config(args);
    const fs::path out = ensure_out_dir(config);

    xqpt::SweepGrid grid;
    grid.theta_rad = parse_grid(theta_spec, "--theta");
    grid.dipole_ratio = parse_grid(ratio_spec, "--ratio");
    grid.phi_rad = parse_grid(phi_spec, "--phi");
    grid.kappa_threshold = threshold;

    const auto points = xqpt::condition_sweep(config.dimer, config.experiment,
                                              config.bath.gamma_opt_per_fs, grid);

    const fs::path csv = out / "conditioning.csv";
    {
        std::ofstream file(csv, std::ios::binary);
        if (!file) {
            throw xqpt::io_error("cannot open for writing: " + csv.string());
        }
        file << std::setprecision(12) << "theta_rad,d_b_over_d_a,phi_rad,kappa,flagged,note\n";
        for (const auto& p : points) {
            file << p.theta_rad << ',' << p.dipole_ratio << ',' << p.phi_rad << ','
                 << p.kappa << ',' << (p.flagged ? 1 : 0) << ",\"" << p.note << "\"\n";
        }
    }
    std::size_t flagged = 0;
    for (const auto& p : points) flagged += p.flagged ? 1 : 0;
    std::cout << "wrote " << csv.string() << " (" << points.size() << " points, "
              << flagged << " flagged)\n";
    return exit_ok;
}

int cmd_validate(const CommonArgs& args, const std::string& signals_path,
                 const std::string& chi_path) {
    xqpt::load_run_config(args.config_path);
    std::cout << "config ok: " << args.config_path << '\n';
    if (!signals_path.empty()) {
        const fs::path csv(signals_path);
        const fs::path meta = csv.parent_path() / (csv.stem().string() + ".meta.json");
        const auto trajectory = xqpt::read_signals(csv.string(), meta.string());
        std::cout << "signals ok: " << signals_path << " (" << trajectory.sets.size()
                  << " waiting times)\n";
    }
    if (!chi_path.empty()) {
        const auto trajectory = xqpt::read_chi_trajectory_json(chi_path);
        for (const auto& r : trajectory) {
            if (!r.chi_hat.is_cptp(1e-6)) {
                std::cerr << "error: chi record at T = "
                          << r.chi_hat.waiting_time_fs()
                          << " fs violates the CPTP invariants\n";
                return exit_config;
            }
        }
        std::cout << "chi trajectory ok: " << chi_path << " (" << trajectory.size()
                  << " records)\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-color photon-echo process tomography of excitonic dimers"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string signals_path, truth_path, chi_path;
    std::string theta_spec = "0.05:1.52:25";
    std::string ratio_spec = "2.0";
    std::string phi_spec = "0.3";
    double kappa_threshold = 10.0;

    const auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        cmd->add_option("--config", common.config_path, "run configuration (JSON)")
            ->required(needs_config);
        cmd->add_option("--out", common.out_dir, "output directory override");
        cmd->add_option("--seed", common.seed, "ensemble seed override");
        cmd->add_option("--threads", common.threads,
                        "worker threads (default: EXCITON_QPT_THREADS or all cores)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "forward-model the signals");
    add_common(simulate);

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "invert signals into chi(T)");
    add_common(reconstruct);
    reconstruct->add_option("--signals", signals_path,
                            "signals CSV (default <out>/signals.csv)");
    reconstruct->add_option("--truth", truth_path,
                            "ground-truth chi JSON for the error summary");

    CLI::App* diagnose =
        app.add_subcommand("diagnose", "condition-number sweep over the geometry");
    add_common(diagnose);
    diagnose->add_option("--theta", theta_spec, "theta grid start:stop:count (rad)");
    diagnose->add_option("--ratio", ratio_spec, "dipole ratio grid start:stop:count");
    diagnose->add_option("--phi", phi_spec, "dipole angle grid start:stop:count (rad)");
    diagnose->add_option("--kappa-threshold", kappa_threshold, "flagging threshold");

    CLI::App* validate = app.add_subcommand("validate", "schema-check emitted files");
    add_common(validate);
    validate->add_option("--signals", signals_path, "signals CSV to check");
    validate->add_option("--chi", chi_path, "chi trajectory JSON to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    }

    try {
        if (simulate->parsed()) return cmd_simulate(common);
        if (reconstruct->parsed()) return cmd_reconstruct(common, signals_path, truth_path);
        if (diagnose->parsed())
            return cmd_diagnose(common, theta_spec, ratio_spec, phi_spec,
                                kappa_threshold);
        if (validate->parsed()) return cmd_validate(common, signals_path, chi_path);
    } catch (const xqpt::config_error& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return exit_config;
    } catch (const xqpt::io_error& err) {
        std::cerr << "io error: " << err.what() << '\n';
        return exit_config;
    } catch (const xqpt::rank_deficient_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_runtime;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}
