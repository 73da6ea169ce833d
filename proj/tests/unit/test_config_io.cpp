#include "xqpt/config.hpp"
#include "xqpt/io.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace xqpt;

namespace {

const char* valid_config = R"({
  "version": 1,
  "dimer": {"omega_a_cm": 12881, "omega_b_cm": 12719, "coupling_cm": 120,
            "d_a": 1.0, "d_b_over_d_a": 2.0, "phi_rad": 0.3},
  "bath": {"k_down_per_fs": 0.004, "temperature_k": 273,
           "gamma_pd_per_fs": 0.0055555555555555558,
           "gamma_opt_per_fs": 0.0066666666666666671},
  "toolbox": {"omega_plus_cm": 13480, "omega_minus_cm": 12130, "sigma_fs": 17,
              "mdc_override": {"c_prime": [0, 20], "c_second": [0, 1]}},
  "experiment": {"t_grid_fs": {"start": 51, "stop": 1000, "step": 10}},
  "ensemble": {"n": 10000, "sigma_inh_cm": 40, "sigma_laser": 0.05, "seed": 77},
  "output_dir": "out"
})";

std::filesystem::path temp_dir() {
    const auto dir =
        std::filesystem::temp_directory_path() / "xqpt_io_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("valid config parses to the expected values") {
    const RunConfig config = parse_run_config(valid_config);
    CHECK(config.dimer.omega_a_cm == 12881.0);
    CHECK(config.dimer.dipole_b.norm() == doctest::Approx(2.0));
    CHECK(config.bath.temperature_k == 273.0);
    CHECK(config.bath.k_leak_per_fs == 0.0);  // optional default
    CHECK(config.experiment.toolbox.mdc_override.has_value());
    CHECK(config.experiment.toolbox.mdc_override->first ==
          std::complex<double>(0.0, 20.0));
    CHECK(config.experiment.t_grid_fs.size() == 95);
    CHECK(config.experiment.t_grid_fs.front() == 51.0);
    CHECK(config.experiment.t_grid_fs.back() == 991.0);
    CHECK(config.ensemble.n == 10000);
    CHECK(config.experiment.isotropic_average);  // default
    CHECK(config.output_dir == "out");
}

TEST_CASE("config schema violations carry field paths") {
    using doctest::Contains;

    SUBCASE("unknown key") {
        std::string text = valid_config;
        text.replace(text.find("\"output_dir\""), 12, "\"outputdir\"");
        CHECK_THROWS_WITH_AS((void)parse_run_config(text), Contains("outputdir"),
                             config_error);
    }
    SUBCASE("unknown nested key") {
        std::string text = valid_config;
        text.replace(text.find("\"omega_a_cm\""), 12, "\"omega_a\"");
        try {
            (void)parse_run_config(text);
            FAIL("expected config_error");
        } catch (const config_error& err) {
            CHECK(std::string(err.what()).find("dimer.") != std::string::npos);
        }
    }
    SUBCASE("missing required key") {
        std::string text = valid_config;
        const auto pos = text.find("\"coupling_cm\": 120,");
        text.erase(pos, std::string("\"coupling_cm\": 120,").size());
        CHECK_THROWS_WITH_AS((void)parse_run_config(text), Contains("coupling_cm"),
                             config_error);
    }
    SUBCASE("wrong type") {
        std::string text = valid_config;
        text.replace(text.find("\"sigma_fs\": 17"), 14, "\"sigma_fs\": \"17\"");
        CHECK_THROWS_WITH_AS((void)parse_run_config(text), Contains("sigma_fs"),
                             config_error);
    }
    SUBCASE("unsupported version") {
        std::string text = valid_config;
        text.replace(text.find("\"version\": 1"), 12, "\"version\": 3");
        CHECK_THROWS_WITH_AS((void)parse_run_config(text), Contains("version"),
                             config_error);
    }
    SUBCASE("corrupt JSON reports the parse location") {
        const std::string text = "{\"version\": 1,, }";
        try {
            (void)parse_run_config(text);
            FAIL("expected config_error");
        } catch (const config_error& err) {
            CHECK(std::string(err.what()).find("parse error") != std::string::npos);
        }
    }
    SUBCASE("invalid waiting-time grid") {
        std::string text = valid_config;
        text.replace(text.find("\"start\": 51"), 11, "\"start\": 10");
        CHECK_THROWS_AS((void)parse_run_config(text), config_error);
    }
}

TEST_CASE("explicit grid values are accepted") {
    std::string text = valid_config;
    text.replace(text.find("{\"start\": 51, \"stop\": 1000, \"step\": 10}"),
                 std::string("{\"start\": 51, \"stop\": 1000, \"step\": 10}").size(),
                 "{\"values\": [51, 120.5, 333]}");
    const RunConfig config = parse_run_config(text);
    CHECK(config.experiment.t_grid_fs == std::vector<double>{51.0, 120.5, 333.0});
}

TEST_CASE("config serialization round trip") {
    const RunConfig config = parse_run_config(valid_config);
    const RunConfig back = parse_run_config(run_config_to_json(config));
    CHECK(back.dimer.omega_a_cm == config.dimer.omega_a_cm);
    CHECK((back.dimer.dipole_b - config.dimer.dipole_b).norm() < 1e-12);
    CHECK(back.bath.gamma_pd_per_fs == config.bath.gamma_pd_per_fs);
    CHECK(back.experiment.t_grid_fs == config.experiment.t_grid_fs);
    CHECK(back.ensemble.seed == config.ensemble.seed);
}

TEST_CASE("signal files round trip bit-exactly") {
    const auto dir = temp_dir();
    const ExperimentConfig experiment = [] {
        ExperimentConfig e = testing::reference_experiment();
        e.t_grid_fs = {51.0, 101.0, 151.0};
        return e;
    }();
    EnsembleSettings settings;
    settings.n = 8;
    settings.sigma_inh_cm = 40.0;
    settings.sigma_laser = 0.05;
    settings.seed = 31;
    const SignalTrajectory trajectory =
        simulate_trajectory(experiment, testing::reference_dimer(),
                            testing::reference_bath(), settings, 1);

    const auto csv = (dir / "signals.csv").string();
    const auto meta = (dir / "signals.meta.json").string();
    write_signals_csv(csv, trajectory);
    write_signal_meta_json(meta, trajectory.meta);

    const SignalTrajectory back = read_signals(csv, meta);
    REQUIRE(back.sets.size() == trajectory.sets.size());
    for (std::size_t i = 0; i < trajectory.sets.size(); ++i) {
        CHECK(back.sets[i].waiting_time_fs == trajectory.sets[i].waiting_time_fs);
        for (int w = 0; w < 16; ++w) {
            CHECK(back.sets[i].values[w] == trajectory.sets[i].values[w]);
        }
    }
    CHECK(back.meta.settings.seed == settings.seed);
    CHECK(back.meta.settings.n == settings.n);
    for (int w = 0; w < 16; ++w) {
        CHECK(back.meta.scales.word_norm[w] == trajectory.meta.scales.word_norm[w]);
    }
}

TEST_CASE("chi trajectory files round trip bit-exactly") {
    const auto dir = temp_dir();
    const ExcitonBasis basis = exciton_transform(testing::reference_dimer());
    const BathParams bath = testing::reference_bath();

    std::vector<ReconstructionResult> trajectory;
    for (double t : {51.0, 201.0, 401.0}) {
        ReconstructionResult r;
        r.chi_hat = true_process_matrix(basis, bath, t);
        r.residual = 0.01 * t;
        r.condition_number = 1.78;
        r.iterations = 3;
        trajectory.push_back(std::move(r));
    }
    const auto path = (dir / "chi.json").string();
    write_chi_trajectory_json(path, trajectory);
    const auto back = read_chi_trajectory_json(path);
    REQUIRE(back.size() == trajectory.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK((back[i].chi_hat.transfer() - trajectory[i].chi_hat.transfer()).norm() ==
              0.0);
        CHECK(back[i].chi_hat.waiting_time_fs() ==
              trajectory[i].chi_hat.waiting_time_fs());
        CHECK(back[i].residual == trajectory[i].residual);
        CHECK(back[i].iterations == trajectory[i].iterations);
    }
    write_chi_trajectory_csv((dir / "chi.csv").string(), trajectory);
}

TEST_CASE("malformed signal files are rejected") {
    const auto dir = temp_dir();
    const auto csv = (dir / "bad.csv").string();
    const auto meta = (dir / "bad.meta.json").string();
    {
        std::ofstream m(meta);
        m << R"({"version":1,"seed":1,"n":1,"sigma_inh_cm":0,"sigma_laser":0,
                "global_scale":1,"word_norms":[1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1]})";
    }
    SUBCASE("bad header") {
        std::ofstream f(csv);
        f << "T,word,re,im\n51,++++,0,0\n";
        f.close();
        CHECK_THROWS_AS((void)read_signals(csv, meta), io_error);
    }
    SUBCASE("bad word") {
        std::ofstream f(csv);
        f << "T_fs,word,re,im\n51,+*++,0,0\n";
        f.close();
        CHECK_THROWS_AS((void)read_signals(csv, meta), io_error);
    }
    SUBCASE("incomplete waiting time") {
        std::ofstream f(csv);
        f << "T_fs,word,re,im\n51,++++,0,0\n";
        f.close();
        CHECK_THROWS_AS((void)read_signals(csv, meta), io_error);
    }
}
