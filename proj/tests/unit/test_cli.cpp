// End-to-end checks of the exciton_qpt binary: subcommands, exit codes, and
// reproducibility of the file pipeline.

#include "xqpt/config.hpp"
#include "xqpt/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CommandResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CommandResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt";
    const fs::path err_file = dir / "stderr.txt";
    const std::string command = std::string(XQPT_CLI_PATH) + " " + args + " > " +
                                out_file.string() + " 2> " + err_file.string();
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "xqpt_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// n = 1, noise-free, short grid: fast and exactly invertible
void write_small_config(const fs::path& path, const std::string& out_dir,
                        bool homodimer = false, double sigma_laser = 0.0) {
    std::ofstream f(path);
    f << R"({
  "version": 1,
  "dimer": {"omega_a_cm": )"
      << (homodimer ? 12800 : 12881) << R"(, "omega_b_cm": )"
      << (homodimer ? 12800 : 12719) << R"(, "coupling_cm": 120,
            "d_a": 1.0, "d_b_over_d_a": )"
      << (homodimer ? 1.0 : 2.0) << R"(, "phi_rad": 0.3},
  "bath": {"k_down_per_fs": 0.004, "temperature_k": 273,
           "gamma_pd_per_fs": 0.00555555555555556,
           "gamma_opt_per_fs": 0.00666666666666667},
  "toolbox": {"omega_plus_cm": 13480, "omega_minus_cm": 12130, "sigma_fs": 17,
              "mdc_override": {"c_prime": [0, 20], "c_second": [0, 1]}},
  "experiment": {"t_grid_fs": {"start": 51, "stop": 251, "step": 50}},
  "ensemble": {"n": 1, "sigma_inh_cm": 0, "sigma_laser": )"
      << sigma_laser << R"(, "seed": 444},
  "output_dir": ")"
      << out_dir << R"("
})";
}

} // namespace

TEST_CASE("simulate then reconstruct recovers chi exactly through the files") {
    const fs::path dir = fresh_dir("roundtrip");
    const fs::path config = dir / "config.json";
    write_small_config(config, (dir / "out").string());

    const auto sim = run_cli("simulate --config " + config.string(), dir);
    CHECK(sim.exit_code == 0);
    CHECK(fs::exists(dir / "out" / "signals.csv"));
    CHECK(fs::exists(dir / "out" / "signals.meta.json"));
    CHECK(fs::exists(dir / "out" / "chi_true.json"));

    const auto rec = run_cli("reconstruct --config " + config.string() +
                                 " --truth " + (dir / "out" / "chi_true.json").string(),
                             dir);
    CHECK(rec.exit_code == 0);
    CHECK(fs::exists(dir / "out" / "chi_trajectory.json"));
    CHECK(fs::exists(dir / "out" / "chi_trajectory.csv"));
    REQUIRE(rec.out.find("avg_rel_err = ") != std::string::npos);
    const double avg = std::stod(
        rec.out.substr(rec.out.find("avg_rel_err = ") + 14));
    CHECK(avg < 1e-8);
}

TEST_CASE("pipeline output is bit-reproducible for a fixed seed") {
    const fs::path dir = fresh_dir("repro");
    const fs::path config = dir / "config.json";
    write_small_config(config, (dir / "out").string(), false, 0.05);

    CHECK(run_cli("simulate --config " + config.string(), dir).exit_code == 0);
    CHECK(run_cli("reconstruct --config " + config.string(), dir).exit_code == 0);
    const std::string signals_first = slurp(dir / "out" / "signals.csv");
    const std::string chi_first = slurp(dir / "out" / "chi_trajectory.json");

    CHECK(run_cli("simulate --config " + config.string(), dir).exit_code == 0);
    CHECK(run_cli("reconstruct --config " + config.string(), dir).exit_code == 0);
    CHECK(slurp(dir / "out" / "signals.csv") == signals_first);
    CHECK(slurp(dir / "out" / "chi_trajectory.json") == chi_first);

    // a seed override changes the noisy signals
    CHECK(run_cli("simulate --config " + config.string() + " --seed 999", dir)
              .exit_code == 0);
    CHECK(slurp(dir / "out" / "signals.csv") != signals_first);
}

TEST_CASE("corrupt JSON exits with code 2 and a parse location") {
    const fs::path dir = fresh_dir("corrupt");
    const fs::path config = dir / "config.json";
    {
        std::ofstream f(config);
        f << "{\"version\": 1,, broken";
    }
    const auto result = run_cli("simulate --config " + config.string(), dir);
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("parse error") != std::string::npos);
}

TEST_CASE("schema violations exit with code 2 and a field path") {
    const fs::path dir = fresh_dir("schema");
    const fs::path config = dir / "config.json";
    write_small_config(config, (dir / "out").string());
    std::string text = slurp(config);
    text.replace(text.find("\"coupling_cm\""), 13, "\"coupling\"");
    {
        std::ofstream f(config);
        f << text;
    }
    const auto result = run_cli("simulate --config " + config.string(), dir);
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("coupling") != std::string::npos);
}

TEST_CASE("homodimer reconstruction reports the rank deficiency") {
    const fs::path dir = fresh_dir("homodimer");
    const fs::path good_config = dir / "good.json";
    write_small_config(good_config, (dir / "out").string());
    CHECK(run_cli("simulate --config " + good_config.string(), dir).exit_code == 0);

    const fs::path bad_config = dir / "homodimer.json";
    write_small_config(bad_config, (dir / "out").string(), true);
    const auto result = run_cli("reconstruct --config " + bad_config.string(), dir);
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("rank deficient") != std::string::npos);
    CHECK(result.err.find("homodimer") != std::string::npos);
}

TEST_CASE("diagnose sweeps the geometry grid") {
    const fs::path dir = fresh_dir("diagnose");
    const fs::path config = dir / "config.json";
    write_small_config(config, (dir / "out").string());

    SUBCASE("single-point grid yields one row with the reference kappa") {
        const auto result = run_cli("diagnose --config " + config.string() +
                                        " --theta 0.4885 --ratio 2.0 --phi 0.3",
                                    dir);
        CHECK(result.exit_code == 0);
        const std::string csv = slurp(dir / "out" / "conditioning.csv");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + 1 row
        CHECK(csv.find("theta_rad") != std::string::npos);
        // theta,ratio,phi,kappa,... on the data row
        std::istringstream rows(csv);
        std::string header, data;
        std::getline(rows, header);
        std::getline(rows, data);
        std::istringstream fields(data);
        std::string theta, ratio, phi, kappa;
        std::getline(fields, theta, ',');
        std::getline(fields, ratio, ',');
        std::getline(fields, phi, ',');
        std::getline(fields, kappa, ',');
        CHECK(std::stod(kappa) <= 2.9);
        CHECK(std::stod(kappa) >= 1.0);
    }

    SUBCASE("grid crossing theta = 0 flags the divergence") {
        const auto result = run_cli("diagnose --config " + config.string() +
                                        " --theta 0.0:0.6:4 --ratio 2.0 --phi 0.3",
                                    dir);
        CHECK(result.exit_code == 0);
        const std::string csv = slurp(dir / "out" / "conditioning.csv");
        CHECK(csv.find(",1,") != std::string::npos);  // at least one flagged row
        CHECK(csv.find("inf") != std::string::npos);
    }
}

TEST_CASE("validate accepts everything the pipeline emits") {
    const fs::path dir = fresh_dir("validate");
    const fs::path config = dir / "config.json";
    write_small_config(config, (dir / "out").string());
    CHECK(run_cli("simulate --config " + config.string(), dir).exit_code == 0);
    CHECK(run_cli("reconstruct --config " + config.string(), dir).exit_code == 0);

    const auto result = run_cli(
        "validate --config " + config.string() + " --signals " +
            (dir / "out" / "signals.csv").string() + " --chi " +
            (dir / "out" / "chi_trajectory.json").string(),
        dir);
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("config ok") != std::string::npos);
    CHECK(result.out.find("signals ok") != std::string::npos);
    CHECK(result.out.find("chi trajectory ok") != std::string::npos);
}
