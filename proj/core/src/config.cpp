#include "xqpt/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace xqpt {

namespace {

using nlohmann::json;

// Tracks visited keys so unknown ones can be rejected with a full field path.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : json_(j), path_(std::move(path)) {
        if (!json_.is_object()) {
            throw config_error(path_, "expected an object");
        }
    }

    ~ObjectReader() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (const auto& [key, value] : json_.items()) {
            if (!seen_.count(key)) {
                throw config_error(join(key), "unknown key");
            }
        }
    }

    bool has(const std::string& key) {
        return json_.contains(key) && !json_.at(key).is_null();
    }

    const json& require(const std::string& key) {
        seen_.insert(key);
        if (!json_.contains(key)) {
            throw config_error(join(key), "missing required key");
        }
        return json_.at(key);
    }

    const json* optional(const std::string& key) {
        seen_.insert(key);
        if (!has(key)) return nullptr;
        return &json_.at(key);
    }

    double number(const std::string& key) { return as_number(require(key), join(key)); }

    double number_or(const std::string& key, double fallback) {
        const json* j = optional(key);
        return j ? as_number(*j, join(key)) : fallback;
    }

    bool boolean_or(const std::string& key, bool fallback) {
        const json* j = optional(key);
        if (!j) return fallback;
        if (!j->is_boolean()) throw config_error(join(key), "expected a boolean");
        return j->get<bool>();
    }

    std::uint64_t unsigned_integer(const std::string& key) {
        const json& j = require(key);
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
            throw config_error(join(key), "expected a non-negative integer");
        }
        return j.get<std::uint64_t>();
    }

    std::string string_or(const std::string& key, const std::string& fallback) {
        const json* j = optional(key);
        if (!j) return fallback;
        if (!j->is_string()) throw config_error(join(key), "expected a string");
        return j->get<std::string>();
    }

    std::string join(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    static double as_number(const json& j, const std::string& path) {
        if (!j.is_number()) throw config_error(path, "expected a number");
        return j.get<double>();
    }

    const json& json_;
    std::string path_;
    std::set<std::string> seen_;
};

std::complex<double> parse_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw config_error(path, "expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::Vector3d parse_vector3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) {
        throw config_error(path, "expected a 3-vector");
    }
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number()) throw config_error(path, "expected a 3-vector of numbers");
        v[i] = j[i].get<double>();
    }
    return v;
}

std::vector<double> parse_t_grid(const json& j, const std::string& path) {
    if (j.is_object()) {
        ObjectReader grid(j, path);
        if (grid.has("values")) {
            const json& values = grid.require("values");
            if (!values.is_array() || values.empty()) {
                throw config_error(path + ".values", "expected a non-empty array");
            }
            std::vector<double> out;
            out.reserve(values.size());
            for (const auto& v : values) {
                if (!v.is_number()) throw config_error(path + ".values", "expected numbers");
                out.push_back(v.get<double>());
            }
            return out;
        }
        const double start = grid.number("start");
        const double stop = grid.number("stop");
        const double step = grid.number("step");
        if (step <= 0.0 || stop < start) {
            throw config_error(path, "need step > 0 and stop >= start");
        }
        std::vector<double> out;
        for (double t = start; t <= stop + 1e-9 * step; t += step) out.push_back(t);
        return out;
    }
    throw config_error(path, "expected {start, stop, step} or {values: [...]}");
}

RunConfig parse_config_json(const json& root) {
    RunConfig config;
    ObjectReader top(root, "");

    const json& version = top.require("version");
    if (!version.is_number_integer() || version.get<int>() != 1) {
        throw config_error("version", "unsupported config version (expected 1)");
    }
    config.version = 1;

    {
        ObjectReader dimer(top.require("dimer"), "dimer");
        const double omega_a = dimer.number("omega_a_cm");
        const double omega_b = dimer.number("omega_b_cm");
        const double coupling = dimer.number("coupling_cm");
        const double d_a = dimer.number_or("d_a", 1.0);
        const double ratio = dimer.number("d_b_over_d_a");
        const double phi = dimer.number("phi_rad");
        if (d_a <= 0.0) throw config_error("dimer.d_a", "must be > 0");
        if (ratio <= 0.0) throw config_error("dimer.d_b_over_d_a", "must be > 0");
        config.dimer = DimerParams::from_geometry(omega_a, omega_b, coupling, d_a,
                                                  ratio, phi);
    }
    {
        ObjectReader bath(top.require("bath"), "bath");
        config.bath.k_down_per_fs = bath.number("k_down_per_fs");
        config.bath.temperature_k = bath.number("temperature_k");
        config.bath.gamma_pd_per_fs = bath.number("gamma_pd_per_fs");
        config.bath.k_leak_per_fs = bath.number_or("k_leak_per_fs", 0.0);
        config.bath.gamma_opt_per_fs = bath.number("gamma_opt_per_fs");
        try {
            config.bath.validate();
        } catch (const std::invalid_argument& err) {
            throw config_error("bath", err.what());
        }
    }
    {
        ObjectReader toolbox(top.require("toolbox"), "toolbox");
        config.experiment.toolbox.omega_plus_cm = toolbox.number("omega_plus_cm");
        config.experiment.toolbox.omega_minus_cm = toolbox.number("omega_minus_cm");
        config.experiment.toolbox.sigma_fs = toolbox.number("sigma_fs");
        if (const json* mdc = toolbox.optional("mdc_override")) {
            ObjectReader over(*mdc, "toolbox.mdc_override");
            config.experiment.toolbox.mdc_override = {
                parse_complex(over.require("c_prime"), "toolbox.mdc_override.c_prime"),
                parse_complex(over.require("c_second"), "toolbox.mdc_override.c_second")};
        }
        try {
            config.experiment.toolbox.validate();
        } catch (const std::invalid_argument& err) {
            throw config_error("toolbox", err.what());
        }
    }
    {
        ObjectReader experiment(top.require("experiment"), "experiment");
        config.experiment.tau_fs = experiment.number_or("tau_fs", 0.0);
        config.experiment.t_echo_fs = experiment.number_or("t_echo_fs", 0.0);
        config.experiment.t_grid_fs =
            parse_t_grid(experiment.require("t_grid_fs"), "experiment.t_grid_fs");
        config.experiment.apply_overlap_factor =
            experiment.boolean_or("apply_overlap_factor", false);
        config.experiment.isotropic_average =
            experiment.boolean_or("isotropic_average", true);
        config.experiment.normalization_scale =
            experiment.number_or("normalization_scale", 0.0);
        if (const json* pols = experiment.optional("polarizations")) {
            if (!pols->is_array() || pols->size() != 4) {
                throw config_error("experiment.polarizations", "expected 4 unit 3-vectors");
            }
            for (int i = 0; i < 4; ++i) {
                config.experiment.polarizations[i] =
                    parse_vector3((*pols)[i], "experiment.polarizations");
            }
        }
        try {
            config.experiment.validate();
        } catch (const std::invalid_argument& err) {
            throw config_error("experiment", err.what());
        }
    }
    {
        ObjectReader ensemble(top.require("ensemble"), "ensemble");
        const std::uint64_t n = ensemble.unsigned_integer("n");
        if (n == 0) throw config_error("ensemble.n", "must be >= 1");
        config.ensemble.n = static_cast<std::size_t>(n);
        config.ensemble.sigma_inh_cm = ensemble.number("sigma_inh_cm");
        config.ensemble.sigma_laser = ensemble.number("sigma_laser");
        config.ensemble.seed = ensemble.unsigned_integer("seed");
        try {
            config.ensemble.validate();
        } catch (const std::invalid_argument& err) {
            throw config_error("ensemble", err.what());
        }
    }
    config.output_dir = top.string_or("output_dir", "out");
    return config;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw config_error("<json>", err.what());
    }
    return parse_config_json(root);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error(path, "cannot open config file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_run_config(buffer.str());
    } catch (const config_error& err) {
        throw config_error(path + ":" + err.field_path(),
                           err.what() + std::string(" (in ") + path + ")");
    }
}

std::string run_config_to_json(const RunConfig& config) {
    json root;
    root["version"] = config.version;

    const double d_a = config.dimer.dipole_a.norm();
    const double d_b = config.dimer.dipole_b.norm();
    root["dimer"] = {{"omega_a_cm", config.dimer.omega_a_cm},
                     {"omega_b_cm", config.dimer.omega_b_cm},
                     {"coupling_cm", config.dimer.coupling_cm},
                     {"d_a", d_a},
                     {"d_b_over_d_a", d_b / d_a},
                     {"phi_rad", std::atan2(config.dimer.dipole_b.x(),
                                            config.dimer.dipole_b.z())}};
    root["bath"] = {{"k_down_per_fs", config.bath.k_down_per_fs},
                    {"temperature_k", config.bath.temperature_k},
                    {"gamma_pd_per_fs", config.bath.gamma_pd_per_fs},
                    {"k_leak_per_fs", config.bath.k_leak_per_fs},
                    {"gamma_opt_per_fs", config.bath.gamma_opt_per_fs}};
    json toolbox = {{"omega_plus_cm", config.experiment.toolbox.omega_plus_cm},
                    {"omega_minus_cm", config.experiment.toolbox.omega_minus_cm},
                    {"sigma_fs", config.experiment.toolbox.sigma_fs}};
    if (config.experiment.toolbox.mdc_override) {
        const auto& [cp, cs] = *config.experiment.toolbox.mdc_override;
        toolbox["mdc_override"] = {{"c_prime", {cp.real(), cp.imag()}},
                                   {"c_second", {cs.real(), cs.imag()}}};
    }
    root["toolbox"] = std::move(toolbox);
    json experiment = {{"tau_fs", config.experiment.tau_fs},
                       {"t_echo_fs", config.experiment.t_echo_fs},
                       {"t_grid_fs", {{"values", config.experiment.t_grid_fs}}},
                       {"apply_overlap_factor", config.experiment.apply_overlap_factor},
                       {"isotropic_average", config.experiment.isotropic_average},
                       {"normalization_scale", config.experiment.normalization_scale}};
    root["experiment"] = std::move(experiment);
    root["ensemble"] = {{"n", config.ensemble.n},
                        {"sigma_inh_cm", config.ensemble.sigma_inh_cm},
                        {"sigma_laser", config.ensemble.sigma_laser},
                        {"seed", config.ensemble.seed}};
    root["output_dir"] = config.output_dir;
    return root.dump(2);
}

} // namespace xqpt
