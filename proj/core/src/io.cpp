#include "xqpt/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

namespace xqpt {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) {
        throw io_error("cannot open for writing: " + path);
    }
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_file(const std::string& path) {
    try {
        return json::parse(slurp(path));
    } catch (const json::parse_error& err) {
        throw io_error(path + ": " + err.what());
    }
}

json chi_record(const ReconstructionResult& r) {
    json entries = json::array();
    for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < 5; ++col) {
            const std::complex<double> v = r.chi_hat.transfer()(row, col);
            entries.push_back({{"row", sector_pair_names[row]},
                               {"col", sector_pair_names[col]},
                               {"re", v.real()},
                               {"im", v.imag()}});
        }
    }
    return {{"T_fs", r.chi_hat.waiting_time_fs()},
            {"entries", std::move(entries)},
            {"residual", r.residual},
            {"residual_unconstrained", r.residual_unconstrained},
            {"min_eigenvalue", r.min_eigenvalue},
            {"min_eigenvalue_unconstrained", r.min_eigenvalue_unconstrained},
            {"condition_number", r.condition_number},
            {"iterations", r.iterations}};
}

int sector_index_of(const std::string& name, const std::string& path) {
    for (int i = 0; i < 5; ++i) {
        if (name == sector_pair_names[i]) return i;
    }
    throw io_error(path + ": unknown sector pair '" + name + "'");
}

} // namespace

void write_signals_csv(const std::string& path, const SignalTrajectory& trajectory) {
    std::ofstream out = open_output(path);
    out << "T_fs,word,re,im\n";
    for (const SignalSet& set : trajectory.sets) {
        for (const FrequencyWord& word : FrequencyWord::all()) {
            const auto v = set.values[word.index()];
            out << set.waiting_time_fs << ',' << word.str() << ',' << v.real() << ','
                << v.imag() << '\n';
        }
    }
}

void write_signal_meta_json(const std::string& path, const SignalMeta& meta) {
    json root = {{"version", 1},
                 {"seed", meta.settings.seed},
                 {"n", meta.settings.n},
                 {"sigma_inh_cm", meta.settings.sigma_inh_cm},
                 {"sigma_laser", meta.settings.sigma_laser},
                 {"global_scale", meta.scales.global_scale},
                 {"word_norms", meta.scales.word_norm}};
    open_output(path) << root.dump(2) << '\n';
}

SignalTrajectory read_signals(const std::string& csv_path, const std::string& meta_path) {
    SignalTrajectory trajectory;

    const json meta = parse_file(meta_path);
    try {
        trajectory.meta.settings.seed = meta.at("seed").get<std::uint64_t>();
        trajectory.meta.settings.n = meta.at("n").get<std::size_t>();
        trajectory.meta.settings.sigma_inh_cm = meta.at("sigma_inh_cm").get<double>();
        trajectory.meta.settings.sigma_laser = meta.at("sigma_laser").get<double>();
        trajectory.meta.scales.global_scale = meta.at("global_scale").get<double>();
        const auto norms = meta.at("word_norms");
        if (!norms.is_array() || norms.size() != 16) {
            throw io_error(meta_path + ": word_norms must hold 16 values");
        }
        for (int w = 0; w < 16; ++w) {
            trajectory.meta.scales.word_norm[w] = norms[w].get<double>();
        }
    } catch (const json::exception& err) {
        throw io_error(meta_path + ": " + err.what());
    }

    std::istringstream in(slurp(csv_path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("T_fs,word,re,im", 0) != 0) {
        throw io_error(csv_path + ": missing 'T_fs,word,re,im' header");
    }
    std::map<double, SignalSet> by_time;
    std::map<double, int> counts;
    std::vector<double> order;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string t_str, word_str, re_str, im_str;
        if (!std::getline(row, t_str, ',') || !std::getline(row, word_str, ',') ||
            !std::getline(row, re_str, ',') || !std::getline(row, im_str)) {
            throw io_error(csv_path + ":" + std::to_string(line_no) + ": malformed row");
        }
        double t = 0.0, re = 0.0, im = 0.0;
        try {
            t = std::stod(t_str);
            re = std::stod(re_str);
            im = std::stod(im_str);
        } catch (const std::exception&) {
            throw io_error(csv_path + ":" + std::to_string(line_no) + ": bad number");
        }
        const FrequencyWord word = [&] {
            try {
                return FrequencyWord::parse(word_str);
            } catch (const std::invalid_argument& err) {
                throw io_error(csv_path + ":" + std::to_string(line_no) + ": " +
                               err.what());
            }
        }();
        if (!by_time.count(t)) {
            order.push_back(t);
            by_time[t].waiting_time_fs = t;
        }
        by_time[t].values[word.index()] = {re, im};
        counts[t] += 1;
    }
    for (const auto& [t, count] : counts) {
        if (count != 16) {
            throw io_error(csv_path + ": waiting time " + std::to_string(t) +
                           " has " + std::to_string(count) + " words (expected 16)");
        }
    }
    if (order.empty()) {
        throw io_error(csv_path + ": no signal rows");
    }
    trajectory.sets.reserve(order.size());
    for (const double t : order) trajectory.sets.push_back(by_time[t]);
    return trajectory;
}

void write_chi_trajectory_json(const std::string& path,
                               const std::vector<ReconstructionResult>& trajectory) {
    json records = json::array();
    for (const auto& r : trajectory) records.push_back(chi_record(r));
    json root = {{"version", 1}, {"trajectory", std::move(records)}};
    open_output(path) << root.dump(2) << '\n';
}

void write_chi_trajectory_csv(const std::string& path,
                              const std::vector<ReconstructionResult>& trajectory) {
    std::ofstream out = open_output(path);
    out << "T_fs,row,col,re,im\n";
    for (const auto& r : trajectory) {
        for (int row = 0; row < 5; ++row) {
            for (int col = 0; col < 5; ++col) {
                const std::complex<double> v = r.chi_hat.transfer()(row, col);
                out << r.chi_hat.waiting_time_fs() << ',' << sector_pair_names[row]
                    << ',' << sector_pair_names[col] << ',' << v.real() << ','
                    << v.imag() << '\n';
            }
        }
    }
}

std::vector<ReconstructionResult> read_chi_trajectory_json(const std::string& path) {
    const json root = parse_file(path);
    std::vector<ReconstructionResult> out;
    try {
        if (!root.contains("trajectory") || !root.at("trajectory").is_array()) {
            throw io_error(path + ": missing 'trajectory' array");
        }
        for (const auto& record : root.at("trajectory")) {
            SectorMatrix transfer = SectorMatrix::Zero();
            for (const auto& entry : record.at("entries")) {
                const int row =
                    sector_index_of(entry.at("row").get<std::string>(), path);
                const int col =
                    sector_index_of(entry.at("col").get<std::string>(), path);
                transfer(row, col) = {entry.at("re").get<double>(),
                                      entry.at("im").get<double>()};
            }
            ReconstructionResult r;
            r.chi_hat = ProcessMatrix::from_transfer(transfer,
                                                     record.at("T_fs").get<double>());
            r.residual = record.value("residual", 0.0);
            r.residual_unconstrained = record.value("residual_unconstrained", 0.0);
            r.min_eigenvalue = record.value("min_eigenvalue", 0.0);
            r.min_eigenvalue_unconstrained =
                record.value("min_eigenvalue_unconstrained", 0.0);
            r.condition_number = record.value("condition_number", 0.0);
            r.iterations = record.value("iterations", 0);
            out.push_back(std::move(r));
        }
    } catch (const json::exception& err) {
        throw io_error(path + ": " + err.what());
    }
    return out;
}

} // namespace xqpt
