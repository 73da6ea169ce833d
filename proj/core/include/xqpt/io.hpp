// io.hpp — plot-ready file formats: signal CSV + JSON sidecar and the
// chi-trajectory JSON/CSV emitted by the reconstruction.

#pragma once

#include "xqpt/ensemble.hpp"
#include "xqpt/reconstruct.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace xqpt {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// CSV columns: T_fs, word, re, im (one row per waiting time and word).
void write_signals_csv(const std::string& path, const SignalTrajectory& trajectory);
void write_signal_meta_json(const std::string& path, const SignalMeta& meta);
SignalTrajectory read_signals(const std::string& csv_path, const std::string& meta_path);

// Chi trajectory: one record per waiting time with all 25 sector entries and
// the reconstruction diagnostics. Truth files written by `simulate` use the
// same schema with the diagnostics zeroed.
void write_chi_trajectory_json(const std::string& path,
                               const std::vector<ReconstructionResult>& trajectory);
void write_chi_trajectory_csv(const std::string& path,
                              const std::vector<ReconstructionResult>& trajectory);
std::vector<ReconstructionResult> read_chi_trajectory_json(const std::string& path);

} // namespace xqpt
