// ensemble.hpp — inhomogeneously broadened ensemble simulation with laser
// noise: the full forward model behind the `simulate` command.

#pragma once

#include "xqpt/dimer.hpp"
#include "xqpt/dynamics.hpp"
#include "xqpt/signal.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace xqpt {

struct EnsembleSettings {
    std::size_t n{1};          // ensemble size
    double sigma_inh_cm{0.0};  // diagonal disorder width
    double sigma_laser{0.0};   // Gaussian noise per re/im signal component
    std::uint64_t seed{0};

    void validate() const;
};

// Per-word normalization: each word's signal is divided by
// word_norm = global_scale * word functional norm, which equilibrates the
// design matrix rows and makes every normalized signal O(1).
struct SignalScales {
    std::array<double, 16> word_norm{};  // final per-word divisors
    double global_scale{1.0};
};

struct SignalMeta {
    EnsembleSettings settings;
    SignalScales scales;
};

struct SignalTrajectory {
    std::vector<SignalSet> sets;  // normalized (and noisy) signals per waiting time
    SignalMeta meta;
};

// Derive the scales from the ideal (single nominal dimer, noise-free) run:
// global_scale is fixed so the largest scaled ideal signal over the grid is 1,
// unless experiment.normalization_scale overrides it.
SignalScales signal_scales(const ExperimentConfig& experiment,
                           const ExcitonBasis& nominal_basis, const BathParams& bath);

// Forward-model the whole experiment: build the disordered ensemble once,
// average the sixteen signals member-wise at every waiting time (pairwise
// summation, deterministic for any thread count), normalize, then add
// independent Gaussian laser noise per word and waiting time.
SignalTrajectory simulate_trajectory(const ExperimentConfig& experiment,
                                     const DimerParams& nominal,
                                     const BathParams& bath,
                                     const EnsembleSettings& settings,
                                     unsigned threads = 0);

// Thread-count resolution: explicit argument, else EXCITON_QPT_THREADS, else
// hardware concurrency.
unsigned resolve_thread_count(unsigned requested);

} // namespace xqpt
