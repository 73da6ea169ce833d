// dynamics.hpp — secular Redfield ground truth for chi(T) and the optical
// coherence propagators used in the preparation/detection intervals.

#pragma once

#include "xqpt/dimer.hpp"
#include "xqpt/process_matrix.hpp"

#include <complex>

namespace xqpt {

struct BathParams {
    double k_down_per_fs{0.0};    // downhill population rate alpha -> beta
    double temperature_k{0.0};    // bath temperature (K)
    double gamma_pd_per_fs{0.0};  // pure dephasing of the alpha-beta coherence
    double k_leak_per_fs{0.0};    // amplitude leakage to gg from each population
    double gamma_opt_per_fs{0.0}; // dephasing rate of the optical coherences

    void validate() const;
};

// Detailed balance: k_up = k_down * exp(-omega_ab / (k_B T)).
double redfield_uphill_rate(double k_down_per_fs, double omega_ab_cm,
                            double temperature_k);

// Total decay rate of the alpha-beta coherence:
// (k_down + k_up + 2 k_leak)/2 + gamma_pd.
double coherence_decay_rate(const ExcitonBasis& basis, const BathParams& bath);

// Theta(tau) * exp((-i omega_ij - Gamma_ij) tau), with Theta(0) = 1.
std::complex<double> coherence_propagator(double omega_ij_cm, double gamma_ij_per_fs,
                                          double tau_fs);

// chi(T) of the secular model: populations evolve under the classical rate
// matrix on {gg, aa, bb}, the ab coherence decays at coherence_decay_rate
// while rotating at omega_ab, and all population<->coherence blocks vanish.
ProcessMatrix true_process_matrix(const ExcitonBasis& basis, const BathParams& bath,
                                  double waiting_time_fs);

} // namespace xqpt
