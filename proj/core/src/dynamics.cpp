#include "xqpt/dynamics.hpp"

#include "xqpt/units.hpp"

#include <cmath>
#include <stdexcept>

namespace xqpt {

void BathParams::validate() const {
    if (k_down_per_fs < 0.0 || gamma_pd_per_fs < 0.0 || k_leak_per_fs < 0.0 ||
        gamma_opt_per_fs < 0.0) {
        throw std::invalid_argument("BathParams: rates must be >= 0");
    }
    if (temperature_k <= 0.0) {
        throw std::invalid_argument("BathParams: temperature must be > 0");
    }
}

double redfield_uphill_rate(double k_down_per_fs, double omega_ab_cm,
                            double temperature_k) {
    if (temperature_k <= 0.0) {
        throw std::invalid_argument("redfield_uphill_rate: temperature must be > 0");
    }
    return k_down_per_fs *
           std::exp(-omega_ab_cm / (units::k_boltzmann_cm_per_k * temperature_k));
}

double coherence_decay_rate(const ExcitonBasis& basis, const BathParams& bath) {
    const double k_up = redfield_uphill_rate(bath.k_down_per_fs,
                                             basis.omega_alpha_beta_cm(),
                                             bath.temperature_k);
    return 0.5 * (bath.k_down_per_fs + k_up + 2.0 * bath.k_leak_per_fs) +
           bath.gamma_pd_per_fs;
}

std::complex<double> coherence_propagator(double omega_ij_cm, double gamma_ij_per_fs,
                                          double tau_fs) {
    if (tau_fs < 0.0) {
        return {0.0, 0.0};
    }
    const std::complex<double> exponent(-gamma_ij_per_fs * tau_fs,
                                        -units::cm_to_rad_fs(omega_ij_cm) * tau_fs);
    return std::exp(exponent);
}

ProcessMatrix true_process_matrix(const ExcitonBasis& basis, const BathParams& bath,
                                  double waiting_time_fs) {
    bath.validate();
    if (waiting_time_fs < 0.0) {
        throw std::invalid_argument("true_process_matrix: waiting time must be >= 0");
    }

    const double T = waiting_time_fs;
    const double k_down = bath.k_down_per_fs;
    const double k_up = redfield_uphill_rate(k_down, basis.omega_alpha_beta_cm(),
                                             bath.temperature_k);
    const double k_total = k_down + k_up;
    const double leak_factor = std::exp(-bath.k_leak_per_fs * T);

    // e^{Kt} of the 2x2 exchange block, written with the stationary projector
    // so that detailed balance is exact at every T.
    double e_aa, e_ab, e_ba, e_bb;  // [row: final pop][col: initial pop]
    if (k_total > 0.0) {
        const double decay = std::exp(-k_total * T);
        const double p_up = k_up / k_total;
        const double p_down = k_down / k_total;
        e_aa = leak_factor * (p_up + decay * p_down);
        e_ab = leak_factor * (p_up - decay * p_up);
        e_ba = leak_factor * (p_down - decay * p_down);
        e_bb = leak_factor * (p_down + decay * p_up);
    } else {
        e_aa = e_bb = leak_factor;
        e_ab = e_ba = 0.0;
    }

    constexpr int GG = 0, AA = 1, BB = 2, AB = 3, BA = 4;
    SectorMatrix t = SectorMatrix::Zero();
    t(GG, GG) = 1.0;
    t(AA, AA) = e_aa;
    t(AA, BB) = e_ab;
    t(BB, AA) = e_ba;
    t(BB, BB) = e_bb;
    t(GG, AA) = 1.0 - e_aa - e_ba;
    t(GG, BB) = 1.0 - e_ab - e_bb;

    const std::complex<double> z = coherence_propagator(
        basis.omega_alpha_beta_cm(), coherence_decay_rate(basis, bath), T);
    t(AB, AB) = z;
    t(BA, BA) = std::conj(z);

    return ProcessMatrix::from_transfer(t, T);
}

} // namespace xqpt
