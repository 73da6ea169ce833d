#include "xqpt/dimer.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace xqpt {

DimerParams DimerParams::from_geometry(double omega_a_cm, double omega_b_cm,
                                       double coupling_cm, double d_a,
                                       double d_b_over_d_a, double phi_rad) {
    DimerParams p;
    p.omega_a_cm = omega_a_cm;
    p.omega_b_cm = omega_b_cm;
    p.coupling_cm = coupling_cm;
    p.dipole_a = d_a * Eigen::Vector3d::UnitZ();
    p.dipole_b = d_a * d_b_over_d_a *
                 Eigen::Vector3d(std::sin(phi_rad), 0.0, std::cos(phi_rad));
    p.validate();
    return p;
}

void DimerParams::validate() const {
    if (dipole_a.norm() <= 0.0 || dipole_b.norm() <= 0.0) {
        throw std::invalid_argument("DimerParams: site dipoles must be nonzero");
    }
    // omega_a == omega_b or J == 0 are allowed here; they only degrade the
    // tomography and are reported by the geometry diagnostics.
}

ExcitonBasis exciton_transform(const DimerParams& params) {
    params.validate();

    ExcitonBasis b;
    b.omega_avg_cm = 0.5 * (params.omega_a_cm + params.omega_b_cm);
    b.delta_cm = 0.5 * (params.omega_a_cm - params.omega_b_cm);
    b.theta_rad = 0.5 * std::atan2(params.coupling_cm, b.delta_cm);

    // delta * sec(2*theta) == sign-consistent hypot(delta, J); alpha is the
    // upper exciton for every branch of atan2.
    const double half_splitting = std::hypot(b.delta_cm, params.coupling_cm);
    b.omega_alpha_cm = b.omega_avg_cm + half_splitting;
    b.omega_beta_cm = b.omega_avg_cm - half_splitting;
    b.omega_f_cm = params.omega_a_cm + params.omega_b_cm;

    const double c = std::cos(b.theta_rad);
    const double s = std::sin(b.theta_rad);
    b.mu_ag = c * params.dipole_a + s * params.dipole_b;
    b.mu_bg = -s * params.dipole_a + c * params.dipole_b;
    b.mu_fa = s * params.dipole_a + c * params.dipole_b;
    b.mu_fb = c * params.dipole_a - s * params.dipole_b;
    return b;
}

std::vector<DimerParams> sample_disordered_ensemble(const DimerParams& params,
                                                    double sigma_inh_cm,
                                                    std::size_t n,
                                                    std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("sample_disordered_ensemble: empty ensemble (n = 0)");
    }
    if (sigma_inh_cm < 0.0) {
        throw std::invalid_argument("sample_disordered_ensemble: sigma_inh must be >= 0");
    }

    std::vector<DimerParams> members(n, params);
    if (sigma_inh_cm == 0.0) {
        return members;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma_inh_cm);
    for (auto& m : members) {
        m.omega_a_cm = params.omega_a_cm + gauss(rng);
        m.omega_b_cm = params.omega_b_cm + gauss(rng);
    }
    return members;
}

} // namespace xqpt
