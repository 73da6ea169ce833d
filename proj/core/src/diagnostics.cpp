#include "xqpt/diagnostics.hpp"

#include "xqpt/reconstruct.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace xqpt {

GeometryDiagnostics diagnose_geometry(const DimerParams& params) {
    params.validate();
    GeometryDiagnostics d;
    const ExcitonBasis basis = exciton_transform(params);
    d.theta_rad = basis.theta_rad;
    d.dipole_ratio = params.dipole_b.norm() / params.dipole_a.norm();

    const double scale = std::max(
        {std::abs(params.omega_a_cm), std::abs(params.omega_b_cm), 1.0});
    if (std::abs(params.omega_a_cm - params.omega_b_cm) < 1e-9 * scale) {
        d.degenerate_site_energies = true;
        d.warnings.push_back("site energies are degenerate (delta = 0)");
    }
    if (std::abs(params.coupling_cm) < 1e-9 * scale) {
        d.vanishing_coupling = true;
        d.warnings.push_back(
            "coupling J vanishes (theta near 0); the inversion is ill-conditioned");
    }
    if (d.degenerate_site_energies && std::abs(d.dipole_ratio - 1.0) < 1e-6) {
        d.homodimer = true;
        d.warnings.push_back(
            "homodimer geometry (theta = pi/4, equal dipoles); the design matrix "
            "is rank deficient");
    }
    return d;
}

std::vector<SweepPoint> condition_sweep(const DimerParams& nominal,
                                        const ExperimentConfig& experiment,
                                        double gamma_opt_per_fs,
                                        const SweepGrid& grid) {
    if (grid.theta_rad.empty() || grid.dipole_ratio.empty() || grid.phi_rad.empty()) {
        throw std::invalid_argument("condition_sweep: empty parameter grid");
    }

    const ExcitonBasis nominal_basis = exciton_transform(nominal);
    const double omega_avg = nominal_basis.omega_avg_cm;
    const double half_gap = 0.5 * nominal_basis.omega_alpha_beta_cm();
    const double d_a = nominal.dipole_a.norm();

    std::vector<SweepPoint> points;
    points.reserve(grid.theta_rad.size() * grid.dipole_ratio.size() *
                   grid.phi_rad.size());
    for (const double theta : grid.theta_rad) {
        // fixed exciton gap: delta = gap/2 cos(2 theta), J = gap/2 sin(2 theta)
        const double delta = half_gap * std::cos(2.0 * theta);
        const double coupling = half_gap * std::sin(2.0 * theta);
        for (const double ratio : grid.dipole_ratio) {
            for (const double phi : grid.phi_rad) {
                SweepPoint point;
                point.theta_rad = theta;
                point.dipole_ratio = ratio;
                point.phi_rad = phi;
                try {
                    const DimerParams params = DimerParams::from_geometry(
                        omega_avg + delta, omega_avg - delta, coupling, d_a, ratio,
                        phi);
                    const DesignMatrix design = assemble_design_matrix(
                        exciton_transform(params), experiment, gamma_opt_per_fs);
                    point.kappa = condition_number(design);
                    if (point.kappa > grid.kappa_threshold) {
                        point.flagged = true;
                        point.note = "condition number above threshold";
                    }
                } catch (const rank_deficient_error& err) {
                    point.kappa = std::numeric_limits<double>::infinity();
                    point.flagged = true;
                    point.note = err.what();
                }
                points.push_back(std::move(point));
            }
        }
    }
    return points;
}

} // namespace xqpt
