// diagnostics.hpp — degenerate-geometry warnings and condition-number sweeps
// over the structural parameters (theta, dipole ratio, dipole angle).

#pragma once

#include "xqpt/dimer.hpp"
#include "xqpt/signal.hpp"

#include <string>
#include <vector>

namespace xqpt {

struct GeometryDiagnostics {
    double theta_rad{0.0};
    double dipole_ratio{0.0};  // |mu_B| / |mu_A|
    bool degenerate_site_energies{false};
    bool vanishing_coupling{false};
    bool homodimer{false};
    std::vector<std::string> warnings;

    bool well_conditioned() const noexcept { return warnings.empty(); }
};

GeometryDiagnostics diagnose_geometry(const DimerParams& params);

struct SweepPoint {
    double theta_rad{0.0};
    double dipole_ratio{0.0};
    double phi_rad{0.0};
    double kappa{0.0};  // +inf when rank deficient
    bool flagged{false};
    std::string note;
};

struct SweepGrid {
    std::vector<double> theta_rad;
    std::vector<double> dipole_ratio;
    std::vector<double> phi_rad;
    double kappa_threshold{10.0};
};

// Condition number of the design matrix across the structural-parameter grid.
// Each grid point keeps the nominal mean site energy and exciton splitting
// and re-derives (delta, J) from theta. Rank-deficient points get kappa =
// +inf and a note instead of an error.
std::vector<SweepPoint> condition_sweep(const DimerParams& nominal,
                                        const ExperimentConfig& experiment,
                                        double gamma_opt_per_fs,
                                        const SweepGrid& grid);

} // namespace xqpt
