// fixtures.hpp — shared reference setup for the test suites: the
// light-harvesting-scale dimer used throughout, its bath, and the two-color
// experiment settings.

#pragma once

#include "xqpt/dimer.hpp"
#include "xqpt/dynamics.hpp"
#include "xqpt/process_matrix.hpp"
#include "xqpt/signal.hpp"

#include <complex>
#include <random>

namespace xqpt::testing {

inline DimerParams reference_dimer() {
    return DimerParams::from_geometry(12881.0, 12719.0, 120.0, 1.0, 2.0, 0.3);
}

inline BathParams reference_bath() {
    BathParams bath;
    bath.k_down_per_fs = 1.0 / 250.0;
    bath.temperature_k = 273.0;
    bath.gamma_pd_per_fs = 1.0 / 180.0;
    bath.k_leak_per_fs = 0.0;
    bath.gamma_opt_per_fs = 1.0 / 150.0;
    return bath;
}

// TD/TB two-color experiment with the (C', C'') override at ratio 20.
inline ExperimentConfig reference_experiment() {
    ExperimentConfig experiment;
    experiment.toolbox.omega_plus_cm = 13480.0;
    experiment.toolbox.omega_minus_cm = 12130.0;
    experiment.toolbox.sigma_fs = 17.0;
    experiment.toolbox.mdc_override = {
        {std::complex<double>(0.0, 20.0), std::complex<double>(0.0, 1.0)}};
    for (double t = 51.0; t <= 1000.0; t += 10.0) {
        experiment.t_grid_fs.push_back(t);
    }
    return experiment;
}

inline ExperimentConfig strict_mdc_experiment() {
    ExperimentConfig experiment = reference_experiment();
    experiment.toolbox.mdc_override = {
        {std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0)}};
    return experiment;
}

inline DimerParams random_dimer(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> site(11000.0, 14000.0);
    std::uniform_real_distribution<double> coupling(10.0, 400.0);
    std::uniform_real_distribution<double> ratio(0.3, 3.0);
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    const double a = site(rng);
    const double b = site(rng);
    return DimerParams::from_geometry(a, b == a ? b + 25.0 : b,
                                      std::copysign(coupling(rng), sign(rng)), 1.0,
                                      ratio(rng), angle(rng));
}

inline BathParams random_bath(std::mt19937_64& rng, bool with_leak = false) {
    std::uniform_real_distribution<double> rate(1.0 / 2000.0, 1.0 / 100.0);
    std::uniform_real_distribution<double> temperature(150.0, 350.0);
    BathParams bath;
    bath.k_down_per_fs = rate(rng);
    bath.temperature_k = temperature(rng);
    bath.gamma_pd_per_fs = rate(rng);
    bath.k_leak_per_fs = with_leak ? 0.25 * rate(rng) : 0.0;
    bath.gamma_opt_per_fs = rate(rng);
    return bath;
}

// Random feasible process matrices (PSD sector Choi, exact trace and
// ground-state fixity): coherent rotations of the exciton plane, secular
// relaxation, and convex mixtures of the two.
inline ProcessMatrix random_feasible_chi(std::mt19937_64& rng, double waiting_time_fs) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 6.28318);

    // unitary on span{alpha, beta}: U = exp(-i H), H random Hermitian 2x2
    Eigen::Matrix2cd h;
    const double a = uniform(rng), b = uniform(rng);
    const std::complex<double> off(uniform(rng) - 0.5, uniform(rng) - 0.5);
    h << a, off, std::conj(off), b;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
    Eigen::Vector2cd phases;
    for (int i = 0; i < 2; ++i) {
        phases[i] = std::exp(std::complex<double>(0.0, -es.eigenvalues()[i] * angle(rng)));
    }
    const Eigen::Matrix2cd u =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

    SectorMatrix unitary = SectorMatrix::Zero();
    unitary(0, 0) = 1.0;
    // sector pairs (ket, bra) for indices 1..4: (a,a), (b,b), (a,b), (b,a)
    constexpr int kets[4] = {0, 1, 0, 1};
    constexpr int bras[4] = {0, 1, 1, 0};
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            unitary(1 + row, 1 + col) =
                u(kets[row], kets[col]) * std::conj(u(bras[row], bras[col]));
        }
    }
    const ProcessMatrix coherent =
        ProcessMatrix::from_transfer(unitary, waiting_time_fs);

    const ExcitonBasis basis = exciton_transform(random_dimer(rng));
    const ProcessMatrix dissipative =
        true_process_matrix(basis, random_bath(rng, uniform(rng) < 0.3),
                            waiting_time_fs);

    const double mix = uniform(rng);
    const SectorMatrix blended =
        mix * coherent.transfer() + (1.0 - mix) * dissipative.transfer();
    return ProcessMatrix::from_transfer(blended, waiting_time_fs);
}

} // namespace xqpt::testing
