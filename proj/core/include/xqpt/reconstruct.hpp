// reconstruct.hpp — inversion of the sixteen signals into chi(T): design
// matrix assembly, conditioning diagnostics, and CPTP-constrained least
// squares (Hermiticity/trace in the parameterization, positivity by Dykstra
// projection onto the PSD cone).

#pragma once

#include "xqpt/ensemble.hpp"
#include "xqpt/process_matrix.hpp"
#include "xqpt/signal.hpp"

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace xqpt {

// Real 32x16 map from the free chi parameters to the stacked re/im parts of
// the 16 word signals, with the per-word normalization folded in so that the
// rows are equilibrated (each word's functional has unit scale).
struct DesignMatrix {
    Eigen::Matrix<double, 32, n_free_parameters> matrix;
    std::array<std::string, 32> row_labels;
    std::array<std::string, n_free_parameters> column_labels;
    std::array<double, 16> word_norms{};  // divisors applied per word
    double global_scale{1.0};
};

class rank_deficient_error : public std::runtime_error {
public:
    rank_deficient_error(std::string message, std::vector<std::string> directions)
        : std::runtime_error(std::move(message)), null_directions_(std::move(directions)) {}

    const std::vector<std::string>& null_directions() const noexcept {
        return null_directions_;
    }

private:
    std::vector<std::string> null_directions_;
};

// Assemble the design matrix for one dimer. When `scales` is provided (from a
// simulated trajectory's metadata) its word divisors are used; otherwise the
// word functional norms with unit global scale. Throws rank_deficient_error
// when singular values below 1e-10 * sigma_max make parameter directions
// unidentifiable.
DesignMatrix assemble_design_matrix(const ExcitonBasis& basis,
                                    const ExperimentConfig& experiment,
                                    double gamma_opt_per_fs,
                                    const SignalScales* scales = nullptr);

// 2-norm condition number sigma_max/sigma_min; +infinity when singular.
double condition_number(const DesignMatrix& design);

struct ReconstructionResult {
    ProcessMatrix chi_hat;
    double residual{0.0};                        // ||A x_hat - s||_2
    double residual_unconstrained{0.0};          // ||A x_ls - s||_2
    double min_eigenvalue{0.0};                  // Choi, after projection
    double min_eigenvalue_unconstrained{0.0};    // Choi, pseudoinverse solution
    double condition_number{0.0};
    int iterations{0};                           // Dykstra sweeps (0 = not needed)
};

// Solve min ||A x - s|| subject to a PSD sector Choi block. The unconstrained
// pseudoinverse solution is returned untouched when it is already PSD;
// otherwise its Choi block is projected onto (parameterization subspace) ∩
// (PSD cone) by Dykstra's alternating projections, stopping when successive
// iterates differ by less than `tol` (default 1e-9) or after 10,000 sweeps.
ReconstructionResult reconstruct_chi(const SignalSet& signals,
                                     const DesignMatrix& design,
                                     double tol = 1e-9);

// Frobenius distance over the single-exciton Choi block, relative to
// ||chi_true|| on the same block.
double relative_error(const ProcessMatrix& chi_hat, const ProcessMatrix& chi_true);

// Recovered amplitude leakage: sum of chi[gg, qq] over the two population
// columns. Zero (to noise) for leak-free dynamics.
double leakage_report(const ProcessMatrix& chi_hat);

} // namespace xqpt
