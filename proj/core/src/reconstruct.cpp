#include "xqpt/reconstruct.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace xqpt {

namespace {

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;
using Matrix2c = Eigen::Matrix<std::complex<double>, 2, 2>;
using Vector32 = Eigen::Matrix<double, 32, 1>;
using Vector16 = FreeParams;

// Single-exciton Choi block (rows/cols (a,c) over {(1,1),(1,2),(2,1),(2,2)})
Matrix4c exciton_choi_block(const ProcessMatrix& chi) {
    const ChoiMatrix m = chi.choi();
    Matrix4c e;
    const int idx[4] = {4, 5, 7, 8};  // 3*a + c for a,c in {1,2}
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = m(idx[i], idx[j]);
    return e;
}

// gg-row block [(0,1),(0,2)] x [(0,1),(0,2)]
Matrix2c ground_choi_block(const ProcessMatrix& chi) {
    const ChoiMatrix m = chi.choi();
    Matrix2c g;
    const int idx[2] = {1, 2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = m(idx[i], idx[j]);
    return g;
}

struct ChoiBlocks {
    Matrix4c exciton;
    Matrix2c ground;

    ChoiBlocks() : exciton(Matrix4c::Zero()), ground(Matrix2c::Zero()) {}
    explicit ChoiBlocks(const ProcessMatrix& chi)
        : exciton(exciton_choi_block(chi)), ground(ground_choi_block(chi)) {}

    double distance(const ChoiBlocks& o) const {
        return std::sqrt((exciton - o.exciton).squaredNorm() +
                         (ground - o.ground).squaredNorm());
    }
};

template <typename Matrix>
Matrix psd_projection(const Matrix& m) {
    const Matrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    const auto clipped = solver.eigenvalues().cwiseMax(0.0);
    return solver.eigenvectors() * clipped.asDiagonal() *
           solver.eigenvectors().adjoint();
}

ChoiBlocks psd_projection(const ChoiBlocks& b) {
    ChoiBlocks out;
    out.exciton = psd_projection(b.exciton);
    out.ground = psd_projection(b.ground);
    return out;
}

// Real stacking of the (exciton, ground) blocks: 20 complex entries.
Eigen::Matrix<double, 40, 1> vectorize(const ChoiBlocks& b) {
    Eigen::Matrix<double, 40, 1> v;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            v[k++] = b.exciton(i, j).real();
            v[k++] = b.exciton(i, j).imag();
        }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            v[k++] = b.ground(i, j).real();
            v[k++] = b.ground(i, j).imag();
        }
    return v;
}

// Fixed affine map x -> vec(ChoiBlocks) and its least-squares inverse, used
// to project arbitrary Hermitian blocks back onto the parameterization.
struct ParameterSubspace {
    Eigen::Matrix<double, 40, n_free_parameters> map;
    Eigen::Matrix<double, 40, 1> offset;
    Eigen::JacobiSVD<Eigen::Matrix<double, 40, n_free_parameters>> svd;

    ParameterSubspace() {
        offset = vectorize(ChoiBlocks(
            ProcessMatrix::from_free_parameters(Vector16::Zero(), 0.0)));
        for (int j = 0; j < n_free_parameters; ++j) {
            Vector16 unit = Vector16::Zero();
            unit[j] = 1.0;
            map.col(j) = vectorize(ChoiBlocks(
                             ProcessMatrix::from_free_parameters(unit, 0.0))) -
                         offset;
        }
        svd.compute(map, Eigen::ComputeFullU | Eigen::ComputeFullV);
    }

    Vector16 project(const ChoiBlocks& b) const {
        return svd.solve(vectorize(b) - offset);
    }
};

const ParameterSubspace& parameter_subspace() {
    static const ParameterSubspace subspace;
    return subspace;
}

} // namespace

DesignMatrix assemble_design_matrix(const ExcitonBasis& basis,
                                    const ExperimentConfig& experiment,
                                    double gamma_opt_per_fs,
                                    const SignalScales* scales) {
    experiment.validate();
    SignalKernel kernel(basis, experiment, gamma_opt_per_fs);

    DesignMatrix design;
    design.column_labels = free_parameter_labels();
    for (const FrequencyWord& word : FrequencyWord::all()) {
        design.row_labels[2 * word.index()] = "Re S[" + word.str() + "]";
        design.row_labels[2 * word.index() + 1] = "Im S[" + word.str() + "]";
    }

    for (int j = 0; j < n_free_parameters; ++j) {
        Vector16 unit = Vector16::Zero();
        unit[j] = 1.0;
        const auto column =
            kernel.evaluate(ProcessMatrix::from_free_parameters(unit, 0.0));
        for (int w = 0; w < 16; ++w) {
            design.matrix(2 * w, j) = column[w].real();
            design.matrix(2 * w + 1, j) = column[w].imag();
        }
    }

    if (scales) {
        design.word_norms = scales->word_norm;
        design.global_scale = scales->global_scale;
    } else {
        design.word_norms = equilibration_norms(kernel);
        design.global_scale = 1.0;
    }
    for (int w = 0; w < 16; ++w) {
        design.matrix.row(2 * w) /= design.word_norms[w];
        design.matrix.row(2 * w + 1) /= design.word_norms[w];
    }

    // Identifiability check: directions with singular values below
    // 1e-10 * sigma_max are reported, not silently regularized.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design.matrix,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-10 * sv(0);
    std::vector<std::string> null_directions;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) < cutoff) {
            std::ostringstream direction;
            direction.precision(3);
            bool first = true;
            for (int j = 0; j < n_free_parameters; ++j) {
                const double c = svd.matrixV()(j, i);
                if (std::abs(c) < 0.2) continue;
                direction << (first ? "" : " ") << (c < 0 ? "- " : first ? "" : "+ ")
                          << std::abs(c) << "*" << design.column_labels[j];
                first = false;
            }
            null_directions.push_back(direction.str());
        }
    }
    if (!null_directions.empty()) {
        std::ostringstream msg;
        msg << "design matrix is rank deficient (" << null_directions.size()
            << " unidentifiable parameter direction(s); theta = " << basis.theta_rad
            << " rad, dipole ratio = " << basis.mu_bg.norm() / basis.mu_ag.norm()
            << ")";
        throw rank_deficient_error(msg.str(), std::move(null_directions));
    }
    return design;
}

double condition_number(const DesignMatrix& design) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design.matrix);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smallest;
}

ReconstructionResult reconstruct_chi(const SignalSet& signals,
                                     const DesignMatrix& design, double tol) {
    Vector32 y;
    for (int w = 0; w < 16; ++w) {
        y[2 * w] = signals.values[w].real();
        y[2 * w + 1] = signals.values[w].imag();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design.matrix,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-10 * sv(0)) {
        throw rank_deficient_error("reconstruct_chi: design matrix is singular", {});
    }

    ReconstructionResult result;
    result.condition_number = sv(0) / sv(sv.size() - 1);

    const Vector16 x_ls = svd.solve(y);
    result.residual_unconstrained = (design.matrix * x_ls - y).norm();

    const ProcessMatrix chi_ls =
        ProcessMatrix::from_free_parameters(x_ls, signals.waiting_time_fs);
    result.min_eigenvalue_unconstrained = chi_ls.min_choi_eigenvalue();

    constexpr double psd_tol = 1e-8;
    if (result.min_eigenvalue_unconstrained >= -psd_tol) {
        result.chi_hat = chi_ls;
        result.residual = result.residual_unconstrained;
        result.min_eigenvalue = result.min_eigenvalue_unconstrained;
        result.iterations = 0;
        return result;
    }

    // Dykstra alternating projections between the PSD cone and the
    // parameterization subspace, applied to the pseudoinverse solution.
    const ParameterSubspace& subspace = parameter_subspace();
    ChoiBlocks z(chi_ls);
    ChoiBlocks p, q;
    Vector16 x_hat = x_ls;
    int sweeps = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (; sweeps < 10000; ++sweeps) {
        ChoiBlocks zp;
        zp.exciton = z.exciton + p.exciton;
        zp.ground = z.ground + p.ground;
        const ChoiBlocks w = psd_projection(zp);
        p.exciton = zp.exciton - w.exciton;
        p.ground = zp.ground - w.ground;

        ChoiBlocks wq;
        wq.exciton = w.exciton + q.exciton;
        wq.ground = w.ground + q.ground;
        x_hat = subspace.project(wq);
        const ChoiBlocks z_new(
            ProcessMatrix::from_free_parameters(x_hat, signals.waiting_time_fs));
        q.exciton = wq.exciton - z_new.exciton;
        q.ground = wq.ground - z_new.ground;

        gap = z_new.distance(z) + w.distance(z_new);
        z = z_new;
        if (gap < tol) break;
    }
    if (gap >= tol) {
        std::ostringstream msg;
        msg << "reconstruct_chi: Dykstra projection did not converge in 10000 "
               "sweeps (final gap "
            << gap << ")";
        throw std::runtime_error(msg.str());
    }

    result.chi_hat =
        ProcessMatrix::from_free_parameters(x_hat, signals.waiting_time_fs);
    result.residual = (design.matrix * x_hat - y).norm();
    result.min_eigenvalue = result.chi_hat.min_choi_eigenvalue();
    result.iterations = sweeps + 1;
    return result;
}

double relative_error(const ProcessMatrix& chi_hat, const ProcessMatrix& chi_true) {
    const Matrix4c e_hat = exciton_choi_block(chi_hat);
    const Matrix4c e_true = exciton_choi_block(chi_true);
    const double denom = e_true.norm();
    if (denom <= 0.0) {
        throw std::invalid_argument("relative_error: reference chi has zero norm");
    }
    return (e_hat - e_true).norm() / denom;
}

double leakage_report(const ProcessMatrix& chi_hat) {
    return chi_hat.entry(SectorPair::gg, SectorPair::aa).real() +
           chi_hat.entry(SectorPair::gg, SectorPair::bb).real();
}

} // namespace xqpt
