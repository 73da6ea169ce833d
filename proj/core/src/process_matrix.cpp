#include "xqpt/process_matrix.hpp"

#include <cmath>

namespace xqpt {

namespace {

constexpr int GG = 0, AA = 1, BB = 2, AB = 3, BA = 4;

// (a,b) -> (b,a) on sector pairs
constexpr int swapped[5] = {GG, AA, BB, BA, AB};

// sector pair -> (first, second) state index with g=0, alpha=1, beta=2
constexpr int pair_first[5] = {0, 1, 2, 1, 2};
constexpr int pair_second[5] = {0, 1, 2, 2, 1};

constexpr bool pair_is_diagonal[5] = {true, true, true, false, false};

} // namespace

const std::array<std::string, n_free_parameters>& free_parameter_labels() {
    static const std::array<std::string, n_free_parameters> labels = {
        "Re chi[aa,aa]", "Re chi[aa,bb]", "Re chi[aa,ab]", "Im chi[aa,ab]",
        "Re chi[bb,aa]", "Re chi[bb,bb]", "Re chi[bb,ab]", "Im chi[bb,ab]",
        "Re chi[ab,aa]", "Im chi[ab,aa]", "Re chi[ab,bb]", "Im chi[ab,bb]",
        "Re chi[ab,ab]", "Im chi[ab,ab]", "Re chi[ab,ba]", "Im chi[ab,ba]"};
    return labels;
}

ProcessMatrix ProcessMatrix::from_transfer(const SectorMatrix& transfer,
                                           double waiting_time_fs) {
    SectorMatrix t = transfer;
    t.col(GG).setZero();
    t(GG, GG) = 1.0;
    return ProcessMatrix(t, waiting_time_fs);
}

ProcessMatrix ProcessMatrix::identity(double waiting_time_fs) {
    return ProcessMatrix(SectorMatrix::Identity(), waiting_time_fs);
}

ProcessMatrix ProcessMatrix::from_free_parameters(const FreeParams& x,
                                                  double waiting_time_fs) {
    using C = std::complex<double>;
    SectorMatrix t = SectorMatrix::Zero();
    t(GG, GG) = 1.0;

    t(AA, AA) = x[0];
    t(AA, BB) = x[1];
    t(AA, AB) = C(x[2], x[3]);
    t(AA, BA) = C(x[2], -x[3]);

    t(BB, AA) = x[4];
    t(BB, BB) = x[5];
    t(BB, AB) = C(x[6], x[7]);
    t(BB, BA) = C(x[6], -x[7]);

    t(AB, AA) = C(x[8], x[9]);
    t(AB, BB) = C(x[10], x[11]);
    t(AB, AB) = C(x[12], x[13]);
    t(AB, BA) = C(x[14], x[15]);

    // ba row from Hermiticity: chi[ba,cd] = conj(chi[ab, swap(cd)])
    t(BA, AA) = std::conj(t(AB, AA));
    t(BA, BB) = std::conj(t(AB, BB));
    t(BA, AB) = std::conj(t(AB, BA));
    t(BA, BA) = std::conj(t(AB, AB));

    // gg row from trace preservation: chi[gg,cd] = delta_cd - chi[aa,cd] - chi[bb,cd]
    for (int col = AA; col <= BA; ++col) {
        const double delta = pair_is_diagonal[col] ? 1.0 : 0.0;
        t(GG, col) = delta - t(AA, col) - t(BB, col);
    }
    return ProcessMatrix(t, waiting_time_fs);
}

FreeParams ProcessMatrix::free_parameters() const {
    FreeParams x;
    x[0] = transfer_(AA, AA).real();
    x[1] = transfer_(AA, BB).real();
    x[2] = transfer_(AA, AB).real();
    x[3] = transfer_(AA, AB).imag();
    x[4] = transfer_(BB, AA).real();
    x[5] = transfer_(BB, BB).real();
    x[6] = transfer_(BB, AB).real();
    x[7] = transfer_(BB, AB).imag();
    x[8] = transfer_(AB, AA).real();
    x[9] = transfer_(AB, AA).imag();
    x[10] = transfer_(AB, BB).real();
    x[11] = transfer_(AB, BB).imag();
    x[12] = transfer_(AB, AB).real();
    x[13] = transfer_(AB, AB).imag();
    x[14] = transfer_(AB, BA).real();
    x[15] = transfer_(AB, BA).imag();
    return x;
}

ChoiMatrix ProcessMatrix::choi() const {
    ChoiMatrix m = ChoiMatrix::Zero();
    for (int row = 0; row < 5; ++row) {
        const int a = pair_first[row];
        const int b = pair_second[row];
        for (int col = 0; col < 5; ++col) {
            const int c = pair_first[col];
            const int d = pair_second[col];
            m(3 * a + c, 3 * b + d) = transfer_(row, col);
        }
    }
    return m;
}

double ProcessMatrix::hermiticity_error() const {
    double err = 0.0;
    for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < 5; ++col) {
            const std::complex<double> mirror =
                std::conj(transfer_(swapped[row], swapped[col]));
            err = std::max(err, std::abs(transfer_(row, col) - mirror));
        }
    }
    return err;
}

double ProcessMatrix::trace_error() const {
    double err = 0.0;
    for (int col = 0; col < 5; ++col) {
        const double delta = pair_is_diagonal[col] ? 1.0 : 0.0;
        const std::complex<double> sum =
            transfer_(GG, col) + transfer_(AA, col) + transfer_(BB, col);
        err = std::max(err, std::abs(sum - delta));
    }
    return err;
}

double ProcessMatrix::ground_fixity_error() const {
    double err = 0.0;
    for (int row = 0; row < 5; ++row) {
        const double expected = (row == GG) ? 1.0 : 0.0;
        err = std::max(err, std::abs(transfer_(row, GG) - expected));
    }
    return err;
}

double ProcessMatrix::min_choi_eigenvalue() const {
    const ChoiMatrix m = choi();
    const ChoiMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ChoiMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool ProcessMatrix::is_cptp(double tol) const {
    return hermiticity_error() <= tol && trace_error() <= tol &&
           ground_fixity_error() <= tol && min_choi_eigenvalue() >= -tol;
}

ProcessMatrix ProcessMatrix::compose_after(const ProcessMatrix& earlier) const {
    return ProcessMatrix(transfer_ * earlier.transfer_,
                         waiting_time_fs_ + earlier.waiting_time_fs());
}

} // namespace xqpt
