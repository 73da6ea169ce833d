// process_matrix.hpp — chi(T) restricted to the tomographically accessible
// sector, with complete-positivity / trace / Hermiticity predicates and the
// real free-parameter packing used by the reconstruction.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>

namespace xqpt {

// Tracked density-matrix index pairs, in storage order. States are
// {g, alpha, beta}; "ab" denotes the |alpha><beta| coherence.
enum class SectorPair : int { gg = 0, aa = 1, bb = 2, ab = 3, ba = 4 };

inline constexpr std::array<const char*, 5> sector_pair_names{"gg", "aa", "bb", "ab", "ba"};

inline constexpr int sector_index(SectorPair p) noexcept { return static_cast<int>(p); }

using SectorMatrix = Eigen::Matrix<std::complex<double>, 5, 5>;
using SectorVector = Eigen::Matrix<std::complex<double>, 5, 1>;
using ChoiMatrix = Eigen::Matrix<std::complex<double>, 9, 9>;
using FreeParams = Eigen::Matrix<double, 16, 1>;

// Number of free real parameters after Hermiticity, trace preservation and
// ground-state fixity are imposed: the 12 effective-two-level-system
// parameters plus 4 for amplitude leakage into gg.
inline constexpr int n_free_parameters = 16;

// Human-readable labels of the free parameters (see free_parameters()).
const std::array<std::string, n_free_parameters>& free_parameter_labels();

class ProcessMatrix {
public:
    ProcessMatrix() : ProcessMatrix(identity(0.0)) {}

    // Transfer-matrix form: rows/columns ordered [gg, aa, bb, ab, ba]. The gg
    // column is overwritten with (1,0,0,0,0) to enforce ground-state fixity.
    static ProcessMatrix from_transfer(const SectorMatrix& transfer, double waiting_time_fs);

    // chi_abcd = delta_ac * delta_bd on the sector.
    static ProcessMatrix identity(double waiting_time_fs);

    // Assemble from the 16 free real parameters; Hermiticity, trace
    // preservation and ground-state fixity hold exactly by construction.
    static ProcessMatrix from_free_parameters(const FreeParams& x, double waiting_time_fs);

    double waiting_time_fs() const noexcept { return waiting_time_fs_; }
    const SectorMatrix& transfer() const noexcept { return transfer_; }

    std::complex<double> entry(SectorPair row, SectorPair col) const noexcept {
        return transfer_(sector_index(row), sector_index(col));
    }

    // Free-parameter packing (the documented column list of the design matrix).
    FreeParams free_parameters() const;

    // Choi rearrangement M[(a,c),(b,d)] = chi_abcd on the 3-state space
    // {g, alpha, beta}, row/col index 3*a + c. Entries outside the tracked
    // sector (optical-coherence rows/columns) are zero; the gg column is the
    // fixed pure state.
    ChoiMatrix choi() const;

    // max |chi_abcd - conj(chi_badc)| over the stored sector
    double hermiticity_error() const;
    // max_cd |sum_a chi_aacd - delta_cd|
    double trace_error() const;
    // max |chi_abgg - delta_ag*delta_bg|
    double ground_fixity_error() const;
    // smallest eigenvalue of the Hermitian part of the Choi matrix
    double min_choi_eigenvalue() const;

    bool is_cptp(double tol = 1e-8) const;

    // Composition as linear maps: (*this) after `earlier`.
    ProcessMatrix compose_after(const ProcessMatrix& earlier) const;

private:
    ProcessMatrix(const SectorMatrix& transfer, double waiting_time_fs)
        : transfer_(transfer), waiting_time_fs_(waiting_time_fs) {}

    SectorMatrix transfer_{SectorMatrix::Identity()};
    double waiting_time_fs_{0.0};
};

} // namespace xqpt
