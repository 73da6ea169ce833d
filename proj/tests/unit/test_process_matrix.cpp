#include "xqpt/process_matrix.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace xqpt;

TEST_CASE("identity process") {
    const ProcessMatrix chi = ProcessMatrix::identity(0.0);
    CHECK(chi.entry(SectorPair::aa, SectorPair::aa) == std::complex<double>(1.0, 0.0));
    CHECK(chi.entry(SectorPair::ab, SectorPair::ab) == std::complex<double>(1.0, 0.0));
    CHECK(chi.entry(SectorPair::aa, SectorPair::bb) == std::complex<double>(0.0, 0.0));
    CHECK(chi.hermiticity_error() == 0.0);
    CHECK(chi.trace_error() == 0.0);
    CHECK(chi.ground_fixity_error() == 0.0);
    CHECK(chi.min_choi_eigenvalue() >= -1e-15);
    CHECK(chi.is_cptp());
}

TEST_CASE("free-parameter construction satisfies the constraints exactly") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        FreeParams x;
        for (int i = 0; i < n_free_parameters; ++i) x[i] = uniform(rng);
        const ProcessMatrix chi = ProcessMatrix::from_free_parameters(x, 10.0);
        CHECK(chi.hermiticity_error() == 0.0);
        CHECK(chi.trace_error() < 1e-15);
        CHECK(chi.ground_fixity_error() == 0.0);
        CHECK((chi.free_parameters() - x).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("choi rearrangement places sector entries at (a,c),(b,d)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    FreeParams x;
    for (int i = 0; i < n_free_parameters; ++i) x[i] = uniform(rng);
    const ProcessMatrix chi = ProcessMatrix::from_free_parameters(x, 0.0);
    const ChoiMatrix m = chi.choi();

    // index (a,c) -> 3a + c with g=0, alpha=1, beta=2
    CHECK(m(0, 0) == chi.entry(SectorPair::gg, SectorPair::gg));
    CHECK(m(4, 4) == chi.entry(SectorPair::aa, SectorPair::aa));
    CHECK(m(4, 8) == chi.entry(SectorPair::ab, SectorPair::ab));
    CHECK(m(5, 5) == chi.entry(SectorPair::aa, SectorPair::bb));
    CHECK(m(5, 7) == chi.entry(SectorPair::ab, SectorPair::ba));
    CHECK(m(1, 1) == chi.entry(SectorPair::gg, SectorPair::aa));
    CHECK(m(1, 2) == chi.entry(SectorPair::gg, SectorPair::ab));
    CHECK(m(3, 3) == chi.entry(SectorPair::aa, SectorPair::gg));
    // untracked optical-coherence rows stay zero
    CHECK(m(0, 4) == std::complex<double>(0.0, 0.0));
    CHECK(m(3, 0) == std::complex<double>(0.0, 0.0));

    // Hermitian once the parameterization is Hermitian
    CHECK((m - m.adjoint()).norm() < 1e-14);
}

TEST_CASE("composition is transfer-matrix multiplication") {
    std::mt19937_64 rng(13);
    const ProcessMatrix a = testing::random_feasible_chi(rng, 40.0);
    const ProcessMatrix b = testing::random_feasible_chi(rng, 60.0);
    const ProcessMatrix ab = b.compose_after(a);
    CHECK(ab.waiting_time_fs() == doctest::Approx(100.0));
    const SectorMatrix expected = b.transfer() * a.transfer();
    CHECK((ab.transfer() - expected).norm() < 1e-14);

    const ProcessMatrix id = ProcessMatrix::identity(0.0);
    CHECK((id.compose_after(a).transfer() - a.transfer()).norm() == 0.0);
}

TEST_CASE("random feasible processes satisfy the invariants") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const ProcessMatrix chi = testing::random_feasible_chi(rng, 120.0);
        CHECK(chi.hermiticity_error() < 1e-12);
        CHECK(chi.trace_error() < 1e-12);
        CHECK(chi.ground_fixity_error() == 0.0);
        CHECK(chi.min_choi_eigenvalue() > -1e-10);
        CHECK(chi.is_cptp(1e-8));
    }
}

TEST_CASE("free parameter labels enumerate the documented column list") {
    const auto& labels = free_parameter_labels();
    CHECK(labels.size() == 16);
    CHECK(labels[0] == "Re chi[aa,aa]");
    CHECK(labels[3] == "Im chi[aa,ab]");
    CHECK(labels[15] == "Im chi[ab,ba]");
}
