// signal.hpp — forward model of the sixteen two-color photon-echo signals:
// pathway polarizations, isotropic averaging, effective initial states, and
// per-waiting-time signal assembly.

#pragma once

#include "xqpt/dimer.hpp"
#include "xqpt/dynamics.hpp"
#include "xqpt/process_matrix.hpp"
#include "xqpt/pulse.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace xqpt {

// One of the 16 carrier-frequency words (w1, w2, w3, w4).
struct FrequencyWord {
    std::array<Waveform, 4> pulses{Waveform::plus, Waveform::plus,
                                   Waveform::plus, Waveform::plus};

    int index() const noexcept {
        int idx = 0;
        for (const Waveform w : pulses) idx = 2 * idx + static_cast<int>(w);
        return idx;
    }
    std::string str() const {
        std::string s;
        for (const Waveform w : pulses) s.push_back(waveform_char(w));
        return s;
    }

    static FrequencyWord from_index(int idx);
    static FrequencyWord parse(const std::string& s);
    static const std::array<FrequencyWord, 16>& all();
};

struct ExperimentConfig {
    PulseToolbox toolbox;
    double tau_fs{0.0};     // coherence time
    double t_echo_fs{0.0};  // echo time
    std::vector<double> t_grid_fs;  // waiting times, each >= 3*sigma
    std::array<Eigen::Vector3d, 4> polarizations{
        Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ(),
        Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ()};
    bool apply_overlap_factor{false};  // finite-pulse factor on the detection pair
    bool isotropic_average{true};      // orientational averaging of dipole products
    double normalization_scale{0.0};   // global signal scale; 0 = derive from ideal run

    void validate() const;
};

// The 16 complex signals at one waiting time, indexed by FrequencyWord::index().
struct SignalSet {
    std::array<std::complex<double>, 16> values{};
    double waiting_time_fs{0.0};
};

// Rank-4 isotropic orientational average of (m1.z)(m2.z)(m3.z)(m4.z):
// [(m1.m2)(m3.m4) + (m1.m3)(m2.m4) + (m1.m4)(m2.m3)] / 15.
double isotropic_average_weight(const Eigen::Vector3d& m1, const Eigen::Vector3d& m2,
                                const Eigen::Vector3d& m3, const Eigen::Vector3d& m4);

// Precomputed dipole weights and interval propagators for one dimer.
// polarization() evaluates one pathway term P^{p,q,r,s}(tau, T, t) given the
// process matrix of the waiting time.
class PathwayContext {
public:
    PathwayContext(const ExcitonBasis& basis, double tau_fs, double t_echo_fs,
                   double gamma_opt_per_fs,
                   const std::array<Eigen::Vector3d, 4>& polarizations,
                   bool isotropic);

    std::complex<double> polarization(Exciton p, Exciton q, Exciton r, Exciton s,
                                      const ProcessMatrix& chi) const;

    const ExcitonBasis& basis() const noexcept { return basis_; }

private:
    ExcitonBasis basis_;
    // term weights per (p, q, detected rs); see signal.cpp for the layout
    double weight1_[2][2][4];
    double weight2_[2][2][4];
    std::complex<double> prep_propagator_[2];        // G_gp(tau)
    std::complex<double> echo_propagator_eg_[2];     // G_{alpha g}(t), G_{beta g}(t)
    std::complex<double> echo_propagator_fe_[2];     // G_{f alpha}(t), G_{f beta}(t)
};

std::complex<double> pathway_polarization(Exciton p, Exciton q, Exciton r, Exciton s,
                                          const ProcessMatrix& chi,
                                          const ExcitonBasis& basis,
                                          double tau_fs, double t_echo_fs,
                                          double gamma_opt_per_fs,
                                          const std::array<Eigen::Vector3d, 4>& polarizations,
                                          bool isotropic = true);

// Effective initial state prepared by the first two pulses (sector components
// [gg, aa, bb, ab, ba]); diagnostics companion to the pathway route.
SectorVector effective_initial_state(const PulseToolbox& toolbox,
                                     const ExcitonBasis& basis,
                                     Waveform first, Waveform second,
                                     double tau_fs, double gamma_opt_per_fs,
                                     const Eigen::Vector3d& e1 = Eigen::Vector3d::UnitZ(),
                                     const Eigen::Vector3d& e2 = Eigen::Vector3d::UnitZ());

// Full per-dimer signal machinery: pathway context plus the 16x16 map from
// pathway polarizations to frequency-word signals (pulse coefficients and,
// optionally, pulse-overlap factors folded in).
class SignalKernel {
public:
    SignalKernel(const ExcitonBasis& basis, const ExperimentConfig& experiment,
                 double gamma_opt_per_fs);

    std::array<std::complex<double>, 16> evaluate(const ProcessMatrix& chi) const;

    const PathwayContext& context() const noexcept { return context_; }

    // l2 norm of each word's linear functional over the 16 free chi
    // parameters; the scale unit of that word's signal.
    std::array<double, 16> word_functional_norms() const;

private:
    PathwayContext context_;
    Eigen::Matrix<std::complex<double>, 16, 16> word_weights_;  // [word][pathway]
};

// Per-word equilibration scales: the functional norms with a dynamic-range
// floor of 1% of the strongest word. Words weaker than the floor keep their
// raw scale, so a degenerating geometry shows up as a diverging condition
// number instead of being silently renormalized away.
std::array<double, 16> equilibration_norms(const SignalKernel& kernel);

// Signals of the secular-model dimer at one waiting time (unnormalized).
SignalSet synthesize_signal_set(const ExperimentConfig& experiment,
                                const ExcitonBasis& basis, const BathParams& bath,
                                double waiting_time_fs);

} // namespace xqpt
