#include "xqpt/signal.hpp"

#include <algorithm>
#include <stdexcept>

namespace xqpt {

namespace {

constexpr int GG = 0, AA = 1, BB = 2, AB = 3, BA = 4;

constexpr Exciton excitons[2] = {Exciton::alpha, Exciton::beta};

inline Exciton other(Exciton e) noexcept {
    return e == Exciton::alpha ? Exciton::beta : Exciton::alpha;
}

inline int ei(Exciton e) noexcept { return static_cast<int>(e); }

// detected pair (r,s) -> slot 0..3: [aa, bb, ab, ba]
inline int rs_slot(Exciton r, Exciton s) noexcept {
    if (r == s) return r == Exciton::alpha ? 0 : 1;
    return r == Exciton::alpha ? 2 : 3;
}

// prepared |q><p| -> sector column (q, p)
inline int prepared_column(Exciton p, Exciton q) noexcept {
    if (p == q) return p == Exciton::alpha ? AA : BB;
    return q == Exciton::alpha ? AB : BA;
}

} // namespace

FrequencyWord FrequencyWord::from_index(int idx) {
    if (idx < 0 || idx > 15) {
        throw std::invalid_argument("FrequencyWord: index out of range");
    }
    FrequencyWord w;
    for (int k = 3; k >= 0; --k) {
        w.pulses[k] = static_cast<Waveform>(idx & 1);
        idx >>= 1;
    }
    return w;
}

FrequencyWord FrequencyWord::parse(const std::string& s) {
    if (s.size() != 4) {
        throw std::invalid_argument("FrequencyWord: expected 4 characters of '+'/'-'");
    }
    FrequencyWord w;
    for (int k = 0; k < 4; ++k) {
        if (s[k] == '+') w.pulses[k] = Waveform::plus;
        else if (s[k] == '-') w.pulses[k] = Waveform::minus;
        else throw std::invalid_argument("FrequencyWord: invalid character in word");
    }
    return w;
}

const std::array<FrequencyWord, 16>& FrequencyWord::all() {
    static const std::array<FrequencyWord, 16> words = [] {
        std::array<FrequencyWord, 16> out;
        for (int i = 0; i < 16; ++i) out[i] = from_index(i);
        return out;
    }();
    return words;
}

void ExperimentConfig::validate() const {
    toolbox.validate();
    if (tau_fs < 0.0 || t_echo_fs < 0.0) {
        throw std::invalid_argument("ExperimentConfig: tau and t must be >= 0");
    }
    if (t_grid_fs.empty()) {
        throw std::invalid_argument("ExperimentConfig: empty waiting-time grid");
    }
    for (const double t : t_grid_fs) {
        if (t < 3.0 * toolbox.sigma_fs) {
            throw std::invalid_argument(
                "ExperimentConfig: waiting times below 3*sigma are not admissible; "
                "the initial states are not yet effectively prepared");
        }
    }
    for (const auto& e : polarizations) {
        if (std::abs(e.norm() - 1.0) > 1e-12) {
            throw std::invalid_argument("ExperimentConfig: polarizations must be unit vectors");
        }
    }
    if (normalization_scale < 0.0) {
        throw std::invalid_argument("ExperimentConfig: normalization scale must be >= 0");
    }
}

double isotropic_average_weight(const Eigen::Vector3d& m1, const Eigen::Vector3d& m2,
                                const Eigen::Vector3d& m3, const Eigen::Vector3d& m4) {
    return (m1.dot(m2) * m3.dot(m4) + m1.dot(m3) * m2.dot(m4) +
            m1.dot(m4) * m2.dot(m3)) / 15.0;
}

PathwayContext::PathwayContext(const ExcitonBasis& basis, double tau_fs,
                               double t_echo_fs, double gamma_opt_per_fs,
                               const std::array<Eigen::Vector3d, 4>& pols,
                               bool isotropic)
    : basis_(basis) {
    const auto weight = [&](const Eigen::Vector3d& m1, const Eigen::Vector3d& m2,
                            const Eigen::Vector3d& m3, const Eigen::Vector3d& m4) {
        if (isotropic) return isotropic_average_weight(m1, m2, m3, m4);
        return m1.dot(pols[0]) * m2.dot(pols[1]) * m3.dot(pols[2]) * m4.dot(pols[3]);
    };

    for (const Exciton p : excitons) {
        for (const Exciton q : excitons) {
            const Eigen::Vector3d& mp = basis.mu_eg(p);
            const Eigen::Vector3d& mq = basis.mu_eg(q);
            for (const Exciton r : excitons) {
                for (const Exciton s : excitons) {
                    const int slot = rs_slot(r, s);
                    if (r == s) {
                        // stimulated-emission/bleach term and the f<-other ESA term
                        weight1_[ei(p)][ei(q)][slot] =
                            weight(mp, mq, basis.mu_eg(r), basis.mu_eg(r));
                        weight2_[ei(p)][ei(q)][slot] =
                            weight(mp, mq, basis.mu_fe(other(r)), basis.mu_fe(other(r)));
                    } else {
                        // coherence detection: biexciton route minus ground route
                        weight1_[ei(p)][ei(q)][slot] =
                            weight(mp, mq, basis.mu_fe(other(r)), basis.mu_fe(other(s)));
                        weight2_[ei(p)][ei(q)][slot] =
                            weight(mp, mq, basis.mu_eg(r), basis.mu_eg(s));
                    }
                }
            }
        }
    }

    for (const Exciton p : excitons) {
        // |g><p| rotates at omega_gp = -omega_pg during the coherence time
        prep_propagator_[ei(p)] = coherence_propagator(-basis.omega_eg_cm(p),
                                                       gamma_opt_per_fs, tau_fs);
        echo_propagator_eg_[ei(p)] = coherence_propagator(basis.omega_eg_cm(p),
                                                          gamma_opt_per_fs, t_echo_fs);
        echo_propagator_fe_[ei(p)] = coherence_propagator(basis.omega_fe_cm(p),
                                                          gamma_opt_per_fs, t_echo_fs);
    }
}

std::complex<double> PathwayContext::polarization(Exciton p, Exciton q, Exciton r,
                                                  Exciton s,
                                                  const ProcessMatrix& chi) const {
    const int col = prepared_column(p, q);
    const int slot = rs_slot(r, s);
    const double w1 = weight1_[ei(p)][ei(q)][slot];
    const double w2 = weight2_[ei(p)][ei(q)][slot];
    const std::complex<double> prep = prep_propagator_[ei(p)];

    if (r == s) {
        const double delta_pq = (p == q) ? 1.0 : 0.0;
        const int detected = (r == Exciton::alpha) ? AA : BB;
        const int esa = (r == Exciton::alpha) ? BB : AA;
        const std::complex<double> bleach_se =
            chi.transfer()(GG, col) - delta_pq - chi.transfer()(detected, col);
        return -prep * (w1 * echo_propagator_eg_[ei(r)] * bleach_se +
                        w2 * echo_propagator_fe_[ei(other(r))] *
                            chi.transfer()(esa, col));
    }
    // (r,s) = (alpha,beta) detects chi[ba, col]; (beta,alpha) detects chi[ab, col]
    const int detected = (r == Exciton::alpha) ? BA : AB;
    const std::complex<double> bracket =
        w1 * echo_propagator_fe_[ei(other(s))] - w2 * echo_propagator_eg_[ei(s)];
    return -prep * bracket * chi.transfer()(detected, col);
}

std::complex<double> pathway_polarization(Exciton p, Exciton q, Exciton r, Exciton s,
                                          const ProcessMatrix& chi,
                                          const ExcitonBasis& basis,
                                          double tau_fs, double t_echo_fs,
                                          double gamma_opt_per_fs,
                                          const std::array<Eigen::Vector3d, 4>& polarizations,
                                          bool isotropic) {
    PathwayContext ctx(basis, tau_fs, t_echo_fs, gamma_opt_per_fs, polarizations,
                       isotropic);
    return ctx.polarization(p, q, r, s, chi);
}

SectorVector effective_initial_state(const PulseToolbox& toolbox,
                                     const ExcitonBasis& basis, Waveform first,
                                     Waveform second, double tau_fs,
                                     double gamma_opt_per_fs,
                                     const Eigen::Vector3d& e1,
                                     const Eigen::Vector3d& e2) {
    const CoefficientTable table = toolbox_coefficients(toolbox, basis);
    SectorVector state = SectorVector::Zero();
    for (const Exciton p : excitons) {
        for (const Exciton q : excitons) {
            const std::complex<double> amplitude =
                -table.at(first, p) * table.at(second, q) * basis.mu_eg(p).dot(e1) *
                basis.mu_eg(q).dot(e2) *
                coherence_propagator(-basis.omega_eg_cm(p), gamma_opt_per_fs, tau_fs);
            state[prepared_column(p, q)] += amplitude;
            if (p == q) state[GG] -= amplitude;
        }
    }
    return state;
}

SignalKernel::SignalKernel(const ExcitonBasis& basis, const ExperimentConfig& experiment,
                           double gamma_opt_per_fs)
    : context_(basis, experiment.tau_fs, experiment.t_echo_fs, gamma_opt_per_fs,
               experiment.polarizations, experiment.isotropic_average) {
    const CoefficientTable table = toolbox_coefficients(experiment.toolbox, basis);
    for (const FrequencyWord& word : FrequencyWord::all()) {
        for (const Exciton p : excitons) {
            for (const Exciton q : excitons) {
                for (const Exciton r : excitons) {
                    for (const Exciton s : excitons) {
                        const int pathway =
                            8 * ei(p) + 4 * ei(q) + 2 * ei(r) + ei(s);
                        std::complex<double> c = table.at(word.pulses[0], p) *
                                                 table.at(word.pulses[1], q) *
                                                 table.at(word.pulses[2], r) *
                                                 table.at(word.pulses[3], s);
                        if (experiment.apply_overlap_factor) {
                            c *= overlap_factor(
                                experiment.t_echo_fs, experiment.toolbox.sigma_fs,
                                experiment.toolbox.carrier_cm(word.pulses[2]),
                                experiment.toolbox.carrier_cm(word.pulses[3]),
                                basis.omega_eg_cm(r), basis.omega_eg_cm(s));
                        }
                        word_weights_(word.index(), pathway) = c;
                    }
                }
            }
        }
    }
}

std::array<std::complex<double>, 16> SignalKernel::evaluate(const ProcessMatrix& chi) const {
    Eigen::Matrix<std::complex<double>, 16, 1> pathways;
    for (const Exciton p : excitons) {
        for (const Exciton q : excitons) {
            for (const Exciton r : excitons) {
                for (const Exciton s : excitons) {
                    pathways[8 * ei(p) + 4 * ei(q) + 2 * ei(r) + ei(s)] =
                        context_.polarization(p, q, r, s, chi);
                }
            }
        }
    }
    const Eigen::Matrix<std::complex<double>, 16, 1> signals = word_weights_ * pathways;
    std::array<std::complex<double>, 16> out;
    for (int i = 0; i < 16; ++i) out[i] = signals[i];
    return out;
}

std::array<double, 16> SignalKernel::word_functional_norms() const {
    std::array<double, 16> norms{};
    for (int j = 0; j < n_free_parameters; ++j) {
        FreeParams unit = FreeParams::Zero();
        unit[j] = 1.0;
        const auto column = evaluate(ProcessMatrix::from_free_parameters(unit, 0.0));
        for (int w = 0; w < 16; ++w) norms[w] += std::norm(column[w]);
    }
    for (double& n : norms) n = std::sqrt(n);
    return norms;
}

std::array<double, 16> equilibration_norms(const SignalKernel& kernel) {
    std::array<double, 16> norms = kernel.word_functional_norms();
    const double floor = 0.01 * *std::max_element(norms.begin(), norms.end());
    if (floor <= 0.0) {
        throw std::invalid_argument("equilibration_norms: all word functionals vanish");
    }
    for (double& n : norms) n = std::max(n, floor);
    return norms;
}

SignalSet synthesize_signal_set(const ExperimentConfig& experiment,
                                const ExcitonBasis& basis, const BathParams& bath,
                                double waiting_time_fs) {
    experiment.validate();
    if (waiting_time_fs < 3.0 * experiment.toolbox.sigma_fs) {
        throw std::invalid_argument(
            "synthesize_signal_set: waiting time below 3*sigma rejected");
    }
    SignalKernel kernel(basis, experiment, bath.gamma_opt_per_fs);
    SignalSet set;
    set.waiting_time_fs = waiting_time_fs;
    set.values = kernel.evaluate(true_process_matrix(basis, bath, waiting_time_fs));
    return set;
}

} // namespace xqpt
