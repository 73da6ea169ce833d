#include "xqpt/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

namespace xqpt {

namespace {

// Pairwise reduction over members; the result depends only on member order.
std::array<std::complex<double>, 16>
pairwise_mean(std::vector<std::array<std::complex<double>, 16>>& buf) {
    const std::size_t n = buf.size();
    for (std::size_t stride = 1; stride < n; stride *= 2) {
        for (std::size_t i = 0; i + stride < n; i += 2 * stride) {
            for (int w = 0; w < 16; ++w) buf[i][w] += buf[i + stride][w];
        }
    }
    std::array<std::complex<double>, 16> mean = buf[0];
    for (auto& v : mean) v /= static_cast<double>(n);
    return mean;
}

constexpr std::uint64_t noise_stream_salt = 0x9e3779b97f4a7c15ull;

} // namespace

void EnsembleSettings::validate() const {
    if (n == 0) {
        throw std::invalid_argument("EnsembleSettings: empty ensemble (n = 0)");
    }
    if (sigma_inh_cm < 0.0 || sigma_laser < 0.0) {
        throw std::invalid_argument("EnsembleSettings: noise widths must be >= 0");
    }
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("EXCITON_QPT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

SignalScales signal_scales(const ExperimentConfig& experiment,
                           const ExcitonBasis& nominal_basis, const BathParams& bath) {
    experiment.validate();
    SignalKernel kernel(nominal_basis, experiment, bath.gamma_opt_per_fs);
    SignalScales scales;
    const std::array<double, 16> norms = equilibration_norms(kernel);

    if (experiment.normalization_scale > 0.0) {
        scales.global_scale = experiment.normalization_scale;
    } else {
        double peak = 0.0;
        for (const double t : experiment.t_grid_fs) {
            const auto ideal =
                kernel.evaluate(true_process_matrix(nominal_basis, bath, t));
            for (int w = 0; w < 16; ++w) {
                peak = std::max(peak, std::abs(ideal[w]) / norms[w]);
            }
        }
        scales.global_scale = peak > 0.0 ? peak : 1.0;
    }
    for (int w = 0; w < 16; ++w) {
        scales.word_norm[w] = norms[w] * scales.global_scale;
    }
    return scales;
}

SignalTrajectory simulate_trajectory(const ExperimentConfig& experiment,
                                     const DimerParams& nominal,
                                     const BathParams& bath,
                                     const EnsembleSettings& settings,
                                     unsigned threads) {
    experiment.validate();
    settings.validate();
    bath.validate();

    const ExcitonBasis nominal_basis = exciton_transform(nominal);
    const SignalScales scales = signal_scales(experiment, nominal_basis, bath);

    const std::vector<DimerParams> members = sample_disordered_ensemble(
        nominal, settings.sigma_inh_cm, settings.n, settings.seed);

    // Per-member exciton structure and signal kernels are waiting-time
    // independent; build them once.
    std::vector<ExcitonBasis> bases;
    std::vector<SignalKernel> kernels;
    bases.reserve(members.size());
    kernels.reserve(members.size());
    for (const auto& m : members) {
        bases.push_back(exciton_transform(m));
        kernels.emplace_back(bases.back(), experiment, bath.gamma_opt_per_fs);
    }

    const std::size_t n_t = experiment.t_grid_fs.size();
    std::vector<SignalSet> sets(n_t);

    const unsigned n_threads =
        std::min<unsigned>(resolve_thread_count(threads), static_cast<unsigned>(n_t));
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        std::vector<std::array<std::complex<double>, 16>> buf(members.size());
        for (std::size_t ti = next.fetch_add(1); ti < n_t; ti = next.fetch_add(1)) {
            const double t_wait = experiment.t_grid_fs[ti];
            for (std::size_t m = 0; m < members.size(); ++m) {
                buf[m] = kernels[m].evaluate(
                    true_process_matrix(bases[m], bath, t_wait));
            }
            auto mean = pairwise_mean(buf);
            for (int w = 0; w < 16; ++w) mean[w] /= scales.word_norm[w];
            sets[ti].waiting_time_fs = t_wait;
            sets[ti].values = mean;
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (settings.sigma_laser > 0.0) {
        // independent noise realization per waiting time and word, in a fixed
        // sequential order so results do not depend on the thread count
        std::mt19937_64 rng(settings.seed ^ noise_stream_salt);
        std::normal_distribution<double> gauss(0.0, settings.sigma_laser);
        for (auto& set : sets) {
            for (auto& value : set.values) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                value += std::complex<double>(re, im);
            }
        }
    }

    SignalTrajectory trajectory;
    trajectory.sets = std::move(sets);
    trajectory.meta.settings = settings;
    trajectory.meta.scales = scales;
    return trajectory;
}

} // namespace xqpt
