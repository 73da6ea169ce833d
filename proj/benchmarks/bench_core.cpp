#include "xqpt/ensemble.hpp"
#include "xqpt/reconstruct.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

xqpt::DimerParams reference_dimer() {
    return xqpt::DimerParams::from_geometry(12881.0, 12719.0, 120.0, 1.0, 2.0, 0.3);
}

xqpt::BathParams reference_bath() {
    xqpt::BathParams bath;
    bath.k_down_per_fs = 1.0 / 250.0;
    bath.temperature_k = 273.0;
    bath.gamma_pd_per_fs = 1.0 / 180.0;
    bath.gamma_opt_per_fs = 1.0 / 150.0;
    return bath;
}

xqpt::ExperimentConfig reference_experiment() {
    xqpt::ExperimentConfig experiment;
    experiment.toolbox.omega_plus_cm = 13480.0;
    experiment.toolbox.omega_minus_cm = 12130.0;
    experiment.toolbox.sigma_fs = 17.0;
    experiment.toolbox.mdc_override = {{std::complex<double>(0.0, 20.0),
                                        std::complex<double>(0.0, 1.0)}};
    for (double t = 51.0; t <= 1000.0; t += 10.0) experiment.t_grid_fs.push_back(t);
    return experiment;
}

void BM_TrueProcessMatrix(benchmark::State& state) {
    const auto basis = xqpt::exciton_transform(reference_dimer());
    const auto bath = reference_bath();
    double t = 51.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(xqpt::true_process_matrix(basis, bath, t));
        t = t < 1000.0 ? t + 10.0 : 51.0;
    }
}
BENCHMARK(BM_TrueProcessMatrix);

void BM_SignalKernelEvaluate(benchmark::State& state) {
    const auto basis = xqpt::exciton_transform(reference_dimer());
    const auto bath = reference_bath();
    const xqpt::SignalKernel kernel(basis, reference_experiment(),
                                    bath.gamma_opt_per_fs);
    const auto chi = xqpt::true_process_matrix(basis, bath, 201.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel.evaluate(chi));
    }
}
BENCHMARK(BM_SignalKernelEvaluate);

void BM_ReconstructNoisy(benchmark::State& state) {
    const auto basis = xqpt::exciton_transform(reference_dimer());
    const auto bath = reference_bath();
    const auto experiment = reference_experiment();
    const auto design =
        xqpt::assemble_design_matrix(basis, experiment, bath.gamma_opt_per_fs);
    const xqpt::SignalKernel kernel(basis, experiment, bath.gamma_opt_per_fs);

    xqpt::SignalSet set;
    set.waiting_time_fs = 201.0;
    set.values = kernel.evaluate(xqpt::true_process_matrix(basis, bath, 201.0));
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 0.05);
    for (int w = 0; w < 16; ++w) {
        set.values[w] = set.values[w] / design.word_norms[w] +
                        std::complex<double>(gauss(rng), gauss(rng));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(xqpt::reconstruct_chi(set, design));
    }
}
BENCHMARK(BM_ReconstructNoisy);

void BM_EnsembleChunk(benchmark::State& state) {
    const auto experiment = reference_experiment();
    const auto bath = reference_bath();
    xqpt::EnsembleSettings settings;
    settings.n = static_cast<std::size_t>(state.range(0));
    settings.sigma_inh_cm = 40.0;
    settings.sigma_laser = 0.05;
    settings.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(xqpt::simulate_trajectory(
            experiment, reference_dimer(), bath, settings, 1));
    }
}
BENCHMARK(BM_EnsembleChunk)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
