#include <benchmark/benchmark.h>

#include "mlalpha/analysis.hpp"
#include "mlalpha/timestepper.hpp"

using namespace mlalpha;

namespace {

struct Fixture {
    Grid grid;
    SpectralTransform transform;
    InitialConditions ic;
    ModelParams model;
    AssimilationParams assim;

    explicit Fixture(int n)
        : grid(Grid::make(1.0, n)),
          transform(grid),
          ic(initial_conditions_deterministic(transform)),
          model(ModelParams::make(0.75, 0.3, 1.0)),
          assim(AssimilationParams::make(0.35, 1.5, 0.043)) {}
};

void BM_ForwardTransform(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    const PhysicalVectorField phys = f.transform.inverse(f.ic.u0);
    for (auto _ : state) {
        SpectralVectorField out = f.transform.forward(phys);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_ForwardTransform)->Arg(16)->Arg(32)->Arg(64);

void BM_BilinearTerm(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    const SpectralVectorField v = helmholtz_filter_apply(f.ic.u0, f.model.alpha);
    for (auto _ : state) {
        SpectralVectorField b = bilinear_B(f.transform, v, f.ic.u0);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_BilinearTerm)->Arg(16)->Arg(32)->Arg(64);

void BM_TwinStep(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    StepConfig cfg;
    cfg.dt = 1e-3;
    TwinStepper stepper(f.transform, f.model, f.assim, cfg);
    TwinState twin(f.ic.u0, f.ic.w0, 0.0);
    for (auto _ : state) {
        stepper.step_twin(twin);
        benchmark::DoNotOptimize(twin.u);
    }
}
BENCHMARK(BM_TwinStep)->Arg(16)->Arg(32);

void BM_ErrorRecord(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    const TwinState twin(f.ic.u0, f.ic.w0, 0.0);
    for (auto _ : state) {
        ErrorRecord r = error_record(twin, f.model, f.assim, std::nullopt);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_ErrorRecord)->Arg(32);

} // namespace

BENCHMARK_MAIN();
