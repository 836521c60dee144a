// Serial reference kernels against their OpenMP counterparts. Thread count
// follows LINEA_THREADS (or the OpenMP default).

#include "linea/metrics.hpp"
#include "linea/motion.hpp"
#include "linea/parallel.hpp"
#include "linea/serial.hpp"
#include "linea/synth.hpp"
#include "linea/tps.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace linea;

LineMask sparse_mask(int side)
{
    std::mt19937_64 rng(side);
    std::bernoulli_distribution on(0.01);
    LineMask m(side, side);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            m.set(x, y, on(rng));
    return m;
}

TpsTransform wobble_fit(int side)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pos(0, side - 1);
    std::uniform_real_distribution<double> jitter(-6, 6);
    CorrespondenceSet s;
    s.source_dims = s.target_dims = {side, side};
    for (int i = 0; i < 64; ++i) {
        const Point2 p{pos(rng), pos(rng)};
        s.pairs.push_back({p, {p.x + jitter(rng), p.y + jitter(rng)}});
    }
    return fit_tps(s, 1e-3);
}

void BM_edt_serial(benchmark::State& st)
{
    const auto m = sparse_mask(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(serial::distance_transform(m));
}

void BM_edt_parallel(benchmark::State& st)
{
    const auto m = sparse_mask(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(distance_transform(m));
}

void BM_motion_field_serial(benchmark::State& st)
{
    const int side = static_cast<int>(st.range(0));
    const auto t = wobble_fit(side);
    for (auto _ : st)
        benchmark::DoNotOptimize(serial::motion_field(t, side, side));
}

void BM_motion_field_parallel(benchmark::State& st)
{
    const int side = static_cast<int>(st.range(0));
    const auto t = wobble_fit(side);
    for (auto _ : st)
        benchmark::DoNotOptimize(motion_field(t, side, side));
}

void BM_warp_serial(benchmark::State& st)
{
    const int side = static_cast<int>(st.range(0));
    const auto img = to_image(sparse_mask(side));
    const auto flow = motion_field(wobble_fit(side), side, side);
    for (auto _ : st)
        benchmark::DoNotOptimize(serial::backward_warp(img, flow));
}

void BM_warp_parallel(benchmark::State& st)
{
    const int side = static_cast<int>(st.range(0));
    const auto img = to_image(sparse_mask(side));
    const auto flow = motion_field(wobble_fit(side), side, side);
    for (auto _ : st)
        benchmark::DoNotOptimize(backward_warp(img, flow));
}

void BM_chamfer_serial(benchmark::State& st)
{
    const int side = static_cast<int>(st.range(0));
    const auto a = sparse_mask(side);
    const auto b = shift_mask(a, 3, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(serial::chamfer_sum(a, b));
}

void BM_chamfer_parallel(benchmark::State& st)
{
    const int side = static_cast<int>(st.range(0));
    const auto a = sparse_mask(side);
    const auto b = shift_mask(a, 3, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(chamfer_distance(a, b));
}

} // namespace

BENCHMARK(BM_edt_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_edt_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_motion_field_serial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_motion_field_parallel)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_warp_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_warp_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_chamfer_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chamfer_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv)
{
    linea::apply_thread_limit_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv))
        return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
