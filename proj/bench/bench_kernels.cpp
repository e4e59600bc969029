// Serial reference vs OpenMP kernels.
// OMP_NUM_THREADS sets the thread count of the parallel variants.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bw/kernels.hpp"
#include "bw/simulator.hpp"

namespace {

using namespace bw;

const ReactionTerm& demo() {
    static const ReactionTerm f = quadratic_demo();
    return f;
}

const ProfileInterpolant& wave() {
    static const ProfileInterpolant p = [] {
        const auto& f = demo();
        const double c = find_speed(f, speed_bracket(slope_bounds(f), f.a())).c_star;
        ProfileOptions opt;
        opt.u_eps = 1e-6;
        return ProfileInterpolant(reconstruct_profile(f, c, opt));
    }();
    return p;
}

std::vector<double> front(std::size_t n, double dx) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = wave().value(-60.0 + dx * static_cast<double>(i) - 3.0);
    return u;
}

template <bool Omp>
void BM_cn_rhs(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto u = front(n, 120.0 / static_cast<double>(n - 1));
    std::vector<double> rhs(n);
    for (auto _ : st) {
        if constexpr (Omp) kernels::cn_rhs_omp(demo(), u, 0.2, 0.01, rhs);
        else kernels::cn_rhs_serial(demo(), u, 0.2, 0.01, rhs);
        benchmark::DoNotOptimize(rhs.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}

template <bool Omp>
void BM_shift_scan(benchmark::State& st) {
    const Grid1D g;
    const auto u = front(g.size(), g.dx);
    std::vector<double> out(static_cast<std::size_t>(st.range(0)));
    const std::size_t i0 = 121, i1 = g.size() - 121;
    for (auto _ : st) {
        if constexpr (Omp) kernels::shift_scan_omp(u, g.x_min, g.dx, wave(), i0, i1, -5.0, g.dx, out);
        else kernels::shift_scan_serial(u, g.x_min, g.dx, wave(), i0, i1, -5.0, g.dx, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Omp>
void BM_secant_max(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) {
        auto r = Omp ? kernels::secant_max_omp(demo(), 0.015, n) : kernels::secant_max_serial(demo(), 0.015, n);
        benchmark::DoNotOptimize(r);
    }
}

void BM_step(benchmark::State& st) {
    Grid1D g;
    g.dx = 120.0 / static_cast<double>(st.range(0));
    Stepper stepper(demo(), g, kernels::Exec::omp);
    SimState s{0.0, front(g.size(), g.dx)};
    for (auto _ : st) {
        stepper.advance(s);
        benchmark::DoNotOptimize(s.u.data());
    }
}

}  // namespace

BENCHMARK(BM_cn_rhs<false>)->Arg(2401)->Arg(19201);
BENCHMARK(BM_cn_rhs<true>)->Arg(2401)->Arg(19201);
BENCHMARK(BM_shift_scan<false>)->Arg(200);
BENCHMARK(BM_shift_scan<true>)->Arg(200);
BENCHMARK(BM_secant_max<false>)->Arg(400)->Arg(800);
BENCHMARK(BM_secant_max<true>)->Arg(400)->Arg(800);
BENCHMARK(BM_step)->Arg(2400)->Arg(9600);

BENCHMARK_MAIN();
