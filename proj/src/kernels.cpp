#include "bw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bw::kernels {

void cn_rhs_serial(const ReactionTerm& f, std::span<const double> u, double r, double dt, std::span<double> rhs) {
    const std::size_t n = u.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        rhs[i] = u[i] + r * (u[i - 1] - 2.0 * u[i] + u[i + 1]) + dt * f.eval_extended(u[i]);
    }
}

void cn_rhs_omp(const ReactionTerm& f, std::span<const double> u, double r, double dt, std::span<double> rhs) {
    const long n = static_cast<long>(u.size());
#pragma omp parallel for schedule(static)
    for (long i = 1; i < n - 1; ++i) {
        rhs[i] = u[i] + r * (u[i - 1] - 2.0 * u[i] + u[i + 1]) + dt * f.eval_extended(u[i]);
    }
}

double sup_distance_serial(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                           double z, std::size_t i0, std::size_t i1) {
    double m = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
        m = std::max(m, std::abs(u[i] - wave.value(x0 + static_cast<double>(i) * dx + z)));
    }
    return m;
}

double sup_distance_omp(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                        double z, std::size_t i0, std::size_t i1) {
    double m = 0.0;
    const long b = static_cast<long>(i0), e = static_cast<long>(i1);
#pragma omp parallel for reduction(max : m) schedule(static)
    for (long i = b; i < e; ++i) {
        m = std::max(m, std::abs(u[i] - wave.value(x0 + static_cast<double>(i) * dx + z)));
    }
    return m;
}

void shift_scan_serial(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                       std::size_t i0, std::size_t i1, double z_lo, double h, std::span<double> out) {
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = sup_distance_serial(u, x0, dx, wave, z_lo + static_cast<double>(k) * h, i0, i1);
    }
}

void shift_scan_omp(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                    std::size_t i0, std::size_t i1, double z_lo, double h, std::span<double> out) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < n; ++k) {
        out[k] = sup_distance_serial(u, x0, dx, wave, z_lo + static_cast<double>(k) * h, i0, i1);
    }
}

namespace {

SecantMax secant_row(const ReactionTerm& f, double rho, int n, int i) {
    const double a = f.a();
    const double x = a * i / n;
    const double fx = f.f0()(x);
    SecantMax best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (int j = 0; j <= n; ++j) {
        const double y = a + (1.0 - a) * j / n;
        if (y - x < rho) continue;
        const double v = (f.f1()(y) - fx) / (y - x);
        if (v > best.value) best = {v, x, y};
    }
    return best;
}

}  // namespace

SecantMax secant_max_serial(const ReactionTerm& f, double rho, int n) {
    SecantMax best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (int i = 0; i <= n; ++i) {
        const auto r = secant_row(f, rho, n, i);
        if (r.value > best.value) best = r;
    }
    return best;
}

SecantMax secant_max_omp(const ReactionTerm& f, double rho, int n) {
    std::vector<SecantMax> rows(static_cast<std::size_t>(n) + 1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) rows[static_cast<std::size_t>(i)] = secant_row(f, rho, n, i);
    // Ordered reduction so ties resolve as in the serial loop.
    SecantMax best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (const auto& r : rows)
        if (r.value > best.value) best = r;
    return best;
}

}  // namespace bw::kernels
