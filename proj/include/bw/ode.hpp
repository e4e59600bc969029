#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace bw {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-14;
    double h_init = 1e-3;
    double h_max = 0.05;
    double h_min = 1e-14;
    int max_steps = 2'000'000;
};

enum class OdeStatus { reached_end, stopped, step_underflow, too_many_steps };

template <std::size_t N>
struct OdeResult {
    OdeStatus status;
    double t;
    std::array<double, N> y;
    int steps;
};

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(t, y) from t0 to t1
/// (either direction). `observe(t, y)` runs after every accepted step and
/// returns false to stop. Steps whose stages produce non-finite values are
/// rejected and retried with a smaller step.
template <std::size_t N, class Rhs, class Observe>
OdeResult<N> integrate_dopri(Rhs&& rhs, double t0, double t1, std::array<double, N> y, const OdeOptions& opt,
                             Observe&& observe) {
    using State = std::array<double, N>;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = t1 >= t0 ? 1.0 : -1.0;
    double t = t0;
    double h = std::min(opt.h_init, std::abs(t1 - t0));
    int steps = 0;

    auto axpy = [](const State& base, double s, std::initializer_list<std::pair<double, const State*>> terms) {
        State out = base;
        for (std::size_t i = 0; i < N; ++i) {
            double acc = 0.0;
            for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
            out[i] += s * acc;
        }
        return out;
    };
    auto finite = [](const State& s) {
        return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
    };

    State k1 = rhs(t, y);
    while (dir * (t1 - t) > 0.0) {
        if (steps >= opt.max_steps) return {OdeStatus::too_many_steps, t, y, steps};
        h = std::min({h, opt.h_max, std::abs(t1 - t)});
        if (h < opt.h_min * std::max(1.0, std::abs(t))) return {OdeStatus::step_underflow, t, y, steps};
        const double s = dir * h;

        const State k2 = rhs(t + c2 * s, axpy(y, s, {{a21, &k1}}));
        const State k3 = rhs(t + c3 * s, axpy(y, s, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(t + c4 * s, axpy(y, s, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(t + c5 * s, axpy(y, s, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = rhs(t + s, axpy(y, s, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new = axpy(y, s, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(t + s, y_new);

        double err = 0.0;
        bool ok = finite(k2) && finite(k3) && finite(k4) && finite(k5) && finite(k6) && finite(y_new) &&
                  finite(k7);
        if (ok) {
            for (std::size_t i = 0; i < N; ++i) {
                const double ei = s * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                       e7 * k7[i]);
                const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                err = std::max(err, std::abs(ei) / sc);
            }
        }
        if (!ok || err > 1.0) {
            h *= ok ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
            continue;
        }
        // Land exactly on t1 to avoid round-off overshoot.
        t = std::abs(t1 - (t + s)) <= 1e-15 * std::max(1.0, std::abs(t1)) ? t1 : t + s;
        y = y_new;
        k1 = k7;
        ++steps;
        if (!observe(t, y)) return {OdeStatus::stopped, t, y, steps};
        h *= err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
    }
    return {OdeStatus::reached_end, t, y, steps};
}

}  // namespace bw
