#include "bw/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bw/error.hpp"

namespace bw {

double default_eps(const ReactionTerm& f) { return std::max(1e-6 * std::min(f.a(), 1.0 - f.a()), 1e-8); }

namespace {

using State = std::array<double, 2>;  // (w, z)
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PhasePath shoot_left(const ReactionTerm& f, double c, double eps, const ShootOptions& opt) {
    // s = ln u; dw/ds = u (c - f0/w), dz/ds = u / w.
    const auto& f0 = f.f0();
    const double lam = lambda_plus(c, f0.derivative(0.0));
    auto rhs = [&](double s, const State& y) -> State {
        const double u = std::exp(s);
        if (!(y[0] > 0.0)) return {kNaN, kNaN};
        return {u * (c - f0(u) / y[0]), u / y[0]};
    };
    PhasePath path{Side::left, c, {}};
    path.samples.push_back({eps, lam * eps, std::log(eps) / lam});
    const auto res = integrate_dopri<2>(rhs, std::log(eps), std::log(f.a()), State{lam * eps, std::log(eps) / lam},
                                        opt.ode, [&](double s, const State& y) {
                                            path.samples.push_back({std::exp(s), y[0], y[1]});
                                            return true;
                                        });
    if (res.status != OdeStatus::reached_end) {
        throw Error(ErrorKind::IntegrationFailure, "left phase path did not reach u=a");
    }
    path.samples.back().u = f.a();
    const double shift = path.samples.back().z;
    for (auto& p : path.samples) p.z -= shift;
    return path;
}

PhasePath shoot_right(const ReactionTerm& f, double c, double eps, const ShootOptions& opt) {
    // r = ln(1-u); dw/dr = v (f1/w - c), dz/dr = -v / w with v = 1-u.
    const auto& f1 = f.f1();
    const double lam = lambda_minus(c, f1.derivative(1.0));
    auto rhs = [&](double r, const State& y) -> State {
        const double v = std::exp(r);
        if (!(y[0] > 0.0)) return {kNaN, kNaN};
        return {v * (f1(1.0 - v) / y[0] - c), -v / y[0]};
    };
    PhasePath path{Side::right, c, {}};
    const State seed{-lam * eps, std::log(eps) / lam};
    path.samples.push_back({1.0 - eps, seed[0], seed[1]});
    bool collapsed = false;
    const auto res = integrate_dopri<2>(rhs, std::log(eps), std::log(1.0 - f.a()), seed, opt.ode,
                                        [&](double r, const State& y) {
                                            path.samples.push_back({1.0 - std::exp(r), y[0], y[1]});
                                            if (y[0] < opt.w_floor) collapsed = true;
                                            return !collapsed;
                                        });
    if (collapsed || (res.status == OdeStatus::step_underflow && res.y[0] < 1e-4)) {
        std::ostringstream os;
        os << "right phase path reached w=0 at u=" << 1.0 - std::exp(res.t) << " for c=" << c;
        throw Error(ErrorKind::PathCollapse, os.str());
    }
    if (res.status != OdeStatus::reached_end) {
        throw Error(ErrorKind::IntegrationFailure, "right phase path did not reach u=a");
    }
    path.samples.back().u = f.a();
    std::reverse(path.samples.begin(), path.samples.end());
    const double shift = path.samples.front().z;
    for (auto& p : path.samples) p.z -= shift;
    return path;
}

}  // namespace

PhasePath shoot_half(const ReactionTerm& f, Side side, double c, const ShootOptions& opt) {
    const double eps = opt.eps > 0.0 ? opt.eps : default_eps(f);
    if (!(c >= 0.0)) throw Error(ErrorKind::Domain, "shoot_half needs c >= 0");
    if (eps > std::min(f.a(), 1.0 - f.a()) / 100.0) {
        throw Error(ErrorKind::Domain, "shoot_half needs eps <= min(a, 1-a)/100");
    }
    return side == Side::left ? shoot_left(f, c, eps, opt) : shoot_right(f, c, eps, opt);
}

double speed_mismatch(const ReactionTerm& f, double c, const ShootOptions& opt) {
    const double w_minus = shoot_half(f, Side::left, c, opt).w_at_a();
    double w_plus = 0.0;
    try {
        w_plus = shoot_half(f, Side::right, c, opt).w_at_a();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PathCollapse) throw;
    }
    return w_minus - w_plus;
}

SpeedResult find_speed(const ReactionTerm& f, const SpeedBracket& bracket, double tol_c, const ShootOptions& opt) {
    SpeedResult r;
    auto S = [&](double c) { return speed_mismatch(f, c, opt); };

    double lo = 0.0, hi = 1.0;
    double s_lo = 0.0, s_hi = 0.0;
    bool have = false;
    if (bracket.ordering_ok) {
        // padded so that a collapsed bracket (linear branches) still straddles the root
        const double pad = 1e-6 * std::max(1.0, bracket.c_hat);
        lo = std::max(0.0, bracket.c_check - pad);
        hi = bracket.c_hat + pad;
        s_lo = S(lo);
        s_hi = S(hi);
        have = s_lo <= 0.0 && s_hi >= 0.0;
        if (!have) r.warnings.push_back("mismatch has no sign change on the padded [c_check, c_hat]; expanding from c=0");
    }
    if (!have) {
        lo = 0.0;
        s_lo = S(0.0);
        if (s_lo >= 0.0) {
            std::ostringstream os;
            os << "speed mismatch S(0)=" << s_lo << " >= 0, no positive wave speed";
            throw Error(ErrorKind::NoPositiveRoot, os.str());
        }
        hi = 1.0;
        while ((s_hi = S(hi)) < 0.0) {
            lo = hi;
            s_lo = s_hi;
            hi *= 2.0;
            if (hi > 1024.0) throw Error(ErrorKind::BracketFailure, "no sign change of S(c) up to c=2^10");
        }
    }
    r.bracket_lo = lo;
    r.bracket_hi = hi;

    // Spot check of monotonicity; a failure points at loose integration tolerances.
    double prev = s_lo;
    for (int k = 1; k <= 5; ++k) {
        const double v = S(lo + (hi - lo) * k / 6.0);
        if (!(v > prev)) r.monotone_ok = false;
        prev = v;
    }
    if (!(s_hi > prev)) r.monotone_ok = false;
    if (!r.monotone_ok) r.warnings.push_back("S(c) not increasing at spot checks; tighten integration tolerance");

    double mid = 0.5 * (lo + hi);
    double s_mid = S(mid);
    for (r.iterations = 1; r.iterations < 200; ++r.iterations) {
        if (std::abs(s_mid) <= tol_c || hi - lo <= 1e-15 * std::max(1.0, hi)) break;
        if (s_mid < 0.0) lo = mid; else hi = mid;
        mid = 0.5 * (lo + hi);
        s_mid = S(mid);
    }
    r.c_star = mid;
    r.residual = s_mid;
    if (r.c_star <= 1e-8) throw Error(ErrorKind::NoPositiveRoot, "wave speed is not positive");
    return r;
}

}  // namespace bw
