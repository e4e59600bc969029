#include "bw/linear_theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bw/error.hpp"

namespace bw {

EigenRates eigen_rates(double c, double alpha, double beta) {
    if (!(alpha < 0.0) || !(beta < 0.0)) throw Error(ErrorKind::Domain, "eigen_rates needs alpha < 0 and beta < 0");
    // Written to avoid cancellation: (c - sqrt(c^2 - 4 beta))/2 = 2 beta / (c + sqrt(...)).
    const double d0 = std::sqrt(c * c - 4.0 * alpha);
    const double d1 = std::sqrt(c * c - 4.0 * beta);
    const double l0 = c >= 0.0 ? 0.5 * (c + d0) : -2.0 * alpha / (d0 - c);
    const double l1 = c >= 0.0 ? 2.0 * beta / (c + d1) : 0.5 * (c - d1);
    return {l0, l1, c, alpha, beta};
}

double matching_residual(double c, double alpha, double beta, double a) {
    return (1.0 - a) * std::sqrt(c * c - 4.0 * beta) - a * std::sqrt(c * c - 4.0 * alpha) - c;
}

double match_speed(double alpha, double beta, double a, double tol) {
    if (!(alpha < 0.0) || !(beta < 0.0)) throw Error(ErrorKind::Domain, "match_speed needs alpha, beta < 0");
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::Domain, "match_speed needs a in (0,1)");
    auto phi = [&](double c) { return matching_residual(c, alpha, beta, a); };
    const double phi0 = phi(0.0);
    if (phi0 <= 0.0) {
        if (phi0 == 0.0) return 0.0;
        std::ostringstream os;
        os << "sqrt(-beta)(1-a) <= sqrt(-alpha) a (alpha=" << alpha << ", beta=" << beta << ", a=" << a << ")";
        throw Error(ErrorKind::NoPositiveRoot, os.str());
    }
    double lo = 0.0, hi = 1.0;
    while (phi(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1024.0) throw Error(ErrorKind::NoPositiveRoot, "no sign change of matching residual below c=2^10");
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = phi(mid);
        if (std::abs(v) <= tol && hi - lo <= 1e-14 * std::max(1.0, hi)) return mid;
        if (v > 0.0) lo = mid; else hi = mid;
        if (hi - lo <= 4e-16 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

EnvelopeWave make_envelope_wave(double c, double alpha, double beta, double a) {
    const auto r = eigen_rates(c, alpha, beta);
    return {c, r.lambda0_plus, r.lambda1_minus, a};
}

double envelope_profile(const EnvelopeWave& w, double z) {
    if (z <= 0.0) return w.a * std::exp(w.rate_left * z);
    return 1.0 + (w.a - 1.0) * std::exp(w.rate_right * z);
}

double derivative_gap(const EnvelopeWave& w) { return w.rate_left * w.a - w.rate_right * (w.a - 1.0); }

namespace {

SpeedBracket bracket_impl(const SlopeBounds& b, double a, double tol, bool strict) {
    SpeedBracket s;
    auto solve = [&](double alpha, double beta, const char* name) {
        try {
            return match_speed(alpha, beta, a);
        } catch (const Error& e) {
            if (strict || e.kind() != ErrorKind::NoPositiveRoot) {
                throw Error(e.kind(), std::string(name) + ": " + e.what());
            }
            if (s.failed.empty()) s.failed = name;
            return 0.0;
        }
    };
    s.c_check = solve(b.alpha_lo, b.beta_hi, "c_check");
    s.c_under = solve(b.alpha_lo, b.beta_lo, "c_under");
    s.c_over = solve(b.alpha_hi, b.beta_hi, "c_over");
    s.c_hat = solve(b.alpha_hi, b.beta_lo, "c_hat");
    const double lo = std::min(s.c_under, s.c_over);
    const double hi = std::max(s.c_under, s.c_over);
    s.ordering_ok = s.failed.empty() && s.c_check > tol && s.c_check <= lo + tol && hi <= s.c_hat + tol;
    return s;
}

}  // namespace

SpeedBracket speed_bracket(const SlopeBounds& b, double a, double tol) { return bracket_impl(b, a, tol, false); }

SpeedBracket speed_bracket_strict(const SlopeBounds& b, double a, double tol) {
    return bracket_impl(b, a, tol, true);
}

}  // namespace bw
