#include <doctest.h>

#include <cmath>
#include <functional>

#include "bw/error.hpp"
#include "bw/reaction.hpp"

using namespace bw;
using doctest::Approx;

namespace {

double simpson(const std::function<double(double)>& g, double lo, double hi, double fl, double fm, double fh,
               double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = g(0.5 * (lo + mid));
    const double rm = g(0.5 * (mid + hi));
    const double left = (mid - lo) / 6.0 * (fl + 4.0 * lm + fm);
    const double right = (hi - mid) / 6.0 * (fm + 4.0 * rm + fh);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return simpson(g, lo, mid, fl, lm, fm, left, tol / 2, depth - 1) +
           simpson(g, mid, hi, fm, rm, fh, right, tol / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi, double tol) {
    const double fl = g(lo), fh = g(hi), fm = g(0.5 * (lo + hi));
    return simpson(g, lo, hi, fl, fm, fh, (hi - lo) / 6.0 * (fl + 4.0 * fm + fh), tol, 50);
}

}  // namespace

TEST_CASE("eval on the demo term") {
    const auto f = quadratic_demo();
    CHECK(f.eval(0.3) == Approx(0.35).epsilon(1e-15));
    CHECK(f.eval(0.0) == 0.0);
    CHECK(std::abs(f.eval(1.0)) < 1e-15);
    CHECK(f.eval(0.1) == Approx(-0.11));
    CHECK_THROWS_AS(f.eval(1.01), Error);
    CHECK_THROWS_AS(f.eval(-1e-9), Error);
}

TEST_CASE("branch rule picks the value at a") {
    const auto f = quadratic_demo();
    CHECK(f.with_branch_rule(BranchRule::left_closed).eval(0.3) == Approx(-0.39));
    CHECK(f.with_branch_rule(BranchRule::average).eval(0.3) == Approx(-0.02));
    CHECK(parse_branch_rule("average") == BranchRule::average);
    CHECK(to_string(BranchRule::right_closed) == "right_closed");
    CHECK_THROWS(parse_branch_rule("middle"));
}

TEST_CASE("eval_extended uses tangents outside [0,1]") {
    const auto f = quadratic_demo();
    CHECK(f.eval_extended(1.1) == Approx(-0.12));
    CHECK(f.eval_extended(0.0) == 0.0);
    CHECK(f.eval_extended(-0.05) == Approx(0.05));
    CHECK(f.eval_extended(0.6) == f.eval(0.6));
}

TEST_CASE("slope bounds") {
    const auto b = slope_bounds(quadratic_demo());
    CHECK(b.alpha_lo == Approx(-1.3).epsilon(1e-10));
    CHECK(b.alpha_hi == Approx(-1.0).epsilon(1e-10));
    CHECK(b.beta_lo == Approx(-1.2).epsilon(1e-10));
    CHECK(b.beta_hi == Approx(-0.5).epsilon(1e-10));

    const auto l = slope_bounds(piecewise_linear(-1.0, 0.3));
    CHECK(l.alpha_lo == Approx(-1.0));
    CHECK(l.alpha_hi == Approx(-1.0));
    CHECK(l.beta_lo == Approx(-1.0));
    CHECK(l.beta_hi == Approx(-1.0));

    const ReactionTerm bad(0.3, {0.0, 1.0}, {0.7, -0.7});
    try {
        slope_bounds(bad);
        FAIL("expected NonNegativeSlope");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonNegativeSlope);
    }
}

TEST_CASE("slope bounds hold on a dense grid") {
    for (const auto& f : {quadratic_demo(), ReactionTerm(0.4, {0.0, -2.0, 3.0, -4.0}, {0.6, 0.2, 0.1, -0.9})}) {
        const auto b = slope_bounds(f);
        const int n = 10000;
        for (int i = 1; i <= n; ++i) {
            const double u = f.a() * i / n;
            const double r = f.f0()(u) / u;
            CHECK(r >= b.alpha_lo - 1e-8);
            CHECK(r <= b.alpha_hi + 1e-8);
        }
        for (int i = 0; i < n; ++i) {
            const double u = f.a() + (1.0 - f.a()) * i / n;
            const double r = f.f1()(u) / (u - 1.0);
            CHECK(r >= b.beta_lo - 1e-8);
            CHECK(r <= b.beta_hi + 1e-8);
        }
    }
}

TEST_CASE("check_hypotheses") {
    const auto rep = check_hypotheses(quadratic_demo());
    CHECK(rep.h1_ok);
    CHECK(rep.h2_ok);
    CHECK(rep.h3_ok);
    CHECK(rep.h3_integral == Approx(0.125666666666667).epsilon(1e-12));
    CHECK(rep.remark2_ok);
    CHECK(rep.violations.empty());

    const auto sym = check_hypotheses(piecewise_linear(-1.0, 0.5));
    CHECK_FALSE(sym.h3_ok);
    CHECK(std::abs(sym.h3_integral) < 1e-15);
    CHECK(sym.h1_ok);
    CHECK(sym.h2_ok);
}

TEST_CASE("slope-bound chain on the demo term") {
    const auto b = check_hypotheses(quadratic_demo()).slope_bounds;
    const double a = 0.3;
    CHECK(std::sqrt(-b.alpha_hi) * a == Approx(0.3));
    CHECK(std::sqrt(-b.alpha_lo) * a == Approx(0.34205).epsilon(1e-4));
    CHECK(std::sqrt(-b.beta_hi) * (1 - a) == Approx(0.49497).epsilon(1e-4));
    CHECK(std::sqrt(-b.beta_lo) * (1 - a) == Approx(0.76681).epsilon(1e-4));
}

TEST_CASE("H2 violation is listed at the offending point") {
    // f0 = -u + 3u^2 turns positive above u = 1/3
    const ReactionTerm f(0.5, {0.0, -1.0, 3.0}, {0.5, -0.5});
    const auto rep = check_hypotheses(f);
    CHECK_FALSE(rep.h2_ok);
    REQUIRE_FALSE(rep.violations.empty());
    bool found = false;
    for (const auto& v : rep.violations) {
        if (v.hypothesis == "H2" && v.u > 1.0 / 3.0 && v.u <= 0.5 && v.value >= 0.0) found = true;
    }
    CHECK(found);
}

TEST_CASE("H1 violation") {
    const ReactionTerm f(0.3, {0.01, -1.0}, {0.7, -0.7});
    const auto rep = check_hypotheses(f);
    CHECK_FALSE(rep.h1_ok);
}

TEST_CASE("envelopes") {
    const auto f = quadratic_demo();
    const auto b = slope_bounds(f);
    const auto lo = envelope(f, b, EnvelopeKind::f_lo);
    CHECK(lo.a() == 0.3);
    CHECK(lo.f0()(0.2) == Approx(-1.3 * 0.2));
    CHECK(lo.f1()(0.5) == Approx(-1.2 * (0.5 - 1.0)));
    const auto gh = envelope(f, b, EnvelopeKind::g_hi);
    CHECK(gh.f0().derivative(0.1) == Approx(-1.0));
    CHECK(gh.f1().derivative(0.6) == Approx(-1.2));

    const auto lin = piecewise_linear(-1.0, 0.3);
    const auto lb = slope_bounds(lin);
    for (auto k : {EnvelopeKind::f_lo, EnvelopeKind::f_hi, EnvelopeKind::g_lo, EnvelopeKind::g_hi}) {
        const auto e = envelope(lin, lb, k);
        for (double u : {0.0, 0.1, 0.29, 0.3, 0.5, 0.9, 1.0}) CHECK(e.eval(u) == Approx(lin.eval(u)).epsilon(1e-12));
    }
}

TEST_CASE("envelope ordering of the branches") {
    const auto f = quadratic_demo();
    const auto b = slope_bounds(f);
    const int n = 10000;
    for (int i = 1; i <= n; ++i) {
        const double u = f.a() * i / n;
        CHECK(b.alpha_lo * u <= f.f0()(u) + 1e-8);
        CHECK(f.f0()(u) <= b.alpha_hi * u + 1e-8);
    }
    for (int i = 0; i < n; ++i) {
        const double u = f.a() + (1.0 - f.a()) * i / n;
        CHECK(b.beta_hi * (u - 1.0) <= f.f1()(u) + 1e-8);
        CHECK(f.f1()(u) <= b.beta_lo * (u - 1.0) + 1e-8);
    }
}

TEST_CASE("potential integral") {
    CHECK(potential_integral(quadratic_demo()) == Approx(0.125666666666667).epsilon(1e-13));
    CHECK(std::abs(potential_integral(piecewise_linear(-1.0, 0.5))) < 1e-16);
    CHECK(potential_integral(piecewise_linear(-1.0, 0.3)) == Approx(0.2).epsilon(1e-14));

    const auto f = quadratic_demo();
    const double q = adaptive_simpson([&](double u) { return f.f0()(u); }, 0.0, 0.3, 1e-14) +
                     adaptive_simpson([&](double u) { return f.f1()(u); }, 0.3, 1.0, 1e-14);
    CHECK(std::abs(q - potential_integral(f)) <= 1e-12);
}

TEST_CASE("polynomial helpers") {
    CHECK(derivative_coefficients({1.0, 2.0, 3.0}) == std::vector<double>{2.0, 6.0});
    const auto r = polynomial_range({0.0, -1.0, -1.0}, 0.0, 0.3);
    CHECK(r.lo == Approx(-0.39));
    CHECK(r.hi == Approx(0.0));
    const BranchPoly p({0.2, 0.8, -1.0}, 0.3, 1.0);
    CHECK(p.integral(0.3, 1.0) == Approx(0.179666666666667).epsilon(1e-13));
    CHECK_THROWS(BranchPoly({}, 0.0, 1.0));
    CHECK_THROWS(BranchPoly({1.0}, 1.0, 0.0));
    CHECK_THROWS(ReactionTerm(1.2, {0.0, -1.0}, {0.0}));
}
