#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bw/error.hpp"
#include "bw/profile.hpp"
#include "bw/shooting.hpp"
#include "test_support.hpp"

using namespace bw;
using doctest::Approx;

namespace {

constexpr double kDemoCStar = 0.5447332852;

SpeedBracket demo_bracket() { return speed_bracket(slope_bounds(quadratic_demo()), 0.3); }

double sup_path_error(const PhasePath& p, double rate, double a) {
    double err = 0.0;
    for (const auto& s : p.samples) {
        const double exact = p.side == Side::left ? rate * s.u : rate * (s.u - 1.0);
        err = std::max(err, std::abs(s.w - exact));
    }
    (void)a;
    return err;
}

}  // namespace

TEST_CASE("default eps") {
    CHECK(default_eps(quadratic_demo()) == Approx(3e-7));
    CHECK(default_eps(piecewise_linear(-1.0, 0.001)) == Approx(1e-8));
}

TEST_CASE("linear phase paths") {
    const auto f = piecewise_linear(-1.0, 0.3);
    const auto l = shoot_half(f, Side::left, 1.0);
    CHECK(l.w_at_a() == Approx(0.4854101966249685).epsilon(1e-10));
    CHECK(l.samples.back().u == Approx(0.3).epsilon(1e-14));
    const auto r = shoot_half(f, Side::right, 1.0);
    CHECK(r.w_at_a() == Approx(0.4326237921249264).epsilon(1e-10));
    CHECK(r.samples.front().u == Approx(0.3).epsilon(1e-14));
}

TEST_CASE("phase paths match the exact linear paths") {
    for (double a : {0.2, 0.3, 0.45}) {
        const auto f = piecewise_linear(-1.0, a);
        for (double c : {0.0, 0.5, 1.0, 2.0}) {
            const auto r = eigen_rates(c, -1.0, -1.0);
            CHECK(sup_path_error(shoot_half(f, Side::left, c), r.lambda0_plus, a) <= 1e-8);
            CHECK(sup_path_error(shoot_half(f, Side::right, c), r.lambda1_minus, a) <= 1e-8);
        }
    }
}

TEST_CASE("left path increases at c = 0") {
    const auto p = shoot_half(quadratic_demo(), Side::left, 0.0);
    for (std::size_t i = 1; i < p.samples.size(); ++i) {
        CHECK(p.samples[i].w > p.samples[i - 1].w);
        CHECK(p.samples[i].u > p.samples[i - 1].u);
    }
}

TEST_CASE("path positions are anchored at u = a") {
    const auto f = quadratic_demo();
    const auto l = shoot_half(f, Side::left, 0.5);
    const auto r = shoot_half(f, Side::right, 0.5);
    CHECK(l.samples.back().z == 0.0);
    CHECK(r.samples.front().z == 0.0);
    CHECK(l.samples.front().z < -10.0);
    CHECK(r.samples.back().z > 5.0);
}

TEST_CASE("shoot_half rejects bad eps and c") {
    ShootOptions opt;
    opt.eps = 0.01;
    CHECK_THROWS_AS(shoot_half(quadratic_demo(), Side::left, 0.5, opt), Error);
    CHECK_THROWS_AS(shoot_half(quadratic_demo(), Side::left, -0.1), Error);
}

TEST_CASE("speed mismatch") {
    const auto f = piecewise_linear(-1.0, 0.3);
    CHECK(std::abs(speed_mismatch(f, 0.8728715609439696)) <= 1e-8);
    CHECK(speed_mismatch(f, 0.0) == Approx(-0.4).epsilon(1e-8));
}

TEST_CASE("mismatch sign at the bracket ends") {
    const auto f = quadratic_demo();
    const auto br = demo_bracket();
    CHECK(speed_mismatch(f, br.c_check) <= 1e-6);
    CHECK(speed_mismatch(f, br.c_hat) >= -1e-6);
    for (const auto& g : testing::random_admissible_quartics(5, 42)) {
        const auto b = speed_bracket(slope_bounds(g), g.a());
        REQUIRE(b.ordering_ok);
        CHECK(speed_mismatch(g, b.c_check) <= 1e-6);
        CHECK(speed_mismatch(g, b.c_hat) >= -1e-6);
    }
}

TEST_CASE("mismatch strictly increasing for the demo") {
    const auto f = quadratic_demo();
    const double top = demo_bracket().c_hat + 1.0;
    double prev = speed_mismatch(f, 0.0);
    for (int i = 1; i <= 20; ++i) {
        const double s = speed_mismatch(f, top * i / 20);
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("envelope slope sandwich") {
    const auto f = quadratic_demo();
    const auto b = slope_bounds(f);
    const double a = f.a();
    for (double c : {0.0, 0.3, 0.55, 1.0, 2.0}) {
        const double wl = shoot_half(f, Side::left, c).w_at_a();
        CHECK(lambda_plus(c, b.alpha_hi) * a - 1e-6 <= wl);
        CHECK(wl <= lambda_plus(c, b.alpha_lo) * a + 1e-6);
        try {
            const double wr = shoot_half(f, Side::right, c).w_at_a();
            CHECK(lambda_minus(c, b.beta_hi) * (a - 1.0) - 1e-6 <= wr);
            CHECK(wr <= lambda_minus(c, b.beta_lo) * (a - 1.0) + 1e-6);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PathCollapse);
        }
    }
}

TEST_CASE("find_speed on linear terms") {
    for (double a : {0.3, 0.45}) {
        const auto f = piecewise_linear(-1.0, a);
        const auto br = speed_bracket(slope_bounds(f), a);
        const auto res = find_speed(f, br);
        CHECK(std::abs(res.c_star - (1.0 - 2.0 * a) / std::sqrt(a * (1.0 - a))) <= 1e-8);
        CHECK(res.monotone_ok);
    }
}

TEST_CASE("find_speed on the demo term") {
    const auto f = quadratic_demo();
    const auto br = demo_bracket();
    const auto res = find_speed(f, br);
    CHECK(res.c_star == Approx(kDemoCStar).epsilon(1e-8));
    CHECK(res.c_star >= br.c_check);
    CHECK(res.c_star <= br.c_hat);
    CHECK(res.monotone_ok);
    CHECK(res.warnings.empty());
}

TEST_CASE("find_speed without an ordered bracket expands from zero") {
    const auto f = quadratic_demo();
    SpeedBracket br{};
    br.ordering_ok = false;
    CHECK(find_speed(f, br).c_star == Approx(kDemoCStar).epsilon(1e-8));
}

TEST_CASE("find_speed fails for the symmetric term") {
    const auto f = piecewise_linear(-1.0, 0.5);
    try {
        find_speed(f, speed_bracket(slope_bounds(f), 0.5));
        FAIL("expected NoPositiveRoot");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoPositiveRoot);
    }
}

TEST_CASE("refinement stability") {
    const auto f = quadratic_demo();
    const auto br = demo_bracket();
    const double c1 = find_speed(f, br).c_star;
    ShootOptions fine;
    fine.eps = default_eps(f) / 2;
    fine.ode.rtol /= 2;
    fine.ode.atol /= 2;
    const double c2 = find_speed(f, br, 1e-10, fine).c_star;
    CHECK(std::abs(c1 - c2) < 1e-7);
}

TEST_CASE("profile of a linear term matches the envelope wave") {
    const auto f = piecewise_linear(-1.0, 0.3);
    const double c = match_speed(-1.0, -1.0, 0.3);
    const auto ws = reconstruct_profile(f, c);
    const auto ew = make_envelope_wave(c, -1.0, -1.0, 0.3);
    double err = 0.0;
    for (std::size_t i = 0; i < ws.z_grid.size(); ++i) {
        err = std::max(err, std::abs(ws.u_values[i] - envelope_profile(ew, ws.z_grid[i])));
    }
    CHECK(err <= 1e-6);
    CHECK(verify_c1(ws, 1e-6));
}

TEST_CASE("demo profile") {
    const auto f = quadratic_demo();
    const double c = find_speed(f, demo_bracket()).c_star;
    const auto ws = reconstruct_profile(f, c);
    CHECK(verify_c1(ws, 1e-6));
    CHECK(ws.derivative_jump_at_0 <= 1e-6);
    CHECK(ws.u_values.front() <= 1e-4 * 1.0001);
    CHECK(ws.u_values.back() >= 1.0 - 1e-4 * 1.0001);
    for (std::size_t i = 1; i < ws.u_values.size(); ++i) {
        CHECK(ws.u_values[i] > ws.u_values[i - 1]);
        CHECK(ws.z_grid[i] == Approx(ws.z_grid[i - 1] + ws.dz));
    }
    for (double w : ws.w_values) CHECK(w > 0.0);
    const auto zero = std::find_if(ws.z_grid.begin(), ws.z_grid.end(), [](double z) { return std::abs(z) < 1e-12; });
    REQUIRE(zero != ws.z_grid.end());
    CHECK(std::abs(ws.u_values[zero - ws.z_grid.begin()] - 0.3) <= 1e-9);

    // left tail: slope of log u approaches the linearised rate over the last decade
    const double rate = lambda_plus(c, -1.0);
    std::size_t i1 = 0;
    while (ws.u_values[i1] < 10.0 * ws.u_values.front()) ++i1;
    const double slope = (std::log(ws.u_values[i1]) - std::log(ws.u_values[0])) / (ws.z_grid[i1] - ws.z_grid[0]);
    CHECK(std::abs(slope / rate - 1.0) <= 0.01);
}

TEST_CASE("profile off the wave speed is not C1") {
    const auto f = quadratic_demo();
    const double c = find_speed(f, demo_bracket()).c_star;
    const auto ws = reconstruct_profile(f, c + 0.1);
    CHECK_FALSE(verify_c1(ws, 1e-6));
    CHECK(speed_mismatch(f, c + 0.1) > 0.0);
}

TEST_CASE("profile interpolant") {
    const auto f = quadratic_demo();
    const double c = find_speed(f, demo_bracket()).c_star;
    ProfileOptions opt;
    opt.u_eps = 1e-6;
    const auto ws = reconstruct_profile(f, c, opt);
    const ProfileInterpolant p(ws);
    CHECK(p.c() == c);
    CHECK(p.value(0.0) == Approx(0.3).epsilon(1e-9));
    for (std::size_t i = 0; i < ws.z_grid.size(); i += 37) CHECK(p.value(ws.z_grid[i]) == Approx(ws.u_values[i]).epsilon(1e-12));
    double prev = -1.0;
    for (double z = p.z_min() - 10.0; z <= p.z_max() + 10.0; z += 0.013) {
        const double v = p.value(z);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK(p.value(p.z_min() - 1.0) == Approx(ws.u_values.front() * std::exp(-ws.rate_left)).epsilon(1e-9));
    CHECK(p.slope(0.0) == Approx(ws.w_values[std::lround(-ws.z0 / ws.dz)]).epsilon(1e-6));
}

TEST_CASE("random quartics stay inside their bracket") {
    for (const auto& g : testing::random_admissible_quartics(6, 9)) {
        const auto br = speed_bracket(slope_bounds(g), g.a());
        const auto res = find_speed(g, br);
        CHECK(res.c_star >= br.c_check - 1e-6);
        CHECK(res.c_star <= br.c_hat + 1e-6);
    }
}
