#pragma once

#include <string>
#include <vector>

#include "bw/linear_theory.hpp"
#include "bw/ode.hpp"
#include "bw/reaction.hpp"

namespace bw {

enum class Side { left, right };

struct PhaseSample {
    double u;
    double w;  // u_z as a function of u
    double z;  // position along the wave, shifted so that z(a) = 0
};

/// Phase-plane path dw/du = c - f(u)/w on one side of the branch point.
/// Samples are ordered by increasing u; the last (left) or first (right)
/// sample sits at u = a.
struct PhasePath {
    Side side;
    double c;
    std::vector<PhaseSample> samples;

    double w_at_a() const { return side == Side::left ? samples.back().w : samples.front().w; }
};

struct ShootOptions {
    double eps = 0.0;  // 0 selects default_eps(f)
    OdeOptions ode{};
    double w_floor = 1e-12;
};

/// 1e-6 min(a, 1-a), floored at 1e-8.
double default_eps(const ReactionTerm& f);

/// Integrates from the linearised seed at distance eps from the equilibrium
/// (0 on the left, 1 on the right) to u = a. Throws PathCollapse if the
/// right path reaches w = 0 before u = a.
PhasePath shoot_half(const ReactionTerm& f, Side side, double c, const ShootOptions& opt = {});

/// S(c) = w-(a; c) - w+(a; c); a collapsed right path counts as w+ = 0.
double speed_mismatch(const ReactionTerm& f, double c, const ShootOptions& opt = {});

struct SpeedResult {
    double c_star = 0.0;
    double residual = 0.0;  // S(c_star)
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool monotone_ok = true;
    std::vector<std::string> warnings;
};

/// Bisection on S. Starts from [c_check, c_hat] when the bracket ordering
/// holds, otherwise from [0, 1] with the upper end doubled up to 2^10.
SpeedResult find_speed(const ReactionTerm& f, const SpeedBracket& bracket, double tol_c = 1e-10,
                       const ShootOptions& opt = {});

struct WaveSolution {
    double c_star = 0.0;
    double a = 0.0;
    double z0 = 0.0;  // z_grid[0]; grid is z0 + k dz
    double dz = 0.0;
    std::vector<double> z_grid;
    std::vector<double> u_values;
    std::vector<double> w_values;
    double derivative_jump_at_0 = 0.0;
    double rate_left = 0.0;   // tail exponent at -inf (lambda0+ for f0'(0))
    double rate_right = 0.0;  // tail exponent at +inf (lambda1- for f1'(1))
    SpeedBracket bracket{};
};

struct ProfileOptions {
    double u_eps = 1e-4;
    double dz = 1e-2;
    ShootOptions shoot{};
};

/// Integrates du/dz = w(u) out of u(0) = a in both directions and samples
/// the result on a uniform z grid until u <= u_eps / u >= 1 - u_eps.
WaveSolution reconstruct_profile(const ReactionTerm& f, double c_star, const ProfileOptions& opt = {});

bool verify_c1(const WaveSolution& ws, double tol);

}  // namespace bw
