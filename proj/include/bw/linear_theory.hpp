#pragma once

#include <optional>
#include <string>

#include "bw/reaction.hpp"

namespace bw {

/// Roots of lambda^2 - c lambda + alpha = 0 (positive) and
/// lambda^2 - c lambda + beta = 0 (negative).
struct EigenRates {
    double lambda0_plus;
    double lambda1_minus;
    double c;
    double alpha;
    double beta;
};

EigenRates eigen_rates(double c, double alpha, double beta);

inline double lambda_plus(double c, double alpha) { return eigen_rates(c, alpha, -1.0).lambda0_plus; }
inline double lambda_minus(double c, double beta) { return eigen_rates(c, -1.0, beta).lambda1_minus; }

/// Matching residual (1-a) sqrt(c^2 - 4 beta) - a sqrt(c^2 - 4 alpha) - c.
/// Strictly decreasing in c; its root is the C1 speed of the linear wave.
double matching_residual(double c, double alpha, double beta, double a);

/// Root of matching_residual by bisection on an expanding bracket.
/// Throws NoPositiveRoot when matching_residual(0) <= 0.
double match_speed(double alpha, double beta, double a, double tol = 1e-13);

/// Piecewise exponential wave: a e^{rate_left z} for z < 0,
/// 1 + (a-1) e^{rate_right z} for z >= 0.
struct EnvelopeWave {
    double c;
    double rate_left;
    double rate_right;
    double a;
};

EnvelopeWave make_envelope_wave(double c, double alpha, double beta, double a);
double envelope_profile(const EnvelopeWave& w, double z);
/// u_z(0-) - u_z(0+).
double derivative_gap(const EnvelopeWave& w);

struct SpeedBracket {
    double c_check = 0.0;
    double c_under = 0.0;
    double c_over = 0.0;
    double c_hat = 0.0;
    bool ordering_ok = false;
    /// Name of the first speed whose matching failed, empty if none.
    std::string failed;
};

/// The four matched speeds. A NoPositiveRoot for one entry is recorded in
/// `failed` (that speed left at 0) and ordering_ok is false; use
/// speed_bracket_strict to get the exception instead.
SpeedBracket speed_bracket(const SlopeBounds& b, double a, double tol = 1e-9);
SpeedBracket speed_bracket_strict(const SlopeBounds& b, double a, double tol = 1e-9);

}  // namespace bw
