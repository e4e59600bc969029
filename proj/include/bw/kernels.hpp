#pragma once

// Data-parallel inner loops. Each kernel has a serial reference used by the
// tests and the benchmark; the OpenMP variant must agree with it bit for bit.

#include <cstddef>
#include <span>

#include "bw/profile.hpp"
#include "bw/reaction.hpp"

namespace bw::kernels {

enum class Exec { serial, omp };

/// Interior rows of the Crank-Nicolson right-hand side:
/// rhs_i = u_i + r (u_{i-1} - 2 u_i + u_{i+1}) + dt f(u_i), 1 <= i < n-1.
void cn_rhs_serial(const ReactionTerm& f, std::span<const double> u, double r, double dt, std::span<double> rhs);
void cn_rhs_omp(const ReactionTerm& f, std::span<const double> u, double r, double dt, std::span<double> rhs);

/// max_i |u_i - u*(x0 + i dx + z)| over i in [i0, i1).
double sup_distance_serial(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                           double z, std::size_t i0, std::size_t i1);
double sup_distance_omp(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                        double z, std::size_t i0, std::size_t i1);

/// sup_distance at every shift z_lo + k h, k < out.size().
void shift_scan_serial(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                       std::size_t i0, std::size_t i1, double z_lo, double h, std::span<double> out);
void shift_scan_omp(std::span<const double> u, double x0, double dx, const ProfileInterpolant& wave,
                    std::size_t i0, std::size_t i1, double z_lo, double h, std::span<double> out);

/// max of (f1(y) - f0(x)) / (y - x) over an n x n grid of x in [0,a],
/// y in [a,1] restricted to y - x >= rho. Returns -inf if no pair qualifies.
struct SecantMax {
    double value;
    double x;
    double y;
};
SecantMax secant_max_serial(const ReactionTerm& f, double rho, int n);
SecantMax secant_max_omp(const ReactionTerm& f, double rho, int n);

}  // namespace bw::kernels
