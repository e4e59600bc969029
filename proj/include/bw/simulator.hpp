#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bw/kernels.hpp"
#include "bw/profile.hpp"
#include "bw/reaction.hpp"
#include "bw/shooting.hpp"

namespace bw {

enum class BoundaryCondition {
    /// Boundary nodes pinned to an equilibrium: 0 or 1, whichever is nearer
    /// to the node's current value (0 left / 1 right for front data).
    dirichlet01,
    /// Zero flux; the plain nodal sum is conserved by pure diffusion.
    neumann,
};

BoundaryCondition parse_boundary_condition(const std::string& name);
std::string to_string(BoundaryCondition bc);

struct Grid1D {
    double x_min = -60.0;
    double x_max = 60.0;
    double dx = 0.05;
    double dt = 0.01;
    BoundaryCondition bc = BoundaryCondition::dirichlet01;

    std::size_t intervals() const;  // validated (x_max - x_min)/dx
    std::size_t size() const { return intervals() + 1; }
    double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
};

/// 1.9 / max(K0, K1), the explicit-reaction step bound.
double dt_stability(const ReactionTerm& f);

/// Throws ErrorKind::Domain listing what is wrong with the grid.
void validate_grid(const Grid1D& g, const ReactionTerm& f);

struct SimState {
    double t = 0.0;
    std::vector<double> u;
};

/// Crank-Nicolson diffusion with explicit reaction; the tridiagonal system is
/// factored once at construction.
class Stepper {
public:
    Stepper(ReactionTerm f, Grid1D g, kernels::Exec exec = kernels::Exec::omp);

    /// Advances one dt in place. Throws Divergence if a node leaves [-0.5, 1.5].
    void advance(SimState& s);

    const Grid1D& grid() const { return g_; }
    const ReactionTerm& reaction() const { return f_; }

private:
    ReactionTerm f_;
    Grid1D g_;
    kernels::Exec exec_;
    double r_;
    std::vector<double> upper_;   // modified super-diagonal
    std::vector<double> inv_piv_; // reciprocal pivots
    std::vector<double> rhs_;
};

SimState step(const ReactionTerm& f, const SimState& s, const Grid1D& g);

struct FrontResult {
    double x;
    int crossings;
    bool multiple;
};

/// Level-a crossing by linear interpolation; the median crossing when there
/// are several. Throws NoFront if u - a has constant sign.
FrontResult front_position(const Grid1D& g, const std::vector<double>& u, double a);

struct ShiftResult {
    double distance;
    double z_best;
};

/// min over z of max |u(x) - u*(x + z)| on the grid interior (5% margin each
/// side): scan in steps of dx, then golden-section refinement to 1e-3 dx.
ShiftResult shift_distance(const Grid1D& g, const std::vector<double>& u, const ProfileInterpolant& wave,
                           kernels::Exec exec = kernels::Exec::omp);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> front_positions;  // NaN where no front
    std::vector<double> shift_distances;  // NaN without a reference wave
    std::vector<double> best_shifts;
    std::vector<SimState> snapshots;
    std::vector<std::string> diagnostics;
};

struct RunOptions {
    const ProfileInterpolant* reference = nullptr;
    std::vector<double> snapshot_times;
    kernels::Exec exec = kernels::Exec::omp;
};

/// Evolves u0 to t_end, observing every observe_every (rounded to whole steps),
/// including t = 0. Divergence is rethrown with the failing time.
Trajectory run(const ReactionTerm& f, std::vector<double> u0, const Grid1D& g, double t_end, double observe_every,
               const RunOptions& opt = {});

struct LineFit {
    double slope;
    double intercept;
    double r2;
};
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct SpeedEstimate {
    double speed;  // slope of front position in t (negative for a wave invading leftwards)
    double r2;
};
SpeedEstimate estimate_speed(const Trajectory& tr, std::pair<double, double> window);

struct DecayFit {
    double K;
    double kappa;
    double r2;
};
DecayFit fit_decay(const Trajectory& tr, std::pair<double, double> window);

struct SuperSubParams {
    double gamma;
    double sigma;
    double delta0;
    double K0;
    double K1;
    double K2_sep;
    double eps_star;
    double M;
    double rho;
};

/// Smallest M (on the profile grid) with u*(-M) <= a/2 and u*(M) >= (1+a)/2.
double select_M(const WaveSolution& ws);
double default_rho(const ReactionTerm& f);
SuperSubParams supersub_params(const WaveSolution& ws, const ReactionTerm& f, double M, double rho);

enum class EnvelopeSign { plus, minus };

/// u*(x + ct + z0 +- sigma delta (1 - e^{-gamma t})) +- delta e^{-gamma t}.
double envelope_value(const ProfileInterpolant& wave, const SuperSubParams& p, EnvelopeSign sign, double x,
                      double t, double z0, double delta);
double max_envelope_delta(const SuperSubParams& p, double a);

/// exp(-k_inf t - L^2/t) / (2 sqrt(pi t)).
double heat_kernel_eps(double t, double L, double k_inf);

enum class OdeBranch { q0, q1 };

struct TimeSeries {
    std::vector<double> t;
    std::vector<double> q;
};

/// q' = f0(q) (q0) or q' = f1(q) (q1) from q(0) = a.
TimeSeries reaction_ode(const ReactionTerm& f, OdeBranch branch, double t_end, double sample_every = 0.1);

struct ComparisonReport {
    double max_violation = 0.0;  // max over t, x of max(0, lower - upper)
    double x = 0.0;
    double t = 0.0;
};

ComparisonReport comparison_check(const ReactionTerm& f, std::vector<double> lower0, std::vector<double> upper0,
                                  const Grid1D& g, double t_end);

struct EnvelopeReport {
    double max_above_upper = 0.0;  // max(0, u - U+)
    double x_upper = 0.0;
    double t_upper = 0.0;
    double max_below_lower = 0.0;  // max(0, U- - u)
    double x_lower = 0.0;
    double t_lower = 0.0;
};

/// Evolves u0 and measures how far it leaves the band [U-, U+] built with
/// the given shift z0 and amplitude delta (wave interior only).
EnvelopeReport envelope_check(const ReactionTerm& f, const ProfileInterpolant& wave, const SuperSubParams& p,
                              std::vector<double> u0, const Grid1D& g, double t_end, double z0, double delta);

}  // namespace bw
