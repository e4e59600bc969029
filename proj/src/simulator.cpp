#include "bw/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bw/error.hpp"
#include "bw/ode.hpp"

namespace bw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_abs_derivative(const BranchPoly& p) {
    const auto r = polynomial_range(derivative_coefficients(p.coefficients()), p.domain_lo(), p.domain_hi());
    return std::max(std::abs(r.lo), std::abs(r.hi));
}

double pin_to_equilibrium(double v) { return v < 0.5 ? 0.0 : 1.0; }

}  // namespace

BoundaryCondition parse_boundary_condition(const std::string& name) {
    if (name == "dirichlet01") return BoundaryCondition::dirichlet01;
    if (name == "neumann") return BoundaryCondition::neumann;
    throw Error(ErrorKind::Domain, "unknown boundary condition '" + name + "'");
}

std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::neumann ? "neumann" : "dirichlet01";
}

std::size_t Grid1D::intervals() const {
    const double n = (x_max - x_min) / dx;
    return static_cast<std::size_t>(std::llround(n));
}

double dt_stability(const ReactionTerm& f) {
    const double L = std::max(max_abs_derivative(f.f0()), max_abs_derivative(f.f1()));
    return L > 0.0 ? 1.9 / L : std::numeric_limits<double>::infinity();
}

void validate_grid(const Grid1D& g, const ReactionTerm& f) {
    std::vector<std::string> problems;
    if (!(g.dx > 0.0)) problems.push_back("dx must be positive");
    if (!(g.dt > 0.0)) problems.push_back("dt must be positive");
    if (!(g.x_max > g.x_min)) problems.push_back("x_max must exceed x_min");
    if (problems.empty()) {
        const double n = (g.x_max - g.x_min) / g.dx;
        if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) problems.push_back("(x_max-x_min)/dx is not an integer");
        if (std::round(n) < 16) problems.push_back("grid needs at least 16 intervals");
        const double bound = dt_stability(f);
        if (g.dt > bound) {
            std::ostringstream os;
            os << "dt=" << g.dt << " exceeds dt_stability=" << bound;
            problems.push_back(os.str());
        }
    }
    if (!problems.empty()) {
        std::string msg;
        for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
        throw Error(ErrorKind::Domain, msg);
    }
}

Stepper::Stepper(ReactionTerm f, Grid1D g, kernels::Exec exec)
    : f_(std::move(f)), g_(g), exec_(exec), r_(g.dt / (2.0 * g.dx * g.dx)) {
    validate_grid(g_, f_);
    const std::size_t n = g_.size();
    std::vector<double> lower(n, -r_), diag(n, 1.0 + 2.0 * r_), upper(n, -r_);
    if (g_.bc == BoundaryCondition::dirichlet01) {
        diag[0] = diag[n - 1] = 1.0;
        upper[0] = lower[n - 1] = 0.0;
    } else {
        diag[0] = diag[n - 1] = 1.0 + r_;
    }
    lower[0] = upper[n - 1] = 0.0;
    upper_.resize(n);
    inv_piv_.resize(n);
    rhs_.resize(n);
    double prev_upper = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double piv = diag[i] - lower[i] * prev_upper;
        inv_piv_[i] = 1.0 / piv;
        upper_[i] = upper[i] * inv_piv_[i];
        prev_upper = upper_[i];
    }
}

void Stepper::advance(SimState& s) {
    auto& u = s.u;
    const std::size_t n = u.size();
    if (n != g_.size()) throw Error(ErrorKind::Domain, "state size does not match the grid");
    const double dt = g_.dt;
    if (exec_ == kernels::Exec::omp) {
        kernels::cn_rhs_omp(f_, u, r_, dt, rhs_);
    } else {
        kernels::cn_rhs_serial(f_, u, r_, dt, rhs_);
    }
    if (g_.bc == BoundaryCondition::dirichlet01) {
        rhs_[0] = pin_to_equilibrium(u[0]);
        rhs_[n - 1] = pin_to_equilibrium(u[n - 1]);
    } else {
        rhs_[0] = u[0] + r_ * (u[1] - u[0]) + dt * f_.eval_extended(u[0]);
        rhs_[n - 1] = u[n - 1] + r_ * (u[n - 2] - u[n - 1]) + dt * f_.eval_extended(u[n - 1]);
    }
    // Thomas sweep with the stored factorisation; sub-diagonal is -r off the edges.
    const bool dirichlet = g_.bc == BoundaryCondition::dirichlet01;
    u[0] = rhs_[0] * inv_piv_[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double low = (i == n - 1 && dirichlet) ? 0.0 : -r_;
        u[i] = (rhs_[i] - low * u[i - 1]) * inv_piv_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) u[i] -= upper_[i] * u[i + 1];
    s.t += dt;

    for (std::size_t i = 0; i < n; ++i) {
        if (!(u[i] >= -0.5 && u[i] <= 1.5)) {
            std::ostringstream os;
            os << "u=" << u[i] << " at x=" << g_.x(i) << ", t=" << s.t;
            throw Error(ErrorKind::Divergence, os.str());
        }
    }
}

SimState step(const ReactionTerm& f, const SimState& s, const Grid1D& g) {
    Stepper st(f, g);
    SimState out = s;
    st.advance(out);
    return out;
}

FrontResult front_position(const Grid1D& g, const std::vector<double>& u, double a) {
    std::vector<double> xs;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const bool s0 = u[i] >= a, s1 = u[i + 1] >= a;
        if (s0 != s1) xs.push_back(g.x(i) + (a - u[i]) / (u[i + 1] - u[i]) * g.dx);
    }
    if (xs.empty()) throw Error(ErrorKind::NoFront, "u - a has constant sign");
    const auto count = static_cast<int>(xs.size());
    return {xs[xs.size() / 2], count, count > 1};
}

ShiftResult shift_distance(const Grid1D& g, const std::vector<double>& u, const ProfileInterpolant& wave,
                           kernels::Exec exec) {
    const std::size_t n = u.size();
    const auto margin = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n)));
    const std::size_t i0 = margin, i1 = n - margin;
    const double x_lo = g.x(i0), x_hi = g.x(i1 - 1);

    // Shifts that keep the sampled wave inside the interior; if the domain is
    // too short for that, shifts that keep the level-a point inside.
    double z_lo = wave.z_max() - x_hi, z_hi = wave.z_min() - x_lo;
    if (z_lo > z_hi) {
        z_lo = -x_hi;
        z_hi = -x_lo;
    }
    try {
        const auto fr = front_position(g, u, wave.value(0.0));
        const double guess = -fr.x;
        const double lo = std::max(z_lo, guess - 5.0), hi = std::min(z_hi, guess + 5.0);
        if (lo < hi) {
            z_lo = lo;
            z_hi = hi;
        }
    } catch (const Error&) {
    }

    auto sup = [&](double z) {
        return exec == kernels::Exec::omp ? kernels::sup_distance_omp(u, g.x_min, g.dx, wave, z, i0, i1)
                                          : kernels::sup_distance_serial(u, g.x_min, g.dx, wave, z, i0, i1);
    };
    const double h = g.dx;
    const auto count = static_cast<std::size_t>(std::floor((z_hi - z_lo) / h)) + 1;
    std::vector<double> scan(count);
    if (exec == kernels::Exec::omp) {
        kernels::shift_scan_omp(u, g.x_min, g.dx, wave, i0, i1, z_lo, h, scan);
    } else {
        kernels::shift_scan_serial(u, g.x_min, g.dx, wave, i0, i1, z_lo, h, scan);
    }
    const auto k = static_cast<std::size_t>(std::min_element(scan.begin(), scan.end()) - scan.begin());
    double best_z = z_lo + static_cast<double>(k) * h;
    double best = scan[k];

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(z_lo, best_z - h), b = std::min(z_hi, best_z + h);
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = sup(x1), f2 = sup(x2);
    while (b - a > 1e-3 * g.dx) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a); f1 = sup(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a); f2 = sup(x2);
        }
    }
    if (f1 < best) { best = f1; best_z = x1; }
    if (f2 < best) { best = f2; best_z = x2; }
    return {best, best_z};
}

Trajectory run(const ReactionTerm& f, std::vector<double> u0, const Grid1D& g, double t_end, double observe_every,
               const RunOptions& opt) {
    if (!(t_end > 0.0)) throw Error(ErrorKind::Domain, "run needs t_end > 0");
    Stepper stepper(f, g, opt.exec);
    SimState s{0.0, std::move(u0)};
    const auto n_steps = static_cast<long long>(std::llround(t_end / g.dt));
    const auto stride = std::max<long long>(1, std::llround(observe_every / g.dt));
    std::vector<long long> snap_steps;
    for (double ts : opt.snapshot_times) snap_steps.push_back(std::llround(ts / g.dt));

    Trajectory tr;
    bool warned_no_front = false, warned_multi = false;
    auto observe = [&](long long k) {
        const double t = static_cast<double>(k) * g.dt;
        tr.times.push_back(t);
        try {
            const auto fr = front_position(g, s.u, f.a());
            tr.front_positions.push_back(fr.x);
            if (fr.multiple && !warned_multi) {
                tr.diagnostics.push_back("MultipleFronts at t=" + std::to_string(t));
                warned_multi = true;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoFront) throw;
            tr.front_positions.push_back(kNaN);
            if (!warned_no_front) {
                tr.diagnostics.push_back("NoFront at t=" + std::to_string(t));
                warned_no_front = true;
            }
        }
        if (opt.reference) {
            const auto sd = shift_distance(g, s.u, *opt.reference, opt.exec);
            tr.shift_distances.push_back(sd.distance);
            tr.best_shifts.push_back(sd.z_best);
        } else {
            tr.shift_distances.push_back(kNaN);
            tr.best_shifts.push_back(kNaN);
        }
    };
    auto snapshot = [&](long long k) {
        for (long long ks : snap_steps)
            if (ks == k) tr.snapshots.push_back({static_cast<double>(k) * g.dt, s.u});
    };

    observe(0);
    snapshot(0);
    for (long long k = 1; k <= n_steps; ++k) {
        stepper.advance(s);
        s.t = static_cast<double>(k) * g.dt;
        if (k % stride == 0) observe(k);
        snapshot(k);
    }
    return tr;
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (intercept + slope * x[i]);
        ss_res += e * e;
    }
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return {slope, intercept, r2};
}

SpeedEstimate estimate_speed(const Trajectory& tr, std::pair<double, double> window) {
    std::vector<double> t, x;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        if (tr.times[i] >= window.first - 1e-12 && tr.times[i] <= window.second + 1e-12 &&
            std::isfinite(tr.front_positions[i])) {
            t.push_back(tr.times[i]);
            x.push_back(tr.front_positions[i]);
        }
    }
    if (t.size() < 8) throw Error(ErrorKind::InsufficientData, "need at least 8 front observations in the window");
    const auto fit = least_squares(t, x);
    return {fit.slope, fit.r2};
}

DecayFit fit_decay(const Trajectory& tr, std::pair<double, double> window) {
    std::vector<double> t, logd;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        if (tr.times[i] < window.first - 1e-12 || tr.times[i] > window.second + 1e-12) continue;
        const double d = tr.shift_distances[i];
        if (!(d > 0.0)) throw Error(ErrorKind::NonPositiveDistance, "shift distance not positive at t=" + std::to_string(tr.times[i]));
        t.push_back(tr.times[i]);
        logd.push_back(std::log(d));
    }
    if (t.size() < 8) throw Error(ErrorKind::InsufficientData, "need at least 8 distances in the window");
    const auto fit = least_squares(t, logd);
    return {std::exp(fit.intercept), 0.0 - fit.slope, fit.r2};
}

double select_M(const WaveSolution& ws) {
    const ProfileInterpolant wave(ws);
    const double a = ws.a;
    for (std::size_t k = 0;; ++k) {
        const double M = static_cast<double>(k) * ws.dz;
        if (wave.value(-M) <= 0.5 * a && wave.value(M) >= 0.5 * (1.0 + a)) return M;
        if (M > 1e4) throw Error(ErrorKind::DegenerateProfile, "no M found with u*(-M) <= a/2 and u*(M) >= (1+a)/2");
    }
}

double default_rho(const ReactionTerm& f) { return 0.05 * std::min(f.a(), 1.0 - f.a()); }

SuperSubParams supersub_params(const WaveSolution& ws, const ReactionTerm& f, double M, double rho) {
    if (!(rho > 0.0)) throw Error(ErrorKind::Domain, "supersub_params needs rho > 0");
    const ProfileInterpolant wave(ws);
    const double a = f.a();
    if (!(M > 0.0) || wave.value(-M) > 0.5 * a || wave.value(M) < 0.5 * (1.0 + a)) {
        throw Error(ErrorKind::Domain, "M must satisfy u*(-M) <= a/2 and u*(M) >= (1+a)/2");
    }
    SuperSubParams p{};
    p.M = M;
    p.rho = rho;
    p.gamma = 0.5 * std::min(-f.f0().derivative(0.0), -f.f1().derivative(1.0));
    p.K0 = max_abs_derivative(f.f0());
    p.K1 = max_abs_derivative(f.f1());

    constexpr int n = 800;
    auto best = kernels::secant_max_omp(f, rho, n);
    // Polish on a finer local grid around the coarse maximiser.
    const double hx = a / n, hy = (1.0 - a) / n;
    for (int i = -20; i <= 20; ++i) {
        const double x = std::clamp(best.x + i * hx / 10.0, 0.0, a);
        for (int j = -20; j <= 20; ++j) {
            const double y = std::clamp(best.y + j * hy / 10.0, a, 1.0);
            if (y - x < rho) continue;
            const double v = (f.f1()(y) - f.f0()(x)) / (y - x);
            if (v > best.value) best = {v, x, y};
        }
    }
    p.K2_sep = best.value;

    p.eps_star = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ws.z_grid.size(); ++i)
        if (std::abs(ws.z_grid[i]) <= M) p.eps_star = std::min(p.eps_star, std::abs(ws.w_values[i]));
    if (!(p.eps_star > 0.0) || !std::isfinite(p.eps_star)) {
        throw Error(ErrorKind::DegenerateProfile, "min |u*_z| over |z| <= M is not positive");
    }
    const double ksum = p.K0 + p.K1 + p.K2_sep;
    p.delta0 = p.gamma / ksum;
    p.sigma = (p.gamma + ksum) / (p.gamma * p.eps_star);
    return p;
}

double max_envelope_delta(const SuperSubParams& p, double a) {
    return std::min({p.delta0, 0.25 * a, 0.25 * (1.0 - a)});
}

double envelope_value(const ProfileInterpolant& wave, const SuperSubParams& p, EnvelopeSign sign, double x,
                      double t, double z0, double delta) {
    const double a = wave.value(0.0);
    if (!(delta > 0.0) || delta > max_envelope_delta(p, a) * (1.0 + 1e-12)) {
        throw Error(ErrorKind::Domain, "envelope delta must lie in (0, min(delta0, a/4, (1-a)/4)]");
    }
    const double s = sign == EnvelopeSign::plus ? 1.0 : -1.0;
    const double decay = std::exp(-p.gamma * t);
    return wave.value(x + wave.c() * t + z0 + s * p.sigma * delta * (1.0 - decay)) + s * delta * decay;
}

double heat_kernel_eps(double t, double L, double k_inf) {
    if (!(t > 0.0)) throw Error(ErrorKind::Domain, "heat_kernel_eps needs t > 0");
    if (!(L > 0.0)) throw Error(ErrorKind::Domain, "heat_kernel_eps needs L > 0");
    return std::exp(-k_inf * t - L * L / t) / (2.0 * std::sqrt(std::numbers::pi * t));
}

TimeSeries reaction_ode(const ReactionTerm& f, OdeBranch branch, double t_end, double sample_every) {
    if (!(t_end > 0.0)) throw Error(ErrorKind::Domain, "reaction_ode needs t_end > 0");
    const BranchPoly& p = branch == OdeBranch::q0 ? f.f0() : f.f1();
    auto rhs = [&](double, const std::array<double, 1>& q) { return std::array<double, 1>{p(q[0])}; };
    OdeOptions opt;
    opt.h_max = sample_every;
    TimeSeries ts;
    std::array<double, 1> q{f.a()};
    ts.t.push_back(0.0);
    ts.q.push_back(q[0]);
    const auto n = static_cast<long>(std::ceil(t_end / sample_every - 1e-9));
    for (long k = 1; k <= n; ++k) {
        const double t0 = ts.t.back();
        const double t1 = std::min(t_end, static_cast<double>(k) * sample_every);
        const auto res = integrate_dopri<1>(rhs, t0, t1, q, opt, [](double, const auto&) { return true; });
        if (res.status != OdeStatus::reached_end) throw Error(ErrorKind::IntegrationFailure, "reaction_ode failed");
        q = res.y;
        ts.t.push_back(t1);
        ts.q.push_back(q[0]);
    }
    return ts;
}

ComparisonReport comparison_check(const ReactionTerm& f, std::vector<double> lower0, std::vector<double> upper0,
                                  const Grid1D& g, double t_end) {
    if (lower0.size() != upper0.size()) throw Error(ErrorKind::Domain, "comparison_check needs equal sizes");
    for (std::size_t i = 0; i < lower0.size(); ++i)
        if (lower0[i] > upper0[i]) throw Error(ErrorKind::Domain, "comparison_check needs lower0 <= upper0");
    Stepper st(f, g);
    SimState lo{0.0, std::move(lower0)}, hi{0.0, std::move(upper0)};
    ComparisonReport rep;
    const auto n_steps = std::llround(t_end / g.dt);
    for (long long k = 1; k <= n_steps; ++k) {
        st.advance(lo);
        st.advance(hi);
        for (std::size_t i = 0; i < lo.u.size(); ++i) {
            const double v = lo.u[i] - hi.u[i];
            if (v > rep.max_violation) {
                rep.max_violation = v;
                rep.x = g.x(i);
                rep.t = static_cast<double>(k) * g.dt;
            }
        }
    }
    return rep;
}

EnvelopeReport envelope_check(const ReactionTerm& f, const ProfileInterpolant& wave, const SuperSubParams& p,
                              std::vector<double> u0, const Grid1D& g, double t_end, double z0, double delta) {
    Stepper st(f, g);
    SimState s{0.0, std::move(u0)};
    EnvelopeReport rep;
    const std::size_t n = s.u.size();
    const auto margin = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n)));
    auto measure = [&](double t) {
        for (std::size_t i = margin; i + margin < n; ++i) {
            const double x = g.x(i);
            const double up = s.u[i] - envelope_value(wave, p, EnvelopeSign::plus, x, t, z0, delta);
            const double dn = envelope_value(wave, p, EnvelopeSign::minus, x, t, z0, delta) - s.u[i];
            if (up > rep.max_above_upper) rep = {up, x, t, rep.max_below_lower, rep.x_lower, rep.t_lower};
            if (dn > rep.max_below_lower) {
                rep.max_below_lower = dn;
                rep.x_lower = x;
                rep.t_lower = t;
            }
        }
    };
    measure(0.0);
    const auto n_steps = std::llround(t_end / g.dt);
    for (long long k = 1; k <= n_steps; ++k) {
        st.advance(s);
        measure(static_cast<double>(k) * g.dt);
    }
    return rep;
}

}  // namespace bw
