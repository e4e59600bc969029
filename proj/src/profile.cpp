#include "bw/profile.hpp"

#include <algorithm>
#include <cmath>

#include "bw/error.hpp"

namespace bw {

namespace {

struct Hermite {
    double u;
    double du;
};

Hermite hermite(double t, double h, double u0, double u1, double d0, double d1) {
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    const double g00 = 6 * t2 - 6 * t, g10 = 3 * t2 - 4 * t + 1, g01 = -6 * t2 + 6 * t, g11 = 3 * t2 - 2 * t;
    return {h00 * u0 + h10 * h * d0 + h01 * u1 + h11 * h * d1, (g00 * u0 + g01 * u1) / h + g10 * d0 + g11 * d1};
}

// Hermite evaluation on a non-uniform node set with exact slopes.
Hermite eval_nodes(const std::vector<PhaseSample>& nodes, double z, double c, const BranchPoly& branch) {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), z, [](double v, const PhaseSample& p) { return v < p.z; });
    std::size_t i = static_cast<std::size_t>(std::clamp<long>(it - nodes.begin() - 1, 0, long(nodes.size()) - 2));
    const auto& p0 = nodes[i];
    const auto& p1 = nodes[i + 1];
    const double h = p1.z - p0.z;
    if (!(h > 0.0)) return {p0.u, p0.w};
    const double t = (z - p0.z) / h;
    auto res = hermite(t, h, p0.u, p1.u, p0.w, p1.w);
    // w interpolated with its own exact slope dw/dz = c w - f(u).
    auto wres = hermite(t, h, p0.w, p1.w, c * p0.w - branch(p0.u), c * p1.w - branch(p1.u));
    return {res.u, wres.u};
}

// z at which u crosses `level` along the node list, by linear interpolation
// in log distance to the nearer equilibrium.
double crossing(const std::vector<PhaseSample>& nodes, double level, bool left) {
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double u0 = nodes[i].u, u1 = nodes[i + 1].u;
        if ((u0 - level) * (u1 - level) <= 0.0 && u0 != u1) {
            auto g = [&](double u) { return left ? std::log(u) : std::log(1.0 - u); };
            const double t = (g(level) - g(u0)) / (g(u1) - g(u0));
            return nodes[i].z + t * (nodes[i + 1].z - nodes[i].z);
        }
    }
    throw Error(ErrorKind::IntegrationFailure, "profile does not reach the truncation level");
}

}  // namespace

WaveSolution reconstruct_profile(const ReactionTerm& f, double c_star, const ProfileOptions& opt) {
    if (!(opt.u_eps > 0.0 && opt.u_eps <= 1e-3)) throw Error(ErrorKind::Domain, "reconstruct_profile needs 0 < u_eps <= 1e-3");
    if (!(opt.dz > 0.0)) throw Error(ErrorKind::Domain, "reconstruct_profile needs dz > 0");
    ShootOptions so = opt.shoot;
    if (!(so.eps > 0.0)) so.eps = std::min(default_eps(f), 1e-2 * opt.u_eps);

    const auto left = shoot_half(f, Side::left, c_star, so);
    const auto right = shoot_half(f, Side::right, c_star, so);

    WaveSolution ws;
    ws.c_star = c_star;
    ws.a = f.a();
    ws.dz = opt.dz;
    ws.derivative_jump_at_0 = std::abs(left.w_at_a() - right.w_at_a());
    ws.rate_left = lambda_plus(c_star, f.f0().derivative(0.0));
    ws.rate_right = lambda_minus(c_star, f.f1().derivative(1.0));

    const double z_lo = crossing(left.samples, opt.u_eps, true);
    const double z_hi = crossing(right.samples, 1.0 - opt.u_eps, false);
    const long k_lo = static_cast<long>(std::floor(z_lo / opt.dz));
    const long k_hi = static_cast<long>(std::ceil(z_hi / opt.dz));
    ws.z0 = static_cast<double>(k_lo) * opt.dz;
    for (long k = k_lo; k <= k_hi; ++k) {
        const double z = static_cast<double>(k) * opt.dz;
        Hermite h{};
        if (k == 0) {
            h = {f.a(), 0.5 * (left.w_at_a() + right.w_at_a())};
        } else if (k < 0) {
            h = eval_nodes(left.samples, z, c_star, f.f0());
        } else {
            h = eval_nodes(right.samples, z, c_star, f.f1());
        }
        ws.z_grid.push_back(z);
        ws.u_values.push_back(h.u);
        ws.w_values.push_back(h.du);
    }
    return ws;
}

bool verify_c1(const WaveSolution& ws, double tol) {
    if (!(ws.derivative_jump_at_0 <= tol)) return false;
    return std::all_of(ws.w_values.begin(), ws.w_values.end(), [](double w) { return w > 0.0; });
}

ProfileInterpolant::ProfileInterpolant(const WaveSolution& ws)
    : z0_(ws.z0), dz_(ws.dz), c_(ws.c_star), rate_left_(ws.rate_left), rate_right_(ws.rate_right),
      u_(ws.u_values), d_(ws.w_values) {
    if (u_.size() < 2) throw Error(ErrorKind::DegenerateProfile, "profile needs at least two samples");
    // Fritsch-Carlson limiter keeps every cell monotone.
    for (std::size_t i = 0; i + 1 < u_.size(); ++i) {
        const double secant = (u_[i + 1] - u_[i]) / dz_;
        if (secant <= 0.0) {
            d_[i] = d_[i + 1] = 0.0;
            continue;
        }
        const double al = d_[i] / secant, be = d_[i + 1] / secant;
        const double r2 = al * al + be * be;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            d_[i] = tau * al * secant;
            d_[i + 1] = tau * be * secant;
        }
    }
}

double ProfileInterpolant::value(double z) const {
    const double zmax = z_max();
    if (z <= z0_) return u_.front() * std::exp(rate_left_ * (z - z0_));
    if (z >= zmax) return 1.0 - (1.0 - u_.back()) * std::exp(rate_right_ * (z - zmax));
    const double pos = (z - z0_) / dz_;
    const auto i = std::min(static_cast<std::size_t>(pos), u_.size() - 2);
    return hermite(pos - static_cast<double>(i), dz_, u_[i], u_[i + 1], d_[i], d_[i + 1]).u;
}

double ProfileInterpolant::slope(double z) const {
    const double zmax = z_max();
    if (z <= z0_) return rate_left_ * u_.front() * std::exp(rate_left_ * (z - z0_));
    if (z >= zmax) return -rate_right_ * (1.0 - u_.back()) * std::exp(rate_right_ * (z - zmax));
    const double pos = (z - z0_) / dz_;
    const auto i = std::min(static_cast<std::size_t>(pos), u_.size() - 2);
    return hermite(pos - static_cast<double>(i), dz_, u_[i], u_[i + 1], d_[i], d_[i + 1]).du;
}

}  // namespace bw
