#include "bw/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bw/error.hpp"

namespace bw {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::NonNegativeSlope: return "NonNegativeSlope";
        case ErrorKind::NoPositiveRoot: return "NoPositiveRoot";
        case ErrorKind::PathCollapse: return "PathCollapse";
        case ErrorKind::BracketFailure: return "BracketFailure";
        case ErrorKind::IntegrationFailure: return "IntegrationFailure";
        case ErrorKind::DegenerateProfile: return "DegenerateProfile";
        case ErrorKind::Divergence: return "Divergence";
        case ErrorKind::NoFront: return "NoFront";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::NonPositiveDistance: return "NonPositiveDistance";
        case ErrorKind::Config: return "ConfigError";
    }
    return "Error";
}

namespace {

double horner(const std::vector<double>& c, double u) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
}

// p(u) = (u - r) q(u) + p(r); returns q.
std::vector<double> deflate(const std::vector<double>& p, double r) {
    if (p.size() < 2) return {0.0};
    std::vector<double> q(p.size() - 1);
    double carry = p.back();
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = p[k] + r * carry;
    }
    return q;
}

double golden_min(const std::vector<double>& q, double lo, double hi, double sign) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto g = [&](double u) { return sign * horner(q, u); };
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * std::max(1.0, std::abs(hi)); ++it) {
        if (g1 < g2) {
            hi = x2; x2 = x1; g2 = g1;
            x1 = hi - inv_phi * (hi - lo); g1 = g(x1);
        } else {
            lo = x1; x1 = x2; g1 = g2;
            x2 = lo + inv_phi * (hi - lo); g2 = g(x2);
        }
    }
    return sign * std::min({g1, g2, g(lo), g(hi)});
}

// Range of the polynomial q over [lo, hi]: dense grid, then golden-section
// polish around the grid argmin/argmax.
Range poly_range(const std::vector<double>& q, double lo, double hi, int n_grid) {
    std::vector<double> v(n_grid + 1);
    const double h = (hi - lo) / n_grid;
    for (int i = 0; i <= n_grid; ++i) v[i] = horner(q, lo + i * h);
    const auto imin = std::min_element(v.begin(), v.end()) - v.begin();
    const auto imax = std::max_element(v.begin(), v.end()) - v.begin();
    auto window = [&](long i) {
        return std::pair{lo + std::max<long>(i - 1, 0) * h, lo + std::min<long>(i + 1, n_grid) * h};
    };
    auto [a0, a1] = window(imin);
    auto [b0, b1] = window(imax);
    return {std::min(v[imin], golden_min(q, a0, a1, 1.0)),
            std::max(v[imax], golden_min(q, b0, b1, -1.0))};
}

}  // namespace

Range polynomial_range(const std::vector<double>& coeffs, double lo, double hi, int n_grid) {
    return poly_range(coeffs, lo, hi, n_grid);
}

std::vector<double> derivative_coefficients(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2) return {0.0};
    std::vector<double> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs[k];
    return d;
}

BranchPoly::BranchPoly(std::vector<double> coefficients, double domain_lo, double domain_hi)
    : coeffs_(std::move(coefficients)), lo_(domain_lo), hi_(domain_hi) {
    if (coeffs_.empty()) throw Error(ErrorKind::Domain, "branch polynomial needs at least one coefficient");
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw Error(ErrorKind::Domain, "branch polynomial coefficient is not finite");
    if (!(domain_lo < domain_hi)) throw Error(ErrorKind::Domain, "branch domain must satisfy lo < hi");
}

double BranchPoly::operator()(double u) const { return horner(coeffs_, u); }

double BranchPoly::derivative(double u) const {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * u + static_cast<double>(k) * coeffs_[k];
    return acc;
}

double BranchPoly::integral(double lo, double hi) const {
    auto anti = [&](double u) {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * u + coeffs_[k] / static_cast<double>(k + 1);
        return acc * u;
    };
    return anti(hi) - anti(lo);
}

BranchRule parse_branch_rule(const std::string& name) {
    if (name == "left_closed") return BranchRule::left_closed;
    if (name == "right_closed") return BranchRule::right_closed;
    if (name == "average") return BranchRule::average;
    throw Error(ErrorKind::Domain, "unknown branch_rule '" + name + "'");
}

std::string to_string(BranchRule rule) {
    switch (rule) {
        case BranchRule::left_closed: return "left_closed";
        case BranchRule::right_closed: return "right_closed";
        case BranchRule::average: return "average";
    }
    return "right_closed";
}

ReactionTerm::ReactionTerm(double a, std::vector<double> f0, std::vector<double> f1, BranchRule rule)
    : a_(a),
      f0_(std::move(f0), 0.0, a > 0.0 && a < 1.0 ? a : 0.5),
      f1_(std::move(f1), a > 0.0 && a < 1.0 ? a : 0.5, 1.0),
      rule_(rule) {
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::Domain, "branch point a must lie in (0,1)");
    df0_at0_ = f0_.derivative(0.0);
    df1_at1_ = f1_.derivative(1.0);
    switch (rule_) {
        case BranchRule::left_closed: at_branch_ = f0_(a_); break;
        case BranchRule::right_closed: at_branch_ = f1_(a_); break;
        case BranchRule::average: at_branch_ = 0.5 * (f0_(a_) + f1_(a_)); break;
    }
}

double ReactionTerm::eval(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) {
        std::ostringstream os;
        os << "f evaluated at u=" << u << " outside [0,1]";
        throw Error(ErrorKind::Domain, os.str());
    }
    return eval_extended(u);
}

ReactionTerm ReactionTerm::with_branch_rule(BranchRule rule) const {
    return ReactionTerm(a_, f0_.coefficients(), f1_.coefficients(), rule);
}

ReactionTerm piecewise_linear(double k, double a) { return ReactionTerm(a, {0.0, k}, {-k, k}); }

ReactionTerm quadratic_demo() { return ReactionTerm(0.3, {0.0, -1.0, -1.0}, {0.2, 0.8, -1.0}); }

SlopeBounds slope_bounds(const ReactionTerm& f, int n_grid) {
    if (n_grid < 64) throw Error(ErrorKind::Domain, "slope_bounds needs n_grid >= 64");
    // f0(u)/u and f1(u)/(u-1) as polynomials; the removable singularities at
    // 0 and 1 evaluate to f0'(0) and f1'(1).
    const auto q0 = deflate(f.f0().coefficients(), 0.0);
    const auto q1 = deflate(f.f1().coefficients(), 1.0);
    const auto alpha = poly_range(q0, 0.0, f.a(), n_grid);
    const auto beta = poly_range(q1, f.a(), 1.0, n_grid);
    SlopeBounds b{alpha.lo, alpha.hi, beta.lo, beta.hi};
    if (b.alpha_hi >= 0.0 || b.beta_hi >= 0.0) {
        std::ostringstream os;
        os << "alpha_hi=" << b.alpha_hi << ", beta_hi=" << b.beta_hi;
        throw Error(ErrorKind::NonNegativeSlope, os.str());
    }
    return b;
}

HypothesisReport check_hypotheses(const ReactionTerm& f, double tol) {
    HypothesisReport r;
    const double a = f.a();
    const auto& f0 = f.f0();
    const auto& f1 = f.f1();

    r.h1_ok = true;
    auto h1 = [&](bool ok, double u, double value) {
        if (!ok) {
            r.h1_ok = false;
            r.violations.push_back({"H1", u, value});
        }
    };
    h1(std::abs(f0(0.0)) <= tol, 0.0, f0(0.0));
    h1(f0.derivative(0.0) < -tol, 0.0, f0.derivative(0.0));
    h1(std::abs(f1(1.0)) <= tol, 1.0, f1(1.0));
    h1(f1.derivative(1.0) < -tol, 1.0, f1.derivative(1.0));

    constexpr int n = 4096;
    r.h2_ok = true;
    for (int i = 1; i <= n; ++i) {
        const double u = a * i / n;
        if (const double v = f0(u); !(v < -tol)) {
            r.h2_ok = false;
            r.violations.push_back({"H2", u, v});
        }
    }
    for (int i = 0; i < n; ++i) {
        const double u = a + (1.0 - a) * i / n;
        if (const double v = f1(u); !(v > tol)) {
            r.h2_ok = false;
            r.violations.push_back({"H2", u, v});
        }
    }

    r.h3_integral = potential_integral(f);
    r.h3_ok = r.h3_integral > tol;
    if (!r.h3_ok) r.violations.push_back({"H3", a, r.h3_integral});

    try {
        r.slope_bounds = slope_bounds(f);
        r.slopes_ok = true;
        const auto& b = r.slope_bounds;
        const double s0 = std::sqrt(-b.alpha_hi) * a;
        const double s1 = std::sqrt(-b.alpha_lo) * a;
        const double s2 = std::sqrt(-b.beta_hi) * (1.0 - a);
        const double s3 = std::sqrt(-b.beta_lo) * (1.0 - a);
        r.remark2_ok = s0 <= s1 && s1 <= s2 && s2 <= s3;
    } catch (const Error&) {
        r.slopes_ok = false;
        r.remark2_ok = false;
    }
    return r;
}

ReactionTerm envelope(const ReactionTerm& f, const SlopeBounds& b, EnvelopeKind kind) {
    double left = 0.0, right = 0.0;
    switch (kind) {
        case EnvelopeKind::f_lo: left = b.alpha_lo; right = b.beta_lo; break;
        case EnvelopeKind::f_hi: left = b.alpha_hi; right = b.beta_hi; break;
        case EnvelopeKind::g_lo: left = b.alpha_lo; right = b.beta_hi; break;
        case EnvelopeKind::g_hi: left = b.alpha_hi; right = b.beta_lo; break;
    }
    return ReactionTerm(f.a(), {0.0, left}, {-right, right}, f.branch_rule());
}

double potential_integral(const ReactionTerm& f) {
    return f.f0().integral(0.0, f.a()) + f.f1().integral(f.a(), 1.0);
}

}  // namespace bw
