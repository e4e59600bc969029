#pragma once

#include <string>
#include <vector>

namespace bw {

struct Range {
    double lo;
    double hi;
};

/// Range of the polynomial (ascending coefficients) over [lo, hi]: uniform
/// grid, then golden-section refinement around the grid extrema.
Range polynomial_range(const std::vector<double>& coeffs, double lo, double hi, int n_grid = 2048);
std::vector<double> derivative_coefficients(const std::vector<double>& coeffs);

/// Polynomial branch of the nonlinearity, ascending-degree coefficients,
/// valid on [domain_lo, domain_hi].
class BranchPoly {
public:
    BranchPoly(std::vector<double> coefficients, double domain_lo, double domain_hi);

    double operator()(double u) const;
    double derivative(double u) const;
    /// Exact integral over [lo, hi] from the antiderivative.
    double integral(double lo, double hi) const;

    const std::vector<double>& coefficients() const { return coeffs_; }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }

private:
    std::vector<double> coeffs_;
    double lo_;
    double hi_;
};

enum class BranchRule { left_closed, right_closed, average };

BranchRule parse_branch_rule(const std::string& name);
std::string to_string(BranchRule rule);

/// Discontinuous bistable nonlinearity: f0 on [0,a], f1 on [a,1].
class ReactionTerm {
public:
    ReactionTerm(double a, std::vector<double> f0, std::vector<double> f1,
                 BranchRule rule = BranchRule::right_closed);

    double a() const { return a_; }
    const BranchPoly& f0() const { return f0_; }
    const BranchPoly& f1() const { return f1_; }
    BranchRule branch_rule() const { return rule_; }

    /// f(u) for u in [0,1]; throws ErrorKind::Domain outside.
    double eval(double u) const;

    /// eval() inside [0,1], tangent lines at 0 and 1 outside.
    double eval_extended(double u) const {
        if (u < 0.0) return df0_at0_ * u;
        if (u > 1.0) return df1_at1_ * (u - 1.0);
        if (u < a_) return f0_(u);
        if (u > a_) return f1_(u);
        return at_branch_;
    }

    ReactionTerm with_branch_rule(BranchRule rule) const;

private:
    double a_;
    BranchPoly f0_;
    BranchPoly f1_;
    BranchRule rule_;
    double df0_at0_;
    double df1_at1_;
    double at_branch_;
};

/// f(u) = k u on [0,a], k (u-1) on [a,1].
ReactionTerm piecewise_linear(double k, double a);
/// a = 0.3, f0 = -u - u^2, f1 = (1-u)(u+0.2).
ReactionTerm quadratic_demo();

struct SlopeBounds {
    double alpha_lo;
    double alpha_hi;
    double beta_lo;
    double beta_hi;
};

/// inf/sup of f0(u)/u on (0,a] and f1(u)/(u-1) on [a,1).
SlopeBounds slope_bounds(const ReactionTerm& f, int n_grid = 2048);

struct Violation {
    std::string hypothesis;
    double u;
    double value;
};

struct HypothesisReport {
    bool h1_ok = false;
    bool h2_ok = false;
    bool h3_ok = false;
    double h3_integral = 0.0;
    bool remark2_ok = false;
    bool slopes_ok = false;  // slope_bounds succeeded; slope_bounds valid only then
    SlopeBounds slope_bounds{};
    std::vector<Violation> violations;

    bool all_ok() const { return h1_ok && h2_ok && h3_ok; }
};

HypothesisReport check_hypotheses(const ReactionTerm& f, double tol = 1e-9);

enum class EnvelopeKind { f_lo, f_hi, g_lo, g_hi };

/// Piecewise-linear envelope term; left/right slope pairing per kind:
/// f_lo (alpha_lo, beta_lo), f_hi (alpha_hi, beta_hi),
/// g_lo (alpha_lo, beta_hi), g_hi (alpha_hi, beta_lo).
ReactionTerm envelope(const ReactionTerm& f, const SlopeBounds& b, EnvelopeKind kind);

/// int_0^a f0 + int_a^1 f1.
double potential_integral(const ReactionTerm& f);

}  // namespace bw
