#pragma once

#include "bw/shooting.hpp"

namespace bw {

/// Continuous evaluation of a sampled wave: monotone cubic Hermite on the
/// uniform grid (node slopes are the sampled u_z), exponential tails with the
/// linearised rates outside the sampled range.
class ProfileInterpolant {
public:
    explicit ProfileInterpolant(const WaveSolution& ws);

    double value(double z) const;
    double slope(double z) const;

    double z_min() const { return z0_; }
    double z_max() const { return z0_ + dz_ * static_cast<double>(u_.size() - 1); }
    double c() const { return c_; }

private:
    double z0_;
    double dz_;
    double c_;
    double rate_left_;
    double rate_right_;
    std::vector<double> u_;
    std::vector<double> d_;  // limited node slopes
};

}  // namespace bw
