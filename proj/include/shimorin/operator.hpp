#pragma once

#include "shimorin/diskquad.hpp"
#include "shimorin/measure.hpp"
#include "shimorin/multiplier.hpp"
#include "shimorin/taylor.hpp"
#include "shimorin/verdict.hpp"

#include <functional>
#include <vector>

namespace shimorin {

/// T_nu f through the multiplier: a_n -> m_n a_n.
TaylorFunction apply_multiplier(const RadialMeasure& mu, const TaylorFunction& f);
TaylorFunction apply_multiplier(const MultiplierSequence& m, const TaylorFunction& f);

/// T_nu f(z) = int K_nu(z, lambda) f(lambda) dA(lambda) by disk quadrature.
cplx apply_quadrature(const RadialMeasure& mu, const SampledFunction& f, cplx z, const DiskRule& rule);

/// T_nu f(z) = int (1-r)^{-1} int_r^1 f(tz) dt dnu(r); requires nu({1}) = 0.
cplx apply_radial(const RadialMeasure& mu, const std::function<cplx(cplx)>& f, cplx z);

/// Truncation N with |a_N| rho^N below 1e-12 for coefficients bounded by
/// C R^{-n}: the geometric tail bound used for analytic inputs.
long analytic_truncation(double coeff_bound, double radius_of_convergence, double rho, double tol = 1e-12);

struct MembershipResult {
    double partial_sum = 0.0;
    GrowthVerdict verdict = GrowthVerdict::plateaued;
    std::vector<double> block_sums;
    /// "monotone" or "block" depending on which hypothesis held.
    std::string hypothesis;
};

/// Largest max/min ratio accepted inside a dyadic block.
inline constexpr double kBlockComparability = 8.0;

/// Partial sum of (n+1)^{p-3} a_n^p for a_0..a_N with a dyadic-block verdict.
/// Throws HypothesisError unless a is monotone or comparable on blocks.
MembershipResult bergman_membership(const std::vector<double>& a, double p);
MembershipResult bergman_membership(const std::function<double(long)>& a, double p, long N);

}  // namespace shimorin
