#pragma once

#include "shimorin/diskquad.hpp"
#include "shimorin/kernel.hpp"
#include "shimorin/measure.hpp"
#include "shimorin/multiplier.hpp"
#include "shimorin/taylor.hpp"
#include "shimorin/verdict.hpp"

#include <string>
#include <vector>

namespace shimorin {

/// E_t = {rho e^{i theta} : 1-t <= rho <= 1-t/2, |theta| <= t/20}.
struct BoundaryBox {
    double t = 0.0;
    /// Set for t = 1/2, the edge of the range where the real-part bounds hold.
    bool at_validity_edge = false;

    double rho_lo() const { return 1.0 - t; }
    double rho_hi() const { return 1.0 - 0.5 * t; }
    double theta_half() const { return t / 20.0; }
    bool contains(cplx z) const;
    /// Normalized area t^2 (1 - 3t/4) / (20 pi).
    double area() const;
};

/// Throws DomainError unless 0 < t <= 1/2.
BoundaryBox box(double t);

/// Full-disk rule whose radial and angular panels break at the box edges.
DiskRule box_rule(const BoundaryBox& b, DiskRuleParams base = {});

/// Gauss tensor rule over the box alone: nodes and dA weights.
struct BoxNodes {
    std::vector<cplx> z;
    std::vector<double> w;
};
BoxNodes box_nodes(const BoundaryBox& b, int order = 32);

SampledFunction indicator_testfn(double t);

/// Default z_t = sqrt(1 - t).
cplx default_point(double t);

/// conj(K(z_t, .)) / |K(z_t, .)| on E_t, zero elsewhere. Throws HypothesisError
/// if the kernel vanishes at a box node.
SampledFunction aligned_testfn(const RadialMeasure& mu, double t, cplx z_t);

/// int_{E_t} conj(lambda)^n dA for n = 0..N, in closed form.
std::vector<cplx> indicator_coefficients(const BoundaryBox& b, long N);
/// int f conj(lambda)^n dA over the box by Gauss quadrature, for the aligned family.
std::vector<cplx> aligned_coefficients(const RadialMeasure& mu, const BoundaryBox& b, cplx z_t, long N);

/// T_nu f = sum (n+1) m_n c_n z^n for f supported in the box with moments c_n.
TaylorFunction image_from_moments(const MultiplierSequence& m, const std::vector<cplx>& c);

/// Truncation keeping (1 - t/2)^N below 1e-16.
long box_series_length(double t);

/// Coefficients (n+1)^{t_exp}, n = 0..N.
TaylorFunction power_testfn(double t_exp, long N);

/// a_0 = 1, a_n = (m_{2^k} / m_n) (n+1)^{t_exp} on [2^k, 2^{k+1}).
TaylorFunction block_testfn(const MultiplierSequence& m, double t_exp, long N);
TaylorFunction block_testfn(const RadialMeasure& mu, double t_exp, long N);

/// Largest within-block ratio a_i / a_j of block_testfn coefficients.
double block_ratio_max(const TaylorFunction& f);

/// Samples (z, lambda, r) in E_t x E_t x [0,1] and checks the six real-part
/// lower bounds: the kernel integrand and the two derivative integrands, each
/// on [0,1] and in the sharper form for r in [1-t, 1].
std::vector<KernelBoundReport> realpart_bounds_check(const std::vector<double>& ts, std::size_t samples_per_t,
                                                     std::uint64_t seed);

inline constexpr double kC0 = 0.048112522432468816;  // sqrt(3)/36
inline constexpr double kC0Tilde = 1.0 / 108.0;

enum class Family { indicator, aligned, power, block };
enum class Target { strong, weak, bloch };

std::string to_string(Family f);
Family parse_family(const std::string& s);

struct RatioOptions {
    Target target = Target::strong;
    /// Exponent of power and block families.
    double t_exp = 0.0;
    /// Box point for the aligned family; NaN picks default_point(t).
    double z_abs = std::numeric_limits<double>::quiet_NaN();
    CircleOptions circle{};
};

struct RatioPoint {
    /// t for box families, N for power and block.
    double param = 0.0;
    double norm_f = 0.0;
    double norm_Tf = 0.0;
    double ratio = 0.0;
};

/// ||T_nu f||_q / ||f||_p for one member of a family. With Target::weak the
/// numerator is the weak L^{q,inf} quasi-norm; with Target::bloch it is the
/// Bloch seminorm and q is ignored.
RatioPoint ratio_experiment(const RadialMeasure& mu, double p, double q, Family family, double param,
                            const RatioOptions& opt = {});

struct RatioSweep {
    std::vector<RatioPoint> points;
    GrowthVerdict verdict = GrowthVerdict::plateaued;
};

/// Box families over t = 2^{-k_lo} .. 2^{-k_hi}.
RatioSweep ratio_sweep(const RadialMeasure& mu, double p, double q, Family family, int k_lo, int k_hi,
                       const RatioOptions& opt = {});

struct SubharmonicCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok() const { return lhs <= rhs; }
};

/// |T f_t(z_t)|^q against (16/t^2) int |T f_t|^q dA for the indicator family.
SubharmonicCheck subharmonic_check(const RadialMeasure& mu, double t, double q, const CircleOptions& opt = {});

/// Circle options sized for a series whose coefficients live up to degree N or
/// decay like (1 - gap)^n.
CircleOptions series_circle_options(double gap, CircleOptions base = {});

}  // namespace shimorin
