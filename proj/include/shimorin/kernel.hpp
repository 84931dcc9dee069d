#pragma once

#include "shimorin/diskquad.hpp"
#include "shimorin/measure.hpp"
#include "shimorin/multiplier.hpp"
#include "shimorin/radial_quadrature.hpp"
#include "shimorin/taylor.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace shimorin {

/// K_nu(z, lambda) = (1 - z conj(lambda))^{-1} int (1 - r z conj(lambda))^{-1} dnu.
cplx kernel_eval(const RadialMeasure& mu, cplx z, cplx lambda, const radial::Options& opt = {});

/// d/dz K_nu(z, lambda).
cplx kernel_eval_dz(const RadialMeasure& mu, cplx z, cplx lambda, const radial::Options& opt = {});

/// K_nu through int (1-r)^{-1} int_r^1 (1 - t z conj(lambda))^{-2} dt dnu, with
/// the inner integral done by quadrature.
cplx kernel_eval_double_integral(const RadialMeasure& mu, cplx z, cplx lambda, const radial::Options& opt = {});

/// Disk rule with angular panels graded around arg z, deep enough for |z|.
DiskRule kernel_rule(cplx z, DiskRuleParams base = {});

/// ||K_nu(z, .)||_{L^p} by direct disk quadrature.
double kernel_lp_norm(const RadialMeasure& mu, cplx z, double p, const DiskRule& rule);

/// Taylor coefficients (n+1) m_n conj(z)^n of lambda -> conj(K_nu(z, lambda)).
TaylorFunction kernel_series(const MultiplierSequence& m, cplx z);
/// Number of multiplier terms the series route needs at |z|.
long kernel_series_length(double abs_z);

/// ||K_nu(z, .)||_{L^p} through the kernel's Taylor series, circle by circle.
double kernel_lp_norm_series(const RadialMeasure& mu, cplx z, double p, const CircleOptions& opt = {});
double kernel_lp_norm_series(const MultiplierSequence& m, cplx z, double p, const CircleOptions& opt = {});

/// Two-sided bounds on ||K_nu(z, .)||_p; requires nu({1}) = 0.
Envelope pnorm_envelope(const RadialMeasure& mu, cplx z, double p);

/// int (1-r)^{-1} dnu over [0,1).
DivergibleValue inverse_moment(const RadialMeasure& mu);

struct CzConstants {
    bool applicable = false;
    double order = 0.0;
    double size = 0.0;
    double smooth = 0.0;
    double c_nu = 0.0;
    /// Carleson or hyperbolic witness constants used by the formulas.
    double C = 0.0;
    double C2 = 0.0;
    std::string reason;
};

/// Predicted size and smoothness constants of K_nu as a Calderon-Zygmund kernel.
CzConstants cz_constants(const RadialMeasure& mu);

struct SplitMeasure {
    RadialMeasure rest;
    double mass_at_one = 0.0;
};

SplitMeasure split_at_one(const RadialMeasure& mu);

struct ForelliRudin {
    double integral = 0.0;
    double bound_shape = 0.0;
    double ratio = 0.0;
};

/// int (1-|l|^2)^t / |1 - z conj(l)|^{2+c+t} dA against (1-|z|^2)^{-c}.
ForelliRudin forelli_rudin_check(double t, double c, cplx z, const DiskRule& rule);

/// Outcome of checking lhs <= rhs over a point cloud.
struct KernelBoundReport {
    std::string bound_name;
    std::size_t points = 0;
    std::size_t violations = 0;
    /// Smallest (rhs - lhs) / |rhs| seen.
    double worst_margin = std::numeric_limits<double>::infinity();
    cplx witness_z = 0.0;
    cplx witness_lambda = 0.0;
    double witness_extra = 0.0;
    double witness_lhs = 0.0;
    double witness_rhs = 0.0;

    void record(double lhs, double rhs, cplx z, cplx lambda, double extra = 0.0);
    bool ok() const { return violations == 0; }
    nlohmann::json to_json() const;
    /// Throws BoundViolation carrying the witness when any pair failed.
    void throw_if_violated() const;
};

using PointPair = std::pair<cplx, cplx>;

/// Seeded pairs concentrated near the boundary and near the diagonal, with
/// radii up to 1 - min_gap.
std::vector<PointPair> boundary_pairs(std::uint64_t seed, std::size_t count, double min_gap = 1e-4);

KernelBoundReport verify_hermitian(const RadialMeasure& mu, const std::vector<PointPair>& pts, double tol = 1e-12);
KernelBoundReport verify_ratio_bound(const std::vector<PointPair>& pts, std::uint64_t seed);
KernelBoundReport verify_universal_size(const RadialMeasure& mu, const std::vector<PointPair>& pts);
KernelBoundReport verify_representation(const RadialMeasure& mu, const std::vector<PointPair>& pts, double tol = 1e-8);
KernelBoundReport verify_dz_difference(const RadialMeasure& mu, const std::vector<PointPair>& pts, double tol = 1e-6);
std::vector<KernelBoundReport> verify_cz(const RadialMeasure& mu, const std::vector<PointPair>& pts);
std::vector<KernelBoundReport> verify_split(const RadialMeasure& mu, const std::vector<PointPair>& pts);

/// Seeded (z, p) samples with |z| <= max_abs and p in [p_lo, p_hi].
std::vector<std::pair<cplx, double>> zp_samples(std::uint64_t seed, std::size_t count, double p_lo, double p_hi,
                                                double max_abs = 0.99);

/// Series-route kernel norms against the lower and the upper envelope, with
/// relative slack eps on each side. Returns {lower, upper}.
std::vector<KernelBoundReport> verify_pnorm_sandwich(const RadialMeasure& mu, const std::vector<std::pair<cplx, double>>& zp,
                                        double eps = 1e-4);

struct CorollaryResult {
    double J = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double max_norm = 0.0;
    double argmax_abs_z = 0.0;
    std::vector<double> radii;
    std::vector<double> norms;
    bool ok() const { return max_norm >= lower && max_norm <= upper; }
};

/// Sup-norm sandwich for 1 < p < 2 along the radial sweep 1 - 2^{-k} up to 1 - min_gap.
CorollaryResult corollary_sweep(const RadialMeasure& mu, double p, double min_gap = 1e-4);

}  // namespace shimorin
