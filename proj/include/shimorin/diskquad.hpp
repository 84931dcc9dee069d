#pragma once

#include "shimorin/numeric.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace shimorin {

struct DiskRuleParams {
    /// Radial panels [1 - g^j, 1 - g^{j+1}] for j < radial_depth, plus the last one up to 1.
    int radial_depth = 30;
    double grading = 0.5;
    int order = 12;
    /// Uniform angular nodes when no angular breaks or focus are given.
    int angular_nodes = 256;
    /// Extra radial panel edges in (0,1).
    std::vector<double> radial_breaks;
    /// Extra angular panel edges; switches the angular rule to Gauss panels.
    std::vector<double> angular_breaks;
    /// Angle around which angular panels are graded geometrically (NaN: none).
    double angular_focus = std::numeric_limits<double>::quiet_NaN();
    /// Number of geometric angular levels around the focus.
    int angular_depth = 0;
};

/// Tensor rule on the unit disk for normalized area measure dA = rho drho dtheta / pi.
class DiskRule {
public:
    explicit DiskRule(DiskRuleParams params = {});

    /// Rule with more radial levels, higher order and twice the angular nodes.
    DiskRule refine() const;
    /// Same rule with `extra` more radial levels.
    DiskRule deepen(int extra) const;

    const DiskRuleParams& params() const { return params_; }
    const std::vector<double>& rho() const { return rho_; }
    /// Radial weights including the 2 rho Jacobian; they sum to 1.
    const std::vector<double>& rho_weights() const { return rho_w_; }
    const std::vector<double>& theta() const { return theta_; }
    /// Angular weights dtheta / (2 pi); they sum to 1.
    const std::vector<double>& theta_weights() const { return theta_w_; }

    std::size_t size() const { return rho_.size() * theta_.size(); }
    double weight_sum() const;

private:
    DiskRuleParams params_;
    std::vector<double> rho_, rho_w_, theta_, theta_w_;
};

/// Radial Gauss panels from a parameter set: nodes and 2 rho drho weights.
void radial_rule(const DiskRuleParams& params, std::vector<double>& rho, std::vector<double>& weights);

enum class Smoothness { smooth, boundary_singular };

/// A function on the open disk with optional derivative.
struct SampledFunction {
    std::function<cplx(cplx)> f;
    std::function<cplx(cplx)> df;
    Smoothness hint = Smoothness::smooth;
    /// Blow-up order at the boundary for boundary_singular hints.
    double singular_order = 0.0;
};

/// Values |f| at every node and the matching weights, in a fixed order.
struct SampleSet {
    std::vector<double> values;
    std::vector<double> weights;
};

cplx integrate(const SampledFunction& f, const DiskRule& rule);
SampleSet sample_abs(const SampledFunction& f, const DiskRule& rule);

double lp_norm(const SampledFunction& f, double p, const DiskRule& rule);
double distribution_function(const SampledFunction& f, double tau, const DiskRule& rule);

/// sup_tau tau d_f(tau)^{1/q}, evaluated exactly over the sample values.
double weak_norm(const SampledFunction& f, double q, const DiskRule& rule);
/// The same supremum restricted to a geometric tau grid of `points` values.
double weak_norm_grid(const SampledFunction& f, double q, const DiskRule& rule, int points = 200);
/// Exact weak quasi-norm of a discrete sample set.
double weak_norm_of(const SampleSet& s, double q);

struct BlochGrid {
    int depth = 30;
    int angular_nodes = 256;
};

/// |f(0)| + max over radii 1 - 2^{-j} (and 0) of (1 - |z|^2)|f'(z)|.
double bloch_seminorm(const SampledFunction& f, const BlochGrid& grid = {});

}  // namespace shimorin
