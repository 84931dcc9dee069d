#include "shimorin/diskquad.hpp"

#include "shimorin/errors.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace shimorin {

namespace {

void add_gauss_panels(const std::vector<double>& edges, int order, std::vector<double>& nodes,
                      std::vector<double>& weights) {
    const GaussRule& gl = gauss_legendre(order);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        double a = edges[k], b = edges[k + 1];
        if (!(b > a)) continue;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < order; ++i) {
            nodes.push_back(mid + half * gl.nodes[i]);
            weights.push_back(half * gl.weights[i]);
        }
    }
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }), v.end());
    return v;
}

std::string where(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

}  // namespace

void radial_rule(const DiskRuleParams& p, std::vector<double>& rho, std::vector<double>& weights) {
    if (p.radial_depth < 1 || p.order < 1 || !(p.grading > 0.0 && p.grading < 1.0))
        throw ConfigError("disk rule: invalid radial parameters");
    std::vector<double> edges{0.0, 1.0};
    double g = 1.0;
    for (int j = 1; j <= p.radial_depth; ++j) {
        g *= p.grading;
        edges.push_back(1.0 - g);
    }
    for (double b : p.radial_breaks)
        if (b > 0.0 && b < 1.0) edges.push_back(b);
    edges = sorted_unique(edges);
    rho.clear();
    weights.clear();
    add_gauss_panels(edges, p.order, rho, weights);
    for (std::size_t i = 0; i < rho.size(); ++i) weights[i] *= 2.0 * rho[i];
}

DiskRule::DiskRule(DiskRuleParams params) : params_(std::move(params)) {
    radial_rule(params_, rho_, rho_w_);
    bool graded = !params_.angular_breaks.empty() || !std::isnan(params_.angular_focus);
    if (!graded) {
        if (params_.angular_nodes < 1) throw ConfigError("disk rule: angular_nodes must be >= 1");
        int M = params_.angular_nodes;
        for (int j = 0; j < M; ++j) {
            theta_.push_back(2.0 * kPi * j / M - kPi);
            theta_w_.push_back(1.0 / M);
        }
        return;
    }
    double c = std::isnan(params_.angular_focus) ? 0.0 : params_.angular_focus;
    std::vector<double> edges;
    int base = std::max(1, params_.angular_nodes / std::max(1, params_.order));
    for (int k = 0; k <= base; ++k) edges.push_back(c - kPi + 2.0 * kPi * k / base);
    if (!std::isnan(params_.angular_focus)) {
        double w = kPi / base;
        edges.push_back(c);
        for (int k = 0; k <= params_.angular_depth; ++k) {
            edges.push_back(c + w);
            edges.push_back(c - w);
            w *= 0.5;
        }
    }
    for (double b : params_.angular_breaks) {
        double x = b;
        while (x < c - kPi) x += 2.0 * kPi;
        while (x > c + kPi) x -= 2.0 * kPi;
        edges.push_back(x);
    }
    edges = sorted_unique(edges);
    add_gauss_panels(edges, params_.order, theta_, theta_w_);
    for (double& w : theta_w_) w /= 2.0 * kPi;
}

DiskRule DiskRule::refine() const {
    DiskRuleParams p = params_;
    p.radial_depth += 5;
    p.order += 4;
    p.angular_nodes *= 2;
    if (p.angular_depth > 0) p.angular_depth += 3;
    return DiskRule(p);
}

DiskRule DiskRule::deepen(int extra) const {
    DiskRuleParams p = params_;
    p.radial_depth += extra;
    return DiskRule(p);
}

double DiskRule::weight_sum() const {
    return pairwise_sum(rho_w_) * pairwise_sum(theta_w_);
}

namespace {

const DiskRule& effective(const SampledFunction& f, const DiskRule& rule, std::optional<DiskRule>& storage) {
    if (f.hint != Smoothness::boundary_singular) return rule;
    return storage.emplace(rule.deepen(10));
}

}  // namespace

cplx integrate(const SampledFunction& f, const DiskRule& base) {
    std::optional<DiskRule> storage;
    const DiskRule& rule = effective(f, base, storage);
    const auto& rho = rule.rho();
    const auto& th = rule.theta();
    std::vector<cplx> rows(rho.size());
    parallel_for(rho.size(), [&](std::size_t i) {
        std::vector<cplx> row(th.size());
        for (std::size_t j = 0; j < th.size(); ++j) {
            cplx z = std::polar(rho[i], th[j]);
            cplx v = f.f(z);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw QuadratureError("integrate: nonfinite sample at z = " + where(z));
            row[j] = v * rule.theta_weights()[j];
        }
        rows[i] = pairwise_sum(std::span<const cplx>(row)) * rule.rho_weights()[i];
    });
    return pairwise_sum(std::span<const cplx>(rows));
}

SampleSet sample_abs(const SampledFunction& f, const DiskRule& base) {
    std::optional<DiskRule> storage;
    const DiskRule& rule = effective(f, base, storage);
    const auto& rho = rule.rho();
    const auto& th = rule.theta();
    SampleSet s;
    s.values.resize(rule.size());
    s.weights.resize(rule.size());
    parallel_for(rho.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < th.size(); ++j) {
            cplx z = std::polar(rho[i], th[j]);
            cplx v = f.f(z);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw QuadratureError("sample: nonfinite sample at z = " + where(z));
            s.values[i * th.size() + j] = std::abs(v);
            s.weights[i * th.size() + j] = rule.rho_weights()[i] * rule.theta_weights()[j];
        }
    });
    return s;
}

double lp_norm(const SampledFunction& f, double p, const DiskRule& rule) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    SampleSet s = sample_abs(f, rule);
    std::vector<double> terms(s.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = s.weights[i] * std::pow(s.values[i], p);
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

double distribution_function(const SampledFunction& f, double tau, const DiskRule& rule) {
    if (!(tau >= 0.0)) throw DomainError("distribution_function: tau must be >= 0");
    SampleSet s = sample_abs(f, rule);
    std::vector<double> terms(s.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = s.values[i] > tau ? s.weights[i] : 0.0;
    return pairwise_sum(terms);
}

double weak_norm_of(const SampleSet& s, double q) {
    if (!(q >= 1.0)) throw DomainError("weak_norm: q must be >= 1");
    std::vector<std::size_t> idx(s.values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.values[a] > s.values[b]; });
    double best = 0.0;
    CompensatedSum w;
    for (std::size_t k = 0; k < idx.size();) {
        double v = s.values[idx[k]];
        while (k < idx.size() && s.values[idx[k]] == v) w.add(s.weights[idx[k++]]);
        if (v > 0.0) best = std::max(best, v * std::pow(w.value(), 1.0 / q));
    }
    return best;
}

double weak_norm(const SampledFunction& f, double q, const DiskRule& rule) {
    return weak_norm_of(sample_abs(f, rule), q);
}

double weak_norm_grid(const SampledFunction& f, double q, const DiskRule& rule, int points) {
    if (!(q >= 1.0)) throw DomainError("weak_norm: q must be >= 1");
    SampleSet s = sample_abs(f, rule);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double v : s.values)
        if (v > 0.0) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi == 0.0) return 0.0;
    // tau slightly below each grid value so two-valued functions are caught.
    double best = 0.0;
    for (int k = 0; k < points; ++k) {
        double frac = points == 1 ? 1.0 : static_cast<double>(k) / (points - 1);
        double tau = lo * std::pow(hi / lo, frac) * (1.0 - 1e-12);
        double d = 0.0;
        for (std::size_t i = 0; i < s.values.size(); ++i)
            if (s.values[i] > tau) d += s.weights[i];
        best = std::max(best, tau * std::pow(d, 1.0 / q));
    }
    return best;
}

double bloch_seminorm(const SampledFunction& f, const BlochGrid& grid) {
    if (!f.df) throw DomainError("bloch_seminorm: derivative callback required");
    double best = std::abs(f.df(0.0));
    std::vector<double> radii;
    for (int j = 1; j <= grid.depth; ++j) radii.push_back(1.0 - std::exp2(-j));
    std::vector<double> slot(radii.size(), 0.0);
    parallel_for(radii.size(), [&](std::size_t i) {
        double r = radii[i];
        double w = (1.0 - r) * (1.0 + r);
        for (int k = 0; k < grid.angular_nodes; ++k) {
            cplx z = std::polar(r, 2.0 * kPi * k / grid.angular_nodes);
            slot[i] = std::max(slot[i], w * std::abs(f.df(z)));
        }
    });
    for (double v : slot) best = std::max(best, v);
    return std::abs(f.f(0.0)) + best;
}

}  // namespace shimorin
