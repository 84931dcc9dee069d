#pragma once

// Graded Gauss-Legendre integration against the density part of a radial
// measure. Integrands are supplied as g(r, u) with u = 1 - r passed exactly so
// callers never form 1 - r by cancellation.

#include "shimorin/measure.hpp"
#include "shimorin/numeric.hpp"

#include <cmath>

namespace shimorin::radial {

struct Options {
    int order = 16;
    /// Geometric levels below the anchor before the endpoint transform.
    int extra_levels = 12;
};

/// Integral over [0, L] of x^gamma f(x). Panels are dyadic and aligned on
/// `anchor`, so a kink of f at the anchor falls on a panel edge. Below `h` the
/// substitution x = b y^{1/(gamma+1)} absorbs the endpoint power exactly. A
/// positive `cut` replaces the lower limit 0 by `cut`.
template <class T, class F>
T graded_power(double L, double gamma, double anchor, double h, int order, F&& f, double cut = 0.0) {
    const GaussRule& gl = gauss_legendre(order);
    auto panel = [&](double a, double b) {
        T s{};
        double mid = 0.5 * (a + b);
        double half = 0.5 * (b - a);
        for (int i = 0; i < order; ++i) {
            double x = mid + half * gl.nodes[i];
            s += (gl.weights[i] * std::pow(x, gamma)) * f(x);
        }
        return s * half;
    };
    T total{};
    double stop = cut > 0.0 ? cut : h;
    double b = L;
    double a = anchor * std::exp2(std::floor(std::log2(L / anchor)));
    if (a >= L * (1.0 - 1e-12)) a *= 0.5;
    while (a > stop) {
        total += panel(a, b);
        b = a;
        a *= 0.5;
    }
    if (cut > 0.0) {
        if (b > cut) total += panel(cut, b);
        return total;
    }
    // innermost [0, b]
    double e = gamma + 1.0;
    double scale = std::pow(b, e) / e;
    T s{};
    for (int i = 0; i < order; ++i) {
        double y = 0.5 * (1.0 + gl.nodes[i]);
        double x = b * std::pow(y, 1.0 / e);
        s += (0.5 * gl.weights[i]) * f(x);
    }
    return total + s * scale;
}

/// Plain composite Gauss-Legendre over [a, b] split into `pieces` panels.
template <class T, class F>
T composite(double a, double b, int pieces, int order, F&& f) {
    const GaussRule& gl = gauss_legendre(order);
    T total{};
    double w = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
        double lo = a + p * w;
        double mid = lo + 0.5 * w;
        T s{};
        for (int i = 0; i < order; ++i) s += gl.weights[i] * f(mid + 0.5 * w * gl.nodes[i]);
        total += s * (0.5 * w);
    }
    return total;
}

inline double nu_alpha_normalizer(double alpha) {
    return kPi / std::sin(kPi * (alpha - 1.0));
}

/// Integral of u^e g(r, u) against one density component. `anchor` is the
/// scale in u on which g varies; `cut` > 0 truncates the domain to u >= cut.
template <class T, class G>
T integrate_density(const Density& d, double e, double anchor, G&& g, const Options& opt = {},
                    double cut = 0.0) {
    anchor = std::min(anchor, 0.5);
    double h = anchor * std::exp2(-opt.extra_levels);
    switch (d.kind) {
        case DensityKind::power: {
            auto right = [&](double u) { return g(1.0 - u, u); };
            T near = graded_power<T>(0.5, d.beta + e, anchor, h, opt.order, right, cut);
            T far = composite<T>(0.5, 1.0, 2, opt.order, [&](double u) {
                return std::pow(u, d.beta + e) * g(1.0 - u, u);
            });
            return d.kappa * (near + far);
        }
        case DensityKind::nu_alpha: {
            double a = d.alpha;
            auto right = [&](double u) { return std::pow(1.0 - u, a - 2.0) * g(1.0 - u, u); };
            T near = graded_power<T>(0.5, 1.0 - a + e, anchor, h, opt.order, right, cut);
            auto left = [&](double r) { return std::pow(1.0 - r, 1.0 - a + e) * g(r, 1.0 - r); };
            T far = graded_power<T>(0.5, a - 2.0, 0.5, std::exp2(-opt.extra_levels - 1), opt.order, left);
            return (near + far) / nu_alpha_normalizer(a);
        }
        case DensityKind::tabulated: {
            auto right = [&](double u) { return d(1.0 - u) * g(1.0 - u, u); };
            T near = graded_power<T>(0.5, e, anchor, h, opt.order, right, cut);
            T far{};
            std::vector<double> breaks{0.0};
            for (double r : d.r)
                if (r > 0.0 && r < 0.5) breaks.push_back(r);
            breaks.push_back(0.5);
            for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
                far += composite<T>(breaks[i], breaks[i + 1], 1, opt.order, [&](double r) {
                    return d(r) * std::pow(1.0 - r, e) * g(r, 1.0 - r);
                });
            }
            return near + far;
        }
    }
    return T{};
}

/// Sum of integrate_density over every density component of mu.
template <class T, class G>
T integrate_densities(const RadialMeasure& mu, double e, double anchor, G&& g, const Options& opt = {},
                      double cut = 0.0) {
    T total{};
    for (const Density& d : mu.densities()) total += integrate_density<T>(d, e, anchor, g, opt, cut);
    return total;
}

}  // namespace shimorin::radial
