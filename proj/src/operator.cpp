#include "shimorin/operator.hpp"

#include "shimorin/errors.hpp"
#include "shimorin/kernel.hpp"
#include "shimorin/radial_quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace shimorin {

TaylorFunction apply_multiplier(const MultiplierSequence& m, const TaylorFunction& f) {
    if (m.size() < f.coeffs.size()) throw DomainError("apply_multiplier: multiplier prefix shorter than f");
    TaylorFunction out;
    out.coeffs.resize(f.coeffs.size());
    for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
        if (!std::isfinite(f.coeffs[n].real()) || !std::isfinite(f.coeffs[n].imag()))
            throw DomainError("apply_multiplier: non-finite coefficient");
        out.coeffs[n] = m[n] * f.coeffs[n];
    }
    return out;
}

TaylorFunction apply_multiplier(const RadialMeasure& mu, const TaylorFunction& f) {
    if (f.coeffs.empty()) return {};
    return apply_multiplier(moment_prefix(mu, static_cast<long>(f.truncation())), f);
}

cplx apply_quadrature(const RadialMeasure& mu, const SampledFunction& f, cplx z, const DiskRule& rule) {
    SampledFunction g;
    g.hint = f.hint;
    g.singular_order = f.singular_order;
    g.f = [&](cplx l) { return kernel_eval(mu, z, l) * f.f(l); };
    return integrate(g, rule);
}

cplx apply_radial(const RadialMeasure& mu, const std::function<cplx(cplx)>& f, cplx z) {
    if (mu.has_atom_at_one()) throw HypothesisError("apply_radial: requires nu({1}) = 0");
    if (!(std::abs(z) < 1.0)) throw DomainError("apply_radial: z must lie in the open unit disk");
    const double scale = std::max(1.0 - std::abs(z), 1e-300);
    const int order = 16;
    // Mean of f((1-s) z) over s in [0, u].
    auto inner = [&](double u) -> cplx {
        if (u == 0.0) return f(z);
        double anchor = std::min(scale, u);
        auto g = [&](double s) { return f((1.0 - s) * z); };
        return radial::graded_power<cplx>(u, 0.0, anchor, anchor, order, g) / u;
    };
    cplx s = 0.0;
    for (const Atom& a : mu.atoms()) s += a.mass * inner(1.0 - a.x);
    s += radial::integrate_densities<cplx>(mu, 0.0, scale, [&](double, double u) { return inner(u); });
    return s;
}

long analytic_truncation(double coeff_bound, double R, double rho, double tol) {
    if (!(R > rho) || !(rho >= 0.0)) throw DomainError("analytic_truncation: needs 0 <= rho < R");
    if (rho == 0.0) return 0;
    double q = rho / R;
    double n = std::log(tol / coeff_bound) / std::log(q);
    return std::max(0L, static_cast<long>(std::ceil(n)));
}

MembershipResult bergman_membership(const std::vector<double>& a, double p) {
    if (!(p > 1.0)) throw DomainError("bergman_membership: p must exceed 1");
    for (double v : a)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("bergman_membership: coefficients must be finite and >= 0");
    MembershipResult out;
    bool up = true, down = true;
    for (std::size_t n = 1; n < a.size(); ++n) {
        if (a[n] < a[n - 1]) up = false;
        if (a[n] > a[n - 1]) down = false;
    }
    if (up || down) {
        out.hypothesis = "monotone";
    } else {
        for (std::size_t lo = 1; lo < a.size(); lo *= 2) {
            std::size_t hi = std::min(2 * lo, a.size());
            auto [mn, mx] = std::minmax_element(a.begin() + lo, a.begin() + hi);
            if (*mx > kBlockComparability * *mn)
                throw HypothesisError("bergman_membership: coefficients neither monotone nor comparable on block [" +
                                      std::to_string(lo) + ", " + std::to_string(2 * lo) + ")");
        }
        out.hypothesis = "block";
    }
    std::vector<double> terms(a.size());
    CompensatedSum total;
    for (std::size_t n = 0; n < a.size(); ++n) {
        terms[n] = std::pow(n + 1.0, p - 3.0) * std::pow(a[n], p);
        total.add(terms[n]);
    }
    out.partial_sum = total.value();
    out.block_sums = verdict::dyadic_block_sums(terms);
    out.verdict = verdict::from_blocks(out.block_sums, out.partial_sum);
    return out;
}

MembershipResult bergman_membership(const std::function<double(long)>& a, double p, long N) {
    if (N < 7) throw DomainError("bergman_membership: N too small for a block verdict");
    std::vector<double> v(N + 1);
    for (long n = 0; n <= N; ++n) v[n] = a(n);
    return bergman_membership(v, p);
}

}  // namespace shimorin
