#include "shimorin/multiplier.hpp"

#include "shimorin/errors.hpp"
#include "shimorin/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shimorin {

namespace {

constexpr long kAtomSumLimit = 1000;
constexpr long kPolynomialLimit = 32;

double atom_moment(const Atom& a, long n) {
    if (a.x == 1.0) return a.mass;
    if (n < kAtomSumLimit) {
        double s = 0.0;
        double p = 1.0;
        for (long k = 0; k <= n; ++k) {
            s += p;
            p *= a.x;
        }
        return a.mass * s / static_cast<double>(n + 1);
    }
    double u = 1.0 - a.x;
    return a.mass * -std::expm1((n + 1) * std::log1p(-u)) / (u * static_cast<double>(n + 1));
}

double density_moment(const RadialMeasure& mu, long n, const radial::Options& q) {
    const double np1 = static_cast<double>(n + 1);
    if (n < kPolynomialLimit) {
        return radial::integrate_densities<double>(mu, 0.0, 1.0 / np1, [n, np1](double r, double) {
            double s = 0.0;
            for (long k = 0; k <= n; ++k) s = s * r + 1.0;
            return s / np1;
        }, q);
    }
    return radial::integrate_densities<double>(mu, 0.0, 1.0 / np1, [np1](double, double u) {
        return -std::expm1(np1 * std::log1p(-u)) / (u * np1);
    }, q);
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y, double* intercept = nullptr) {
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double b = sxx > 0.0 ? sxy / sxx : 0.0;
    if (intercept) *intercept = my - b * mx;
    return b;
}

}  // namespace

double moment(const RadialMeasure& mu, long n, const MomentOptions& opt) {
    if (n < 0) throw DomainError("moment: n must be >= 0");
    double atoms = 0.0;
    for (const Atom& a : mu.atoms()) atoms += atom_moment(a, n);
    if (mu.densities().empty()) return atoms;
    double dens = density_moment(mu, n, opt.quad);
    if (opt.verify) {
        radial::Options coarse{opt.quad.order - 4, opt.quad.extra_levels - 4};
        double check = density_moment(mu, n, coarse);
        if (!(std::abs(check - dens) <= opt.tolerance * std::abs(dens)))
            throw QuadratureError("moment: quadrature did not converge at n = " + std::to_string(n));
    }
    return atoms + dens;
}

std::vector<double> power_moments(const RadialMeasure& mu, long N) {
    if (N < 0) throw DomainError("power_moments: N must be >= 0");
    std::vector<double> mom(static_cast<std::size_t>(N) + 1, 0.0);
    for (const Atom& a : mu.atoms()) {
        double p = a.mass;
        for (long k = 0; k <= N; ++k) {
            mom[k] += p;
            p *= a.x;
        }
    }
    for (const Density& d : mu.densities()) {
        switch (d.kind) {
            case DensityKind::power: {
                double m = d.kappa / (d.beta + 1.0);
                for (long k = 0; k <= N; ++k) {
                    mom[k] += m;
                    m *= (k + 1.0) / (k + d.beta + 2.0);
                }
                break;
            }
            case DensityKind::nu_alpha: {
                double m = 1.0;
                for (long k = 0; k <= N; ++k) {
                    mom[k] += m;
                    m *= (k + d.alpha - 1.0) / (k + 1.0);
                }
                break;
            }
            case DensityKind::tabulated: {
                for (std::size_t i = 0; i + 1 < d.r.size(); ++i) {
                    double a = d.r[i], b = d.r[i + 1];
                    double slope = (d.values[i + 1] - d.values[i]) / (b - a);
                    double c0 = d.values[i] - slope * a;
                    double pa = a, pb = b;  // r^{k+1}
                    double pa2 = a * a, pb2 = b * b;  // r^{k+2}
                    for (long k = 0; k <= N; ++k) {
                        mom[k] += c0 * (pb - pa) / (k + 1.0) + slope * (pb2 - pa2) / (k + 2.0);
                        pa *= a;
                        pb *= b;
                        pa2 *= a;
                        pb2 *= b;
                    }
                }
                break;
            }
        }
    }
    return mom;
}

MultiplierSequence moment_prefix(const RadialMeasure& mu, long N) {
    std::vector<double> mom = power_moments(mu, N);
    MultiplierSequence seq;
    seq.measure_id = mu.id();
    seq.route = "power-moment recurrence";
    seq.quadrature_budget = 1e-13;
    seq.values.resize(mom.size());
    CompensatedSum s;
    for (std::size_t n = 0; n < mom.size(); ++n) {
        s.add(mom[n]);
        seq.values[n] = s.value() / static_cast<double>(n + 1);
    }
    for (std::size_t n = 0; n + 1 < seq.values.size(); ++n) {
        if (seq.values[n + 1] > seq.values[n] * (1.0 + 1e-13))
            throw BoundViolation("multiplier sequence increases at n = " + std::to_string(n));
        seq.values[n + 1] = std::min(seq.values[n + 1], seq.values[n]);
    }
    return seq;
}

Envelope claim1_envelope(const RadialMeasure& mu, long n) {
    if (n < 0) throw DomainError("claim1_envelope: n must be >= 0");
    const double np1 = static_cast<double>(n + 1);
    const double T = 1.0 / np1;
    double I = 0.0;
    for (const Atom& a : mu.atoms()) {
        double t = 1.0 - a.x;
        I += a.mass * (t <= T ? 1.0 : T / t);
    }
    for (const Density& d : mu.densities()) {
        if (d.kind == DensityKind::power) {
            double head = d.kappa * std::pow(T, d.beta + 1.0) / (d.beta + 1.0);
            double tail = d.beta == 0.0 ? d.kappa * std::log(np1) / np1
                                        : d.kappa * (1.0 - std::pow(T, d.beta)) / (d.beta * np1);
            I += head + tail;
        } else {
            I += radial::integrate_density<double>(d, 0.0, T, [T](double, double u) { return u <= T ? 1.0 : T / u; });
        }
    }
    return {(1.0 - std::exp(-1.0)) * I, I};
}

Envelope claim1_envelope_quadrature(const RadialMeasure& mu, long n) {
    const double T = 1.0 / static_cast<double>(n + 1);
    double I = 0.0;
    for (const Atom& a : mu.atoms()) {
        double t = 1.0 - a.x;
        I += a.mass * (t <= T ? 1.0 : T / t);
    }
    I += radial::integrate_densities<double>(mu, 0.0, T, [T](double, double u) { return u <= T ? 1.0 : T / u; });
    return {(1.0 - std::exp(-1.0)) * I, I};
}

double envelope_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double a = 0.0;
    double b = ols_slope(x, y, &a);
    std::vector<double> res(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) res[i] = y[i] - (a + b * x[i]);
    std::vector<double> sorted = res;
    std::sort(sorted.begin(), sorted.end());
    std::size_t keep = std::max<std::size_t>(3, x.size() / 4);
    double cut = sorted[sorted.size() - keep];
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (res[i] >= cut) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    // Points on the fitted line tie; the top quartile then spans the window.
    if (xs.size() < 2 || xs.front() == xs.back()) return b;
    return ols_slope(xs, ys);
}

DecayEstimate decay_exponent_estimate(const RadialMeasure& mu, long N) {
    if (N < 1000) throw DomainError("decay_exponent_estimate: N must be >= 1000");
    std::vector<long> grid;
    for (int j = 0;; ++j) {
        long n = static_cast<long>(std::floor(std::pow(1.25, j)));
        if (n > N) break;
        if (grid.empty() || grid.back() != n) grid.push_back(n);
    }
    if (grid.back() != N) grid.push_back(N);
    const double start = std::sqrt(static_cast<double>(N));
    std::vector<double> x, y;
    for (long n : grid) {
        if (n < start) continue;
        x.push_back(std::log(n + 1.0));
        y.push_back(std::log(moment(mu, n)));
    }
    DecayEstimate est;
    est.points = x.size();
    est.slope = envelope_slope(x, y);
    std::size_t h = x.size() / 2;
    std::vector<double> x1(x.begin(), x.begin() + h), y1(y.begin(), y.begin() + h);
    std::vector<double> x2(x.begin() + h, x.end()), y2(y.begin() + h, y.end());
    est.first_half_slope = envelope_slope(x1, y1);
    est.second_half_slope = envelope_slope(x2, y2);
    est.unstable = std::abs(est.first_half_slope - est.second_half_slope) > 0.1;
    return est;
}

SeriesResult series_partial(const RadialMeasure& mu, double s, long N) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("series_partial: s must lie in (0,1)");
    if (N < 1000) throw DomainError("series_partial: N must be >= 1000");
    MultiplierSequence m = moment_prefix(mu, N);
    std::vector<double> terms(m.size());
    CompensatedSum total;
    for (std::size_t n = 0; n < m.size(); ++n) {
        terms[n] = m[n] * std::pow(n + 1.0, s - 1.0);
        total.add(terms[n]);
    }
    SeriesResult out;
    out.partial_sum = total.value();
    out.block_sums = verdict::dyadic_block_sums(terms);
    out.verdict = verdict::from_blocks(out.block_sums, out.partial_sum);
    return out;
}

std::vector<long> empirical_subsequence(const MultiplierSequence& m, double s0, double eps) {
    std::vector<long> out;
    for (std::size_t n = 0; n < m.size(); ++n)
        if (m[n] >= std::pow(n + 1.0, -s0 - eps)) out.push_back(static_cast<long>(n));
    return out;
}

}  // namespace shimorin
