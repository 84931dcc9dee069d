#include "shimorin/testfns.hpp"

#include "shimorin/errors.hpp"
#include "shimorin/operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace shimorin {

bool BoundaryBox::contains(cplx z) const {
    double r = std::abs(z);
    return r >= rho_lo() && r <= rho_hi() && std::abs(std::arg(z)) <= theta_half();
}

double BoundaryBox::area() const { return t * t * (1.0 - 0.75 * t) / (20.0 * kPi); }

BoundaryBox box(double t) {
    if (!(t > 0.0 && t <= 0.5)) throw DomainError("box: t must lie in (0, 1/2]");
    return {t, t == 0.5};
}

DiskRule box_rule(const BoundaryBox& b, DiskRuleParams base) {
    base.radial_breaks.push_back(b.rho_lo());
    base.radial_breaks.push_back(b.rho_hi());
    base.angular_breaks.push_back(-b.theta_half());
    base.angular_breaks.push_back(b.theta_half());
    return DiskRule(base);
}

BoxNodes box_nodes(const BoundaryBox& b, int order) {
    const GaussRule& gl = gauss_legendre(order);
    BoxNodes out;
    double rm = 0.5 * (b.rho_lo() + b.rho_hi()), rh = 0.5 * (b.rho_hi() - b.rho_lo());
    double th = b.theta_half();
    for (int i = 0; i < order; ++i) {
        double rho = rm + rh * gl.nodes[i];
        for (int j = 0; j < order; ++j) {
            double theta = th * gl.nodes[j];
            out.z.push_back(std::polar(rho, theta));
            out.w.push_back(gl.weights[i] * rh * gl.weights[j] * th * rho / kPi);
        }
    }
    return out;
}

SampledFunction indicator_testfn(double t) {
    BoundaryBox b = box(t);
    SampledFunction f;
    f.f = [b](cplx z) { return cplx(b.contains(z) ? 1.0 : 0.0); };
    return f;
}

cplx default_point(double t) { return std::sqrt(1.0 - t); }

SampledFunction aligned_testfn(const RadialMeasure& mu, double t, cplx z_t) {
    BoundaryBox b = box(t);
    if (!b.contains(z_t)) throw DomainError("aligned_testfn: z_t must lie in the box");
    for (cplx l : box_nodes(b, 8).z)
        if (!(std::abs(kernel_eval(mu, z_t, l)) > 0.0)) throw HypothesisError("aligned_testfn: kernel vanishes on the box");
    SampledFunction f;
    f.f = [mu, b, z_t](cplx l) -> cplx {
        if (!b.contains(l)) return 0.0;
        cplx k = kernel_eval(mu, z_t, l);
        double a = std::abs(k);
        if (!(a > 0.0)) throw HypothesisError("aligned_testfn: kernel vanishes on the box");
        return std::conj(k) / a;
    };
    return f;
}

std::vector<cplx> indicator_coefficients(const BoundaryBox& b, long N) {
    std::vector<cplx> c(N + 1);
    const double l1 = std::log(b.rho_lo()), l2 = std::log(b.rho_hi());
    const double th = b.theta_half();
    for (long n = 0; n <= N; ++n) {
        double k = n + 2.0;
        double radial = std::exp(k * l2) * -std::expm1(k * (l1 - l2)) / k;
        double angular = n == 0 ? 2.0 * th : 2.0 * std::sin(n * th) / n;
        c[n] = radial * angular / kPi;
    }
    return c;
}

std::vector<cplx> aligned_coefficients(const RadialMeasure& mu, const BoundaryBox& b, cplx z_t, long N) {
    BoxNodes nodes = box_nodes(b);
    std::size_t K = nodes.z.size();
    std::vector<cplx> fw(K);
    parallel_for(K, [&](std::size_t i) {
        cplx k = kernel_eval(mu, z_t, nodes.z[i]);
        double a = std::abs(k);
        if (!(a > 0.0)) throw HypothesisError("aligned_coefficients: kernel vanishes on the box");
        fw[i] = nodes.w[i] * std::conj(k) / a;
    });
    std::vector<cplx> c(N + 1);
    // Each worker owns a contiguous range of n; powers restart per range.
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(worker_count() * 4, N + 1));
    parallel_for(chunks, [&](std::size_t ch) {
        long lo = static_cast<long>((N + 1) * ch / chunks), hi = static_cast<long>((N + 1) * (ch + 1) / chunks);
        for (std::size_t i = 0; i < K; ++i) {
            cplx lb = std::conj(nodes.z[i]);
            cplx pw = std::pow(std::abs(lb), static_cast<double>(lo)) * std::polar(1.0, std::arg(lb) * lo);
            for (long n = lo; n < hi; ++n) {
                c[n] += fw[i] * pw;
                pw *= lb;
            }
        }
    });
    return c;
}

TaylorFunction image_from_moments(const MultiplierSequence& m, const std::vector<cplx>& c) {
    if (m.size() < c.size()) throw DomainError("image_from_moments: multiplier prefix too short");
    TaylorFunction f;
    f.coeffs.resize(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) f.coeffs[n] = (n + 1.0) * m[n] * c[n];
    return f;
}

long box_series_length(double t) { return static_cast<long>(std::ceil(37.0 / -std::log1p(-0.5 * t))) + 16; }

TaylorFunction power_testfn(double t_exp, long N) {
    if (N < 0) throw DomainError("power_testfn: N must be >= 0");
    TaylorFunction f;
    f.coeffs.resize(N + 1);
    for (long n = 0; n <= N; ++n) f.coeffs[n] = std::pow(n + 1.0, t_exp);
    return f;
}

TaylorFunction block_testfn(const MultiplierSequence& m, double t_exp, long N) {
    if (static_cast<long>(m.size()) <= N) throw DomainError("block_testfn: multiplier prefix too short");
    TaylorFunction f;
    f.coeffs.resize(N + 1);
    f.coeffs[0] = 1.0;
    for (long lo = 1; lo <= N; lo *= 2)
        for (long n = lo; n < 2 * lo && n <= N; ++n) f.coeffs[n] = m[lo] / m[n] * std::pow(n + 1.0, t_exp);
    return f;
}

TaylorFunction block_testfn(const RadialMeasure& mu, double t_exp, long N) {
    return block_testfn(moment_prefix(mu, N), t_exp, N);
}

double block_ratio_max(const TaylorFunction& f) {
    double worst = 1.0;
    std::size_t size = f.coeffs.size();
    for (std::size_t lo = 1; lo < size; lo *= 2) {
        double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
        for (std::size_t n = lo; n < 2 * lo && n < size; ++n) {
            mn = std::min(mn, std::abs(f.coeffs[n]));
            mx = std::max(mx, std::abs(f.coeffs[n]));
        }
        worst = std::max(worst, mx / mn);
    }
    return worst;
}

std::vector<KernelBoundReport> realpart_bounds_check(const std::vector<double>& ts, std::size_t samples_per_t,
                                                     std::uint64_t seed) {
    std::vector<KernelBoundReport> reps(6);
    reps[0].bound_name = "Re[1/((1-w)(1-rw))] >= c0/(t((1-r)+t))";
    reps[1].bound_name = "Re[1/((1-w)(1-rw))] >= c0/(2t^2), r in [1-t,1]";
    reps[2].bound_name = "Re[conj(l)/((1-w)^2(1-rw))] >= c0~/(t^2((1-r)+t))";
    reps[3].bound_name = "Re[conj(l)/((1-w)^2(1-rw))] >= c0~/(2t^3), r in [1-t,1]";
    reps[4].bound_name = "Re[conj(l)/((1-w)(1-rw)^2)] >= c0~/(t((1-r)+t)^2)";
    reps[5].bound_name = "Re[conj(l)/((1-w)(1-rw)^2)] >= c0~/(4t^3), r in [1-t,1]";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double t : ts) {
        if (!(t > 0.0 && t < 0.5)) throw DomainError("realpart_bounds_check: t must lie in (0, 1/2)");
        BoundaryBox b = box(t);
        auto point = [&](std::size_t i) {
            // The first samples pin box corners; the rest are uniform in (rho, theta).
            double u = unit(rng), v = unit(rng);
            if (i < 16) {
                u = (i & 1) ? 1.0 : 0.0;
                v = (i & 2) ? 1.0 : 0.0;
            }
            double rho = b.rho_lo() + u * (b.rho_hi() - b.rho_lo());
            return std::polar(rho, b.theta_half() * (2.0 * v - 1.0));
        };
        for (std::size_t i = 0; i < samples_per_t; ++i) {
            cplx z = point(i), l = point(i >> 2);
            if (i >= 16) l = point(i);
            bool near = unit(rng) < 0.5;
            double r = near ? 1.0 - t * unit(rng) : unit(rng);
            if (i % 50 == 0) r = near ? 1.0 : 0.0;
            double u = 1.0 - r;
            cplx lb = std::conj(l);
            cplx w = z * lb;
            cplx a = 1.0 - w, br = 1.0 - r * w;
            double k0 = (1.0 / (a * br)).real();
            double k1 = (lb / (a * a * br)).real();
            double k2 = (lb / (a * br * br)).real();
            reps[0].record(kC0 / (t * (u + t)), k0, z, l, r);
            reps[2].record(kC0Tilde / (t * t * (u + t)), k1, z, l, r);
            reps[4].record(kC0Tilde / (t * (u + t) * (u + t)), k2, z, l, r);
            if (u <= t) {
                reps[1].record(kC0 / (2.0 * t * t), k0, z, l, r);
                reps[3].record(kC0Tilde / (2.0 * t * t * t), k1, z, l, r);
                reps[5].record(kC0Tilde / (4.0 * t * t * t), k2, z, l, r);
            }
        }
    }
    return reps;
}

std::string to_string(Family f) {
    switch (f) {
        case Family::indicator: return "indicator";
        case Family::aligned: return "aligned";
        case Family::power: return "power";
        case Family::block: return "block";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "indicator") return Family::indicator;
    if (s == "aligned") return Family::aligned;
    if (s == "power") return Family::power;
    if (s == "block") return Family::block;
    throw ConfigError("unknown test-function family: " + s);
}

CircleOptions series_circle_options(double gap, CircleOptions base) {
    int depth = static_cast<int>(std::ceil(std::log2(1.0 / gap))) + 6;
    base.radial.radial_depth = std::max(1, std::min(base.radial.radial_depth, depth));
    return base;
}

namespace {

struct Prepared {
    TaylorFunction f;  // set for power and block
    TaylorFunction Tf;
    double norm_f = 0.0;
    double gap = 1.0;
};

Prepared prepare(const RadialMeasure& mu, const MultiplierSequence* shared, double p, Family family, double param,
                 const RatioOptions& opt) {
    Prepared out;
    auto prefix = [&](long N) {
        if (shared && static_cast<long>(shared->size()) > N) return *shared;
        return moment_prefix(mu, N);
    };
    switch (family) {
        case Family::indicator:
        case Family::aligned: {
            BoundaryBox b = box(param);
            long N = box_series_length(b.t);
            MultiplierSequence m = prefix(N);
            std::vector<cplx> c;
            if (family == Family::indicator) {
                c = indicator_coefficients(b, N);
            } else {
                cplx z_t = std::isnan(opt.z_abs) ? default_point(b.t) : cplx(opt.z_abs);
                if (!b.contains(z_t)) throw DomainError("ratio_experiment: z_t outside the box");
                c = aligned_coefficients(mu, b, z_t, N);
            }
            out.Tf = image_from_moments(m, c);
            out.norm_f = std::pow(b.area(), 1.0 / p);
            out.gap = 0.5 * b.t;
            break;
        }
        case Family::power:
        case Family::block: {
            long N = static_cast<long>(param);
            if (N < 8) throw DomainError("ratio_experiment: N must be >= 8");
            MultiplierSequence m = prefix(N);
            out.f = family == Family::power ? power_testfn(opt.t_exp, N) : block_testfn(m, opt.t_exp, N);
            out.Tf = apply_multiplier(m, out.f);
            out.gap = 1.0 / N;
            out.norm_f = taylor_lp_norm(out.f, p, series_circle_options(out.gap, opt.circle));
            break;
        }
    }
    return out;
}

RatioPoint ratio_with(const RadialMeasure& mu, const MultiplierSequence* shared, double p, double q, Family family,
                      double param, const RatioOptions& opt) {
    if (!(p >= 1.0)) throw DomainError("ratio_experiment: p must be >= 1");
    Prepared pr = prepare(mu, shared, p, family, param, opt);
    RatioPoint pt;
    pt.param = param;
    pt.norm_f = pr.norm_f;
    CircleOptions co = series_circle_options(pr.gap, opt.circle);
    switch (opt.target) {
        case Target::strong: pt.norm_Tf = taylor_norms(pr.Tf, q, co, false).lp; break;
        case Target::weak: pt.norm_Tf = taylor_norms(pr.Tf, q, co, true).weak; break;
        case Target::bloch: pt.norm_Tf = taylor_bloch(pr.Tf, co.radial.radial_depth); break;
    }
    pt.ratio = pt.norm_Tf / pt.norm_f;
    return pt;
}

}  // namespace

RatioPoint ratio_experiment(const RadialMeasure& mu, double p, double q, Family family, double param,
                            const RatioOptions& opt) {
    return ratio_with(mu, nullptr, p, q, family, param, opt);
}

RatioSweep ratio_sweep(const RadialMeasure& mu, double p, double q, Family family, int k_lo, int k_hi,
                       const RatioOptions& opt) {
    if (family != Family::indicator && family != Family::aligned)
        throw DomainError("ratio_sweep: dyadic t sweeps apply to box families");
    if (k_lo < 1 || k_hi < k_lo + 2) throw DomainError("ratio_sweep: needs 1 <= k_lo and at least three steps");
    MultiplierSequence m = moment_prefix(mu, box_series_length(std::exp2(-k_hi)));
    RatioSweep out;
    std::vector<double> ratios;
    for (int k = k_lo; k <= k_hi; ++k) {
        out.points.push_back(ratio_with(mu, &m, p, q, family, std::exp2(-k), opt));
        ratios.push_back(out.points.back().ratio);
    }
    out.verdict = verdict::from_sweep(ratios);
    return out;
}

SubharmonicCheck subharmonic_check(const RadialMeasure& mu, double t, double q, const CircleOptions& opt) {
    BoundaryBox b = box(t);
    long N = box_series_length(t);
    TaylorFunction Tf = image_from_moments(moment_prefix(mu, N), indicator_coefficients(b, N));
    SubharmonicCheck out;
    out.lhs = std::pow(std::abs(Tf(default_point(t))), q);
    double norm = taylor_lp_norm(Tf, q, series_circle_options(0.5 * t, opt));
    out.rhs = 16.0 / (t * t) * std::pow(norm, q);
    return out;
}

}  // namespace shimorin
