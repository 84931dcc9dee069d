#include "shimorin/kernel.hpp"

#include "shimorin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace shimorin {

namespace {

// 1 - |z|^2 without cancellation.
double one_minus_sq(cplx z) {
    double a = std::abs(z);
    return (1.0 - a) * (1.0 + a);
}

cplx one_minus(cplx w) { return {1.0 - w.real(), -w.imag()}; }

// int (1 - r w)^{-1} dnu and, optionally, int r (1 - r w)^{-2} dnu.
cplx resolvent(const RadialMeasure& mu, cplx w, const radial::Options& opt) {
    cplx omw = one_minus(w);
    cplx s = 0.0;
    for (const Atom& a : mu.atoms()) s += a.mass / (a.x == 1.0 ? omw : 1.0 - a.x * w);
    double anchor = std::max(std::abs(omw), 1e-300);
    s += radial::integrate_densities<cplx>(mu, 0.0, anchor, [&](double, double u) { return 1.0 / (omw + u * w); }, opt);
    return s;
}

cplx resolvent_sq(const RadialMeasure& mu, cplx w, const radial::Options& opt) {
    cplx omw = one_minus(w);
    cplx s = 0.0;
    for (const Atom& a : mu.atoms()) {
        cplx d = a.x == 1.0 ? omw : 1.0 - a.x * w;
        s += a.mass * a.x / (d * d);
    }
    double anchor = std::max(std::abs(omw), 1e-300);
    s += radial::integrate_densities<cplx>(mu, 0.0, anchor, [&](double r, double u) {
        cplx d = omw + u * w;
        return r / (d * d);
    }, opt);
    return s;
}

void check_disk(cplx z, const char* who) {
    if (!(std::abs(z) < 1.0)) throw DomainError(std::string(who) + ": point must lie in the open unit disk");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

cplx kernel_eval(const RadialMeasure& mu, cplx z, cplx lambda, const radial::Options& opt) {
    check_disk(z, "kernel_eval");
    check_disk(lambda, "kernel_eval");
    cplx w = z * std::conj(lambda);
    return resolvent(mu, w, opt) / one_minus(w);
}

cplx kernel_eval_dz(const RadialMeasure& mu, cplx z, cplx lambda, const radial::Options& opt) {
    check_disk(z, "kernel_eval_dz");
    check_disk(lambda, "kernel_eval_dz");
    cplx lb = std::conj(lambda);
    cplx w = z * lb;
    cplx omw = one_minus(w);
    return lb / (omw * omw) * resolvent(mu, w, opt) + lb / omw * resolvent_sq(mu, w, opt);
}

cplx kernel_eval_double_integral(const RadialMeasure& mu, cplx z, cplx lambda, const radial::Options& opt) {
    check_disk(z, "kernel_eval_double_integral");
    check_disk(lambda, "kernel_eval_double_integral");
    cplx w = z * std::conj(lambda);
    cplx omw = one_minus(w);
    const double scale = std::max(std::abs(omw), 1e-300);
    // Mean of (1 - t w)^{-2} over t in [1-u, 1], with s = 1 - t.
    auto inner = [&](double u) -> cplx {
        auto f = [&](double s) {
            cplx d = omw + s * w;
            return 1.0 / (d * d);
        };
        if (u == 0.0) return f(0.0);
        double anchor = std::min(scale, u);
        return radial::graded_power<cplx>(u, 0.0, anchor, anchor / 16.0, opt.order, f) / u;
    };
    cplx s = 0.0;
    for (const Atom& a : mu.atoms()) s += a.mass * inner(1.0 - a.x);
    s += radial::integrate_densities<cplx>(mu, 0.0, scale, [&](double, double u) { return inner(u); }, opt);
    return s;
}

DiskRule kernel_rule(cplx z, DiskRuleParams base) {
    double gap = 1.0 - std::abs(z);
    if (std::abs(z) > 0.0) {
        base.angular_focus = std::arg(z);
        base.angular_depth = std::max(base.angular_depth, static_cast<int>(std::ceil(std::log2(1.0 / gap))) + 3);
        base.angular_nodes = std::max(base.angular_nodes, 64);
    }
    return DiskRule(base);
}

double kernel_lp_norm(const RadialMeasure& mu, cplx z, double p, const DiskRule& rule) {
    if (!(p > 1.0)) throw DomainError("kernel_lp_norm: p must exceed 1");
    SampledFunction f;
    f.f = [&](cplx lambda) { return kernel_eval(mu, z, lambda); };
    return lp_norm(f, p, rule);
}

long kernel_series_length(double abs_z) {
    if (abs_z <= 0.0) return 64;
    return static_cast<long>(std::ceil(45.0 / -std::log(abs_z))) + 64;
}

TaylorFunction kernel_series(const MultiplierSequence& m, cplx z) {
    long N = std::min<long>(kernel_series_length(std::abs(z)), static_cast<long>(m.size()) - 1);
    TaylorFunction g;
    g.coeffs.resize(N + 1);
    cplx zb = std::conj(z);
    cplx pw = 1.0;
    for (long n = 0; n <= N; ++n) {
        g.coeffs[n] = (n + 1.0) * m[n] * pw;
        pw *= zb;
    }
    return g;
}

double kernel_lp_norm_series(const MultiplierSequence& m, cplx z, double p, const CircleOptions& base) {
    if (!(p > 1.0)) throw DomainError("kernel_lp_norm_series: p must exceed 1");
    check_disk(z, "kernel_lp_norm_series");
    if (static_cast<long>(m.size()) - 1 < kernel_series_length(std::abs(z)))
        throw DomainError("kernel_lp_norm_series: multiplier prefix too short for |z|");
    CircleOptions opt = base;
    double gap = 1.0 - std::abs(z);
    // The series is analytic past the unit circle; grading beyond its own scale buys nothing.
    opt.radial.radial_depth = std::min(opt.radial.radial_depth, static_cast<int>(std::ceil(std::log2(1.0 / gap))) + 6);
    // |K|^p is analytic in a strip as wide as the series' own decay scale, so the
    // trapezoid rule on the circle converges once M exceeds the effective degree.
    opt.oversample = std::min(opt.oversample, 2);
    return taylor_lp_norm(kernel_series(m, z), p, opt);
}

double kernel_lp_norm_series(const RadialMeasure& mu, cplx z, double p, const CircleOptions& opt) {
    return kernel_lp_norm_series(moment_prefix(mu, kernel_series_length(std::abs(z))), z, p, opt);
}

Envelope pnorm_envelope(const RadialMeasure& mu, cplx z, double p) {
    if (mu.has_atom_at_one()) throw HypothesisError("pnorm_envelope: requires nu({1}) = 0");
    if (!(p > 1.0)) throw DomainError("pnorm_envelope: p must exceed 1");
    check_disk(z, "pnorm_envelope");
    const double x = std::norm(z);
    const double A = one_minus_sq(z);
    const double b = 2.0 / p - 1.0;
    auto lower_g = [&](double u) { return 1.0 / (A + u * x); };
    // Mean over t in [r,1] of (1 - t x)^{b-1}, with u = 1 - r.
    auto upper_g = [&](double u) {
        double D = u * x;
        if (D == 0.0) return std::pow(A, b - 1.0);
        double l = std::log1p(D / A);
        if (b == 0.0) return l / D;
        return std::pow(A, b) * std::expm1(b * l) / (b * D);
    };
    double lo = 0.0, up = 0.0;
    for (const Atom& a : mu.atoms()) {
        lo += a.mass * lower_g(1.0 - a.x);
        up += a.mass * upper_g(1.0 - a.x);
    }
    double anchor = std::max(A, 1e-300);
    lo += radial::integrate_densities<double>(mu, 0.0, anchor, [&](double, double u) { return lower_g(u); });
    up += radial::integrate_densities<double>(mu, 0.0, anchor, [&](double, double u) { return upper_g(u); });
    return {std::pow(A, b) * lo, up};
}

DivergibleValue inverse_moment(const RadialMeasure& mu) {
    if (mu.has_atom_at_one()) return DivergibleValue::divergent(1.0);
    double v = 0.0;
    for (const Atom& a : mu.atoms()) v += a.mass / (1.0 - a.x);
    for (const Density& d : mu.densities()) {
        double e = d.boundary_exponent();
        if (e <= 0.0) return DivergibleValue::divergent(-e);
        v += d.kind == DensityKind::tabulated
                 ? radial::integrate_density<double>(d, 0.0, 0.5, [](double, double u) { return 1.0 / u; })
                 : radial::integrate_density<double>(d, -1.0, 0.5, [](double, double) { return 1.0; });
    }
    return DivergibleValue::of(v);
}

CzConstants cz_constants(const RadialMeasure& mu) {
    CzConstants out;
    CriticalIndex ci = critical_index(mu);
    double c = ci.c;
    out.c_nu = c;
    double mass = total_mass(mu);
    if (c == 1.0) {
        out.applicable = true;
        out.order = 2.0;
        out.size = 2.0 * mass;
        out.smooth = 6.0 * mass;
        out.C = mass;
        out.reason = "c_nu = 1: finite measure";
        return out;
    }
    if (c < 2.0) {
        double a = 2.0 - 2.0 / c;
        DivergibleValue C = carleson_constant(mu, a);
        if (!C.finite) {
            out.reason = "Carleson condition of order " + fmt(a) + " fails";
            return out;
        }
        out.applicable = true;
        out.order = 2.0 / c;
        out.C = C.value;
        out.size = C.value * c * std::pow(2.0, 2.0 / c - 1.0) / (2.0 - c);
        out.smooth = C.value * c * std::pow(2.0, 2.0 / c) * (1.0 / (2.0 * (2.0 - c)) + 1.0);
        out.reason = "1 < c_nu < 2: Carleson constant " + fmt(C.value);
        return out;
    }
    DivergibleValue H = hyperbolic_integral(mu);
    if (!H.finite) {
        out.reason = "c_nu = 2: hyperbolic integral diverges";
        return out;
    }
    DivergibleValue C = inverse_moment(mu);
    DivergibleValue C2 = carleson_constant(mu, 1.0);
    if (!C.finite || !C2.finite) {
        out.reason = "c_nu = 2: integral of 1/(1-r) or the order-1 Carleson constant diverges";
        return out;
    }
    out.applicable = true;
    out.order = 1.0;
    out.C = C.value;
    out.C2 = C2.value;
    out.size = C.value + C2.value;
    out.smooth = C.value + 5.0 * C2.value;
    out.reason = "c_nu = 2: hyperbolic integral " + fmt(H.value);
    return out;
}

SplitMeasure split_at_one(const RadialMeasure& mu) {
    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms())
        if (a.x != 1.0) atoms.push_back(a);
    return {RadialMeasure(std::move(atoms), mu.densities()), mu.mass_at_one()};
}

ForelliRudin forelli_rudin_check(double t, double c, cplx z, const DiskRule& rule) {
    if (!(t > -1.0) || !(c > 0.0)) throw DomainError("forelli_rudin_check: needs t > -1 and c > 0");
    check_disk(z, "forelli_rudin_check");
    SampledFunction f;
    f.f = [=](cplx l) -> cplx {
        return std::pow(one_minus_sq(l), t) / std::pow(std::abs(one_minus(z * std::conj(l))), 2.0 + c + t);
    };
    if (t < 0.0) f.hint = Smoothness::boundary_singular;
    ForelliRudin out;
    out.integral = integrate(f, rule).real();
    out.bound_shape = std::pow(one_minus_sq(z), -c);
    out.ratio = out.integral / out.bound_shape;
    return out;
}

void KernelBoundReport::record(double lhs, double rhs, cplx z, cplx lambda, double extra) {
    ++points;
    double margin = (rhs - lhs) / std::max(std::abs(rhs), 1e-300);
    bool bad = !(lhs <= rhs);
    if (bad) ++violations;
    if (margin < worst_margin || (bad && violations == 1)) {
        worst_margin = margin;
        witness_z = z;
        witness_lambda = lambda;
        witness_extra = extra;
        witness_lhs = lhs;
        witness_rhs = rhs;
    }
}

nlohmann::json KernelBoundReport::to_json() const {
    return {{"bound", bound_name},
            {"points", points},
            {"violations", violations},
            {"worst_margin", worst_margin},
            {"witness",
             {{"z", {witness_z.real(), witness_z.imag()}},
              {"lambda", {witness_lambda.real(), witness_lambda.imag()}},
              {"extra", witness_extra},
              {"lhs", witness_lhs},
              {"rhs", witness_rhs}}}};
}

void KernelBoundReport::throw_if_violated() const {
    if (ok()) return;
    throw BoundViolation(bound_name + ": " + std::to_string(violations) + " violation(s); witness z = (" +
                         fmt(witness_z.real()) + ", " + fmt(witness_z.imag()) + "), lambda = (" +
                         fmt(witness_lambda.real()) + ", " + fmt(witness_lambda.imag()) + "), lhs = " +
                         fmt(witness_lhs) + ", rhs = " + fmt(witness_rhs));
}

std::vector<PointPair> boundary_pairs(std::uint64_t seed, std::size_t count, double min_gap) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double decades = std::log10(1.0 / min_gap);
    std::vector<PointPair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double phi = kPi * (2.0 * unit(rng) - 1.0);
        double gz = std::pow(10.0, -decades * unit(rng));
        double gl = std::pow(10.0, -decades * unit(rng));
        double off = std::pow(10.0, -decades * unit(rng)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
        if (unit(rng) < 0.1) off = 0.0;
        out.emplace_back(std::polar(1.0 - gz, phi), std::polar(1.0 - gl, phi + off));
    }
    return out;
}

KernelBoundReport verify_hermitian(const RadialMeasure& mu, const std::vector<PointPair>& pts, double tol) {
    KernelBoundReport rep;
    rep.bound_name = "hermitian symmetry";
    std::vector<double> lhs(pts.size()), scale(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        auto [z, l] = pts[i];
        cplx a = kernel_eval(mu, z, l);
        cplx b = std::conj(kernel_eval(mu, l, z));
        lhs[i] = std::abs(a - b);
        scale[i] = std::abs(a);
    });
    for (std::size_t i = 0; i < pts.size(); ++i) rep.record(lhs[i], tol * scale[i], pts[i].first, pts[i].second);
    return rep;
}

KernelBoundReport verify_ratio_bound(const std::vector<PointPair>& pts, std::uint64_t seed) {
    KernelBoundReport rep;
    rep.bound_name = "|1-w| <= 2|1-rw|";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& [z, l] : pts) {
        double u = unit(rng);
        double r = u < 0.5 ? 1.0 - std::pow(10.0, -6.0 * unit(rng)) : unit(rng);
        cplx w = z * std::conj(l);
        rep.record(std::abs(one_minus(w)), 2.0 * std::abs(1.0 - r * w), z, l, r);
    }
    return rep;
}

KernelBoundReport verify_universal_size(const RadialMeasure& mu, const std::vector<PointPair>& pts) {
    KernelBoundReport rep;
    rep.bound_name = "|K| <= 2 nu([0,1]) / |1-w|^2";
    double mass = total_mass(mu);
    std::vector<double> lhs(pts.size()), rhs(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        auto [z, l] = pts[i];
        cplx w = z * std::conj(l);
        lhs[i] = std::abs(kernel_eval(mu, z, l));
        rhs[i] = 2.0 * mass / std::norm(one_minus(w));
    });
    for (std::size_t i = 0; i < pts.size(); ++i) rep.record(lhs[i], rhs[i], pts[i].first, pts[i].second);
    return rep;
}

KernelBoundReport verify_representation(const RadialMeasure& mu, const std::vector<PointPair>& pts, double tol) {
    KernelBoundReport rep;
    rep.bound_name = "direct kernel vs double-integral representation";
    std::vector<double> lhs(pts.size()), rhs(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        auto [z, l] = pts[i];
        cplx a = kernel_eval(mu, z, l);
        cplx b = kernel_eval_double_integral(mu, z, l);
        lhs[i] = std::abs(a - b);
        rhs[i] = tol * std::abs(a);
    });
    for (std::size_t i = 0; i < pts.size(); ++i) rep.record(lhs[i], rhs[i], pts[i].first, pts[i].second);
    return rep;
}

KernelBoundReport verify_dz_difference(const RadialMeasure& mu, const std::vector<PointPair>& pts, double tol) {
    KernelBoundReport rep;
    rep.bound_name = "dK/dz vs central difference";
    std::vector<double> lhs(pts.size()), rhs(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        auto [z, l] = pts[i];
        double h = 1e-4 * std::abs(one_minus(z * std::conj(l)));
        // Step along the direction that keeps z + h inside the disk.
        cplx dir = std::abs(z) > 0.0 ? cplx(0.0, 1.0) * z / std::abs(z) : cplx(1.0, 0.0);
        cplx fd = (kernel_eval(mu, z + h * dir, l) - kernel_eval(mu, z - h * dir, l)) / (2.0 * h * dir);
        cplx an = kernel_eval_dz(mu, z, l);
        lhs[i] = std::abs(fd - an);
        rhs[i] = tol * std::abs(an);
    });
    for (std::size_t i = 0; i < pts.size(); ++i) rep.record(lhs[i], rhs[i], pts[i].first, pts[i].second);
    return rep;
}

std::vector<KernelBoundReport> verify_cz(const RadialMeasure& mu, const std::vector<PointPair>& pts) {
    CzConstants cz = cz_constants(mu);
    if (!cz.applicable) throw HypothesisError("verify_cz: " + cz.reason);
    KernelBoundReport size, smooth;
    size.bound_name = "CZ size |K| <= " + fmt(cz.size) + " / |1-w|^" + fmt(cz.order);
    smooth.bound_name = "CZ smoothness |dK/dz| <= " + fmt(cz.smooth) + " / |1-w|^" + fmt(cz.order + 1.0);
    std::vector<double> k(pts.size()), dk(pts.size()), d(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        auto [z, l] = pts[i];
        k[i] = std::abs(kernel_eval(mu, z, l));
        dk[i] = std::abs(kernel_eval_dz(mu, z, l));
        d[i] = std::abs(one_minus(z * std::conj(l)));
    });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        size.record(k[i], cz.size / std::pow(d[i], cz.order), pts[i].first, pts[i].second);
        smooth.record(dk[i], cz.smooth / std::pow(d[i], cz.order + 1.0), pts[i].first, pts[i].second);
    }
    return {size, smooth};
}

std::vector<KernelBoundReport> verify_split(const RadialMeasure& mu, const std::vector<PointPair>& pts) {
    SplitMeasure sp = split_at_one(mu);
    KernelBoundReport lower, upper;
    lower.bound_name = "split at 1: lower";
    upper.bound_name = "split at 1: upper";
    std::vector<double> k(pts.size()), k1(pts.size()), d2(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        auto [z, l] = pts[i];
        k[i] = std::abs(kernel_eval(mu, z, l));
        k1[i] = sp.rest.empty() ? 0.0 : std::abs(kernel_eval(sp.rest, z, l));
        d2[i] = std::norm(one_minus(z * std::conj(l)));
    });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double atom = sp.mass_at_one / d2[i];
        // Both sides are computed in floating point; allow rounding at equality.
        double slack = 1e-12 * (atom + k1[i]);
        lower.record(0.5 * (atom + k1[i]), k[i] + slack, pts[i].first, pts[i].second);
        upper.record(k[i], atom + k1[i] + slack, pts[i].first, pts[i].second);
    }
    return {lower, upper};
}

std::vector<std::pair<cplx, double>> zp_samples(std::uint64_t seed, std::size_t count, double p_lo, double p_hi,
                                                double max_abs) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<cplx, double>> out;
    for (std::size_t i = 0; i < count; ++i) {
        double gap_lo = 1.0 - max_abs;
        double gap = std::exp(std::log(gap_lo) * unit(rng));
        double phi = kPi * (2.0 * unit(rng) - 1.0);
        double p = p_lo * std::pow(p_hi / p_lo, unit(rng));
        out.emplace_back(std::polar(1.0 - gap, phi), p);
    }
    return out;
}

std::vector<KernelBoundReport> verify_pnorm_sandwich(const RadialMeasure& mu,
                                                     const std::vector<std::pair<cplx, double>>& zp, double eps) {
    double max_abs = 0.0;
    for (const auto& s : zp) max_abs = std::max(max_abs, std::abs(s.first));
    MultiplierSequence m = moment_prefix(mu, kernel_series_length(max_abs));
    std::vector<double> norm(zp.size());
    std::vector<Envelope> env(zp.size());
    parallel_for(zp.size(), [&](std::size_t i) {
        norm[i] = kernel_lp_norm_series(m, zp[i].first, zp[i].second);
        env[i] = pnorm_envelope(mu, zp[i].first, zp[i].second);
    });
    KernelBoundReport lower, upper;
    lower.bound_name = "kernel L^p norm >= lower envelope";
    upper.bound_name = "kernel L^p norm <= upper envelope";
    for (std::size_t i = 0; i < zp.size(); ++i) {
        lower.record(env[i].lower * (1.0 - eps), norm[i], zp[i].first, 0.0, zp[i].second);
        upper.record(norm[i], env[i].upper * (1.0 + eps), zp[i].first, 0.0, zp[i].second);
    }
    return {lower, upper};
}

CorollaryResult corollary_sweep(const RadialMeasure& mu, double p, double min_gap) {
    if (!(p > 1.0 && p < 2.0)) throw DomainError("corollary_sweep: needs 1 < p < 2");
    CorollaryResult out;
    DivergibleValue J = singular_moment(mu, 2.0 - 2.0 / p);
    if (!J.finite) throw HypothesisError("corollary_sweep: int (1-r)^{2/p-2} dnu diverges");
    out.J = J.value;
    out.lower = 0.5 * J.value;
    out.upper = 2.0 / (2.0 - p) * J.value;
    for (int k = 0;; ++k) {
        double gap = std::exp2(-k);
        if (gap <= min_gap) break;
        out.radii.push_back(k == 0 ? 0.0 : 1.0 - gap);
    }
    out.radii.push_back(1.0 - min_gap);
    MultiplierSequence m = moment_prefix(mu, kernel_series_length(1.0 - min_gap));
    out.norms.resize(out.radii.size());
    for (std::size_t i = 0; i < out.radii.size(); ++i) {
        out.norms[i] = out.radii[i] == 0.0 ? total_mass(mu) : kernel_lp_norm_series(m, out.radii[i], p);
        if (out.norms[i] > out.max_norm) {
            out.max_norm = out.norms[i];
            out.argmax_abs_z = out.radii[i];
        }
    }
    return out;
}

}  // namespace shimorin
