// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria, capped at 1.

#include "shimorin/classify.hpp"
#include "shimorin/diskquad.hpp"
#include "shimorin/kernel.hpp"
#include "shimorin/measure.hpp"
#include "shimorin/multiplier.hpp"
#include "shimorin/operator.hpp"
#include "shimorin/testfns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace shimorin;

namespace {

constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(int id, bool pass, const std::string& detail, double seconds) {
    if (!pass) ++failures;
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  (" << seconds << " s)  " << detail
              << std::endl;
}

template <class F>
void run(int id, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    detail.precision(6);
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, pass, detail.str(), s);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Catalog measures with no atom at 1.
std::vector<std::pair<std::string, RadialMeasure>> interior_catalog() {
    return {
        {"delta0", RadialMeasure::delta(0.0)},
        {"delta0.5", RadialMeasure::delta(0.5)},
        {"lebesgue", RadialMeasure::lebesgue()},
        {"nu_alpha:1.25", RadialMeasure::nu_alpha(1.25)},
        {"nu_alpha:1.5", RadialMeasure::nu_alpha(1.5)},
        {"nu_alpha:1.75", RadialMeasure::nu_alpha(1.75)},
        {"power:1,-0.75", RadialMeasure::power(1.0, -0.75)},
        {"power:1,-0.5", RadialMeasure::power(1.0, -0.5)},
        {"power:1,-0.25", RadialMeasure::power(1.0, -0.25)},
        {"power:1,0.5", RadialMeasure::power(1.0, 0.5)},
        {"power:1,1", RadialMeasure::power(1.0, 1.0)},
    };
}

/// Random catalog member or a sum of two.
RadialMeasure random_measure(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto one = [&]() {
        switch (static_cast<int>(u(rng) * 5.0)) {
            case 0: return RadialMeasure::delta(u(rng), 0.1 + u(rng));
            case 1: return RadialMeasure::lebesgue();
            case 2: return RadialMeasure::nu_alpha(1.05 + 0.9 * u(rng));
            case 3: return RadialMeasure::power(0.1 + 2.0 * u(rng), -0.95 + 3.0 * u(rng));
            default: return RadialMeasure::delta(1.0, 0.1 + u(rng));
        }
    };
    RadialMeasure mu = one();
    if (u(rng) < 0.3) mu = mu + one();
    return mu;
}

bool nu_alpha_identity(std::ostream& d) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int count = 0;
    for (double a : {1.25, 1.5, 1.75}) {
        RadialMeasure mu = RadialMeasure::nu_alpha(a);
        for (int i = 0; i < 200; ++i) {
            cplx z = std::polar(std::sqrt(0.95) * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
            cplx l = std::polar(std::sqrt(0.95) * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
            cplx expect = std::pow(1.0 - z * std::conj(l), -a);
            worst = std::max(worst, std::abs(kernel_eval(mu, z, l) - expect) / std::abs(expect));
            ++count;
        }
    }
    double s = elapsed_since(t0);
    d << count << " pairs, worst relative error " << worst << ", runtime " << s << " s (limit 10)";
    return worst <= 1e-6 && s < 10.0;
}

bool critical_catalog(std::ostream& d) {
    bool ok = true;
    auto check = [&](const std::string& name, const RadialMeasure& mu, double expect, double tol) {
        double c = critical_index(mu).c;
        double b = critical_index_bisect(mu).c;
        bool good = std::abs(c - expect) <= tol && std::abs(b - expect) <= 1e-3;
        if (!good) d << name << ": c=" << c << " bisect=" << b << " expected " << expect << "; ";
        ok = ok && good;
    };
    check("delta1", RadialMeasure::delta(1.0), 1.0, 0.0);
    check("delta0", RadialMeasure::delta(0.0), 2.0, 0.0);
    check("lebesgue", RadialMeasure::lebesgue(), 2.0, 0.0);
    for (double a : {1.25, 1.5, 1.75}) check("nu_alpha", RadialMeasure::nu_alpha(a), 2.0 / a, 1e-3);
    for (double b : {-0.75, -0.5, -0.25}) check("power", RadialMeasure::power(1.0, b), 2.0 / (1.0 - b), 1e-3);
    d << "catalog rule and bisection both match";
    return ok;
}

bool multiplier_exactness(std::ostream& d) {
    const long N = 10000;
    MultiplierSequence one = moment_prefix(RadialMeasure::delta(1.0), N);
    MultiplierSequence zero = moment_prefix(RadialMeasure::delta(0.0), N);
    MultiplierSequence leb = moment_prefix(RadialMeasure::lebesgue(), N);
    bool ok = true;
    long double H = 0.0L;
    double worst = 0.0;
    for (long n = 0; n <= N; ++n) {
        H += 1.0L / (n + 1);
        ok = ok && one[n] == 1.0 && zero[n] == 1.0 / (n + 1.0);
        double expect = static_cast<double>(H / (n + 1));
        worst = std::max(worst, std::abs(leb[n] - expect) / expect);
    }
    d << "delta1/delta0 exact: " << (ok ? "yes" : "no") << ", Lebesgue worst relative " << worst;
    return ok && worst <= 1e-10;
}

bool claim1(std::ostream& d) {
    std::mt19937_64 rng(kSeed);
    std::vector<long> ns;
    for (int i = 0; i < 40; ++i) ns.push_back(std::lround(std::pow(1e4, i / 39.0)) - (i == 0 ? 1 : 0));
    std::size_t checks = 0, bad = 0;
    for (int k = 0; k < 100; ++k) {
        RadialMeasure mu = random_measure(rng);
        for (long n : ns) {
            double m = moment(mu, n);
            Envelope e = claim1_envelope(mu, n);
            ++checks;
            if (m < e.lower || m > e.upper * (1.0 + 1e-12)) {
                if (bad == 0) d << "first violation " << mu.id() << " n=" << n << "; ";
                ++bad;
            }
        }
    }
    d << checks << " checks, " << bad << " violations";
    return bad == 0;
}

bool monotone(std::ostream& d) {
    std::size_t bad = 0, total = 0;
    std::vector<RadialMeasure> all{RadialMeasure::delta(1.0)};
    for (auto& [name, mu] : interior_catalog()) all.push_back(mu);
    std::mt19937_64 rng(kSeed + 5);
    for (int k = 0; k < 20; ++k) all.push_back(random_measure(rng));
    double worst = 0.0;
    for (const auto& mu : all) {
        MultiplierSequence m = moment_prefix(mu, 100000);
        // moment_prefix clamps rounding-level increases, so the raw running
        // averages are checked too.
        std::vector<double> mom = power_moments(mu, 100000);
        long double acc = 0.0L, prev = 0.0L;
        for (std::size_t n = 0; n < mom.size(); ++n) {
            acc += mom[n];
            long double cur = acc / (n + 1);
            if (n > 0) worst = std::max(worst, static_cast<double>((cur - prev) / prev));
            prev = cur;
        }
        for (std::size_t n = 0; n + 1 < m.size(); ++n) {
            ++total;
            if (m[n + 1] > m[n]) ++bad;
        }
    }
    d << all.size() << " measures, " << total << " steps, " << bad << " increases; largest raw relative increase "
      << worst << " (allowed 1e-13)";
    return bad == 0 && worst <= 1e-13;
}

bool decay(std::ostream& d) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (double a : {1.2, 1.5, 1.8}) {
        DecayEstimate e = decay_exponent_estimate(RadialMeasure::nu_alpha(a), 1000000);
        d << "alpha=" << a << " slope " << e.slope << " (expect " << -(2.0 - a) << "); ";
        ok = ok && std::abs(e.slope + (2.0 - a)) <= 0.05;
    }
    double s = elapsed_since(t0);
    d << "runtime " << s << " s (limit 60)";
    return ok && s < 60.0;
}

bool sandwich(std::ostream& d) {
    bool ok = true;
    std::uint64_t seed = kSeed;
    for (auto& [name, mu] : interior_catalog()) {
        auto zp = zp_samples(seed++, 50, 1.1, 8.0);
        auto rep = verify_pnorm_sandwich(mu, zp, 1e-4);
        for (const auto& r : rep) {
            if (r.ok()) continue;
            ok = false;
            d << name << " " << r.bound_name << ": " << r.violations << "/" << r.points << " violations, witness |z|="
              << std::abs(r.witness_z) << " p=" << r.witness_extra << " norm=" << r.witness_lhs
              << " bound=" << r.witness_rhs << "; ";
        }
    }
    if (ok) d << "all catalog measures inside both envelopes";
    return ok;
}

bool corollary(std::ostream& d) {
    bool ok = true;
    for (double beta : {1.0, 2.0})
        for (double p : {1.2, 1.5, 1.8}) {
            if (!(beta > 2.0 - 2.0 / p)) continue;
            CorollaryResult r = corollary_sweep(RadialMeasure::power(1.0, beta), p, 1e-4);
            d << "beta=" << beta << " p=" << p << " max " << r.max_norm << " in [" << r.lower << ", " << r.upper
              << "]; ";
            ok = ok && r.ok();
        }
    return ok;
}

bool cz(std::ostream& d) {
    auto pts = boundary_pairs(kSeed, 1000);
    bool ok = true;
    for (const auto& [name, mu] : std::vector<std::pair<std::string, RadialMeasure>>{
             {"delta1", RadialMeasure::delta(1.0)},
             {"power:1,-0.5", RadialMeasure::power(1.0, -0.5)},
             {"power:1,0.5", RadialMeasure::power(1.0, 0.5)}}) {
        CzConstants c = cz_constants(mu);
        auto rep = verify_cz(mu, pts);
        std::size_t v = 0;
        for (const auto& r : rep) v += r.violations;
        d << name << " (size " << c.size << ", smooth " << c.smooth << ") " << v << " violations; ";
        ok = ok && c.applicable && v == 0;
    }
    return ok;
}

bool routes(std::ostream& d) {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0), s(-1.0, 1.0);
    DiskRuleParams base;
    base.radial_depth = 14;
    base.angular_nodes = 96;
    double worst = 0.0;
    std::string where;
    for (auto& [name, mu] : interior_catalog()) {
        TaylorFunction f;
        for (int n = 0; n <= 20; ++n) f.coeffs.emplace_back(s(rng), s(rng));
        TaylorFunction Tf = apply_multiplier(mu, f);
        SampledFunction fs = f.sampled();
        for (int k = 0; k < 20; ++k) {
            cplx z = std::polar(0.95 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
            cplx a = Tf(z);
            double e1 = std::abs(apply_quadrature(mu, fs, z, kernel_rule(z, base)) - a);
            double e2 = std::abs(apply_radial(mu, [&](cplx w) { return f(w); }, z) - a);
            if (std::max(e1, e2) > worst) {
                worst = std::max(e1, e2);
                where = name;
            }
        }
    }
    d << "worst absolute disagreement " << worst << " (" << where << ")";
    return worst <= 1e-6;
}

bool realpart(std::ostream& d) {
    auto rep = realpart_bounds_check({0.4, 0.2, 0.1, 0.05, 0.025}, 2000, kSeed);
    bool ok = true;
    std::size_t pts = 0;
    for (const auto& r : rep) {
        pts = std::max(pts, r.points);
        if (!r.ok()) {
            ok = false;
            d << r.bound_name << " " << r.violations << " violations; ";
        }
    }
    d << rep.size() << " bounds, " << pts << " samples each";
    return ok;
}

bool critical_line(std::ostream& d) {
    const double p = 4.0 / 3.0, q = 4.0;
    RatioSweep leb = ratio_sweep(RadialMeasure::lebesgue(), p, q, Family::indicator, 3, 10);
    std::vector<double> v;
    for (const auto& x : leb.points) v.push_back(x.ratio);
    bool leb_ok = true;
    d << "Lebesgue";
    for (double x : v) d << " " << x;
    for (std::size_t i = 1; i < v.size(); ++i) leb_ok = leb_ok && v[i] > v[i - 1];
    for (std::size_t i = 2; i < v.size(); ++i) {
        double r = (v[i] - v[i - 1]) / (v[i - 1] - v[i - 2]);
        leb_ok = leb_ok && r >= 0.5 && r <= 2.0;
    }
    RatioSweep pw = ratio_sweep(RadialMeasure::power(1.0, 0.5), p, q, Family::indicator, 3, 10);
    std::vector<double> w;
    for (const auto& x : pw.points) w.push_back(x.ratio);
    d << "; power 0.5";
    for (double x : w) d << " " << x;
    auto last = std::vector<double>(w.end() - 3, w.end());
    double spread = (*std::max_element(last.begin(), last.end()) - *std::min_element(last.begin(), last.end())) /
                    *std::max_element(last.begin(), last.end());
    d << "; Lebesgue " << (leb_ok ? "log-growth" : "not log-growth") << ", power 0.5 last-three spread " << spread
      << " (limit 0.05)";
    return leb_ok && spread < 0.05;
}

bool region(std::ostream& d) {
    using Key = std::pair<Rational, Rational>;
    std::map<Key, bool> prev;
    std::size_t checked = 0, bad = 0, mono_bad = 0;
    for (const char* cs : {"1", "4/3", "2"}) {
        Exponent c = Exponent::parse(cs);
        Rational a = 1 / *c.exact;
        std::map<Key, bool> cur;
        for (const auto& g : region_grid(c, 64, true)) {
            Rational x = *g.inv_p.exact, y = *g.inv_q.exact;
            Rational line = x + a - 1;
            bool bounded = g.verdict.verdict == Verdict::bounded;
            cur[{x, y}] = bounded;
            const std::string& cl = g.verdict.clause;
            // Bounded side: 1/q above the line, clauses a, b, c, d.
            if (y > line || cl == "a" || cl == "c" || cl == "d") {
                ++checked;
                if (!bounded && y != line) ++bad;
            } else if (y < line && x > 1 - a && x < 1) {
                ++checked;
                if (bounded) ++bad;
            }
        }
        for (const auto& [k, b] : prev)
            if (b && cur.count(k) && !cur[k]) ++mono_bad;
        prev = cur;
    }
    d << checked << " cells, " << bad << " misclassified, " << mono_bad
      << " monotonicity breaks; bounded side taken as 1/q > 1/p + 1/c - 1";
    return bad == 0 && mono_bad == 0;
}

bool endpoints(std::ostream& d) {
    RadialMeasure mu = RadialMeasure::power(1.0, -0.5);
    double c = critical_index(mu).c;
    double cp = c / (c - 1.0);
    RatioOptions weak;
    weak.target = Target::weak;
    RatioSweep w = ratio_sweep(mu, 1.0, c, Family::indicator, 3, 10, weak);
    RatioOptions bl;
    bl.target = Target::bloch;
    RatioSweep b = ratio_sweep(mu, cp, c, Family::indicator, 3, 10, bl);
    d << "c_nu=" << c << "; weak";
    for (const auto& x : w.points) d << " " << x.ratio;
    d << " (" << to_string(w.verdict) << "); Bloch";
    for (const auto& x : b.points) d << " " << x.ratio;
    d << " (" << to_string(b.verdict) << ")";
    return std::abs(c - 4.0 / 3.0) < 1e-12 && w.verdict == GrowthVerdict::plateaued &&
           b.verdict == GrowthVerdict::plateaued;
}

bool box_area(std::ostream& d) {
    double worst = 0.0;
    for (double t : {0.4, 0.1, 0.01}) {
        BoundaryBox b = box(t);
        double closed = t * t * (1.0 - 0.75 * t) / (20.0 * kPi);
        double polar = (t / 20.0) * (std::pow(1.0 - 0.5 * t, 2) - std::pow(1.0 - t, 2)) / kPi;
        double quad = lp_norm(indicator_testfn(t), 1.0, box_rule(b));
        worst = std::max({worst, std::abs(b.area() - closed) / closed, std::abs(quad - closed) / closed,
                          std::abs(polar - closed) / closed});
    }
    d << "worst relative error " << worst;
    return worst <= 1e-8;
}

}  // namespace

int main() {
    std::cout.precision(6);
    run(1, nu_alpha_identity);
    run(2, critical_catalog);
    run(3, multiplier_exactness);
    run(4, claim1);
    run(5, monotone);
    run(6, decay);
    run(7, sandwich);
    run(8, corollary);
    run(9, cz);
    run(10, routes);
    run(11, realpart);
    run(12, critical_line);
    run(13, region);
    run(14, endpoints);
    run(15, box_area);
    std::cout << failures << " of 15 criteria failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
