#include "shimorin/classify.hpp"

#include "shimorin/errors.hpp"
#include "shimorin/kernel.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace shimorin {

Exponent Exponent::of(double v) {
    if (!(v >= 1.0)) throw DomainError("exponent must be >= 1");
    if (std::isinf(v)) return inf();
    Exponent e;
    e.value = v;
    return e;
}

Exponent Exponent::of(Rational r) {
    if (r < 1) throw DomainError("exponent must be >= 1");
    Exponent e;
    e.value = boost::rational_cast<double>(r);
    e.exact = r;
    return e;
}

Exponent Exponent::inf() {
    Exponent e;
    e.infinite = true;
    e.value = std::numeric_limits<double>::infinity();
    return e;
}

Exponent Exponent::parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return inf();
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            std::size_t a = 0, b = 0;
            long long num = std::stoll(s.substr(0, slash), &a);
            long long den = std::stoll(s.substr(slash + 1), &b);
            if (a != slash || b != s.size() - slash - 1 || den == 0) throw ConfigError("");
            return of(Rational(num, den));
        }
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw ConfigError("");
        auto dot = s.find('.');
        std::size_t decimals = dot == std::string::npos ? 0 : s.size() - dot - 1;
        if (s.find_first_of("eE") == std::string::npos && decimals <= 9) {
            std::string digits = s;
            if (dot != std::string::npos) digits.erase(dot, 1);
            long long den = 1;
            for (std::size_t i = 0; i < decimals; ++i) den *= 10;
            return of(Rational(std::stoll(digits), den));
        }
        return of(v);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse exponent '" + s + "'");
    }
}

std::string Exponent::str() const {
    if (infinite) return "inf";
    std::ostringstream os;
    if (exact) {
        os << exact->numerator();
        if (exact->denominator() != 1) os << "/" << exact->denominator();
    } else {
        os.precision(17);
        os << value;
    }
    return os.str();
}

Reciprocal reciprocal(const Exponent& e) {
    if (e.infinite) return {0.0, Rational(0)};
    if (e.exact) return {boost::rational_cast<double>(1 / *e.exact), 1 / *e.exact};
    return {1.0 / e.value, std::nullopt};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::bounded: return "bounded";
        case Verdict::unbounded: return "unbounded";
        case Verdict::critical_line_interior: return "critical-line-interior";
        case Verdict::critical_endpoint_1_c: return "critical-endpoint-(1,c_nu)";
        case Verdict::critical_endpoint_cprime_inf: return "critical-endpoint-(c_nu',inf)";
    }
    return "?";
}

namespace {

struct Num {
    double d;
    std::optional<Rational> r;
};

Num sub(const Num& a, const Num& b) {
    Num out{a.d - b.d, std::nullopt};
    if (a.r && b.r) out.r = *a.r - *b.r;
    return out;
}

Num add(const Num& a, const Num& b) {
    Num out{a.d + b.d, std::nullopt};
    if (a.r && b.r) out.r = *a.r + *b.r;
    return out;
}

/// Sign of a, exact when possible, otherwise zero within tol.
int sign(const Num& a, double tol) {
    if (a.r) return *a.r > 0 ? 1 : (*a.r < 0 ? -1 : 0);
    if (std::abs(a.d) <= tol) return 0;
    return a.d > 0 ? 1 : -1;
}

Num num(const Reciprocal& r) { return {r.value, r.exact}; }

RegionVerdict classify(const Num& a, const Num& x, const Num& y, double tol) {
    const Num one{1.0, Rational(1)};
    const Num zero{0.0, Rational(0)};
    const Num conj = sub(one, a);  // 1/c'
    int sx = sign(sub(x, conj), tol);
    if (sx < 0) return {Verdict::bounded, "d", ""};
    if (sx == 0) {
        if (sign(y, tol) > 0) return {Verdict::bounded, "c", ""};
        return {Verdict::critical_endpoint_cprime_inf, "critical", "Bloch"};
    }
    if (sign(sub(x, one), tol) >= 0) {
        int sy = sign(sub(y, a), tol);
        if (sy > 0) return {Verdict::bounded, "a", ""};
        if (sy == 0) return {Verdict::critical_endpoint_1_c, "critical", "weak L^{c,inf}"};
        return {Verdict::unbounded, "nec-p1", ""};
    }
    int sl = sign(sub(y, sub(add(x, a), one)), tol);
    if (sl > 0) return {Verdict::bounded, "b", ""};
    if (sl == 0) return {Verdict::critical_line_interior, "critical", ""};
    if (sign(sub(y, zero), tol) == 0) return {Verdict::unbounded, "nec-qinf", ""};
    return {Verdict::unbounded, "nec-below", ""};
}

void check_c(double c) {
    if (!(c >= 1.0 && c <= 2.0)) throw DomainError("region_verdict: c_nu must lie in [1, 2]");
}

}  // namespace

RegionVerdict region_verdict(const Exponent& c, const Exponent& p, const Exponent& q, double tol) {
    if (c.infinite) throw DomainError("region_verdict: c_nu must be finite");
    check_c(c.value);
    return classify(num(reciprocal(c)), num(reciprocal(p)), num(reciprocal(q)), tol);
}

RegionVerdict region_verdict(double c, const Exponent& p, const Exponent& q, double tol) {
    check_c(c);
    return classify({1.0 / c, std::nullopt}, num(reciprocal(p)), num(reciprocal(q)), tol);
}

StandardEstimate standard_estimate(const RadialMeasure& mu) {
    StandardEstimate out;
    CriticalIndex ci = critical_index(mu);
    out.c_nu = ci.c;
    if (ci.c == 1.0) {
        out.branch = "finite measure";
        out.witness = total_mass(mu);
        out.holds = std::isfinite(out.witness);
        out.reason = "c_nu = 1: nu is a finite measure";
        return out;
    }
    if (ci.c < 2.0) {
        double a = 2.0 - 2.0 / ci.c;
        DivergibleValue C = carleson_constant(mu, a);
        out.branch = "Carleson";
        out.holds = C.finite;
        out.witness = C.finite ? C.value : std::numeric_limits<double>::infinity();
        std::ostringstream os;
        os.precision(17);
        os << "1 < c_nu < 2: order-" << a << " Carleson condition " << (C.finite ? "holds" : "fails");
        out.reason = os.str();
        return out;
    }
    DivergibleValue H = hyperbolic_integral(mu);
    out.branch = "hyperbolic";
    out.holds = H.finite;
    out.witness = H.finite ? H.value : std::numeric_limits<double>::infinity();
    out.reason = std::string("c_nu = 2: int (1-r^2)^{-1} dnu ") + (H.finite ? "is finite" : "diverges");
    return out;
}

std::vector<GridCell> region_grid(const Exponent& c, int resolution, bool include_edges) {
    if (resolution < 8) throw DomainError("region_grid: resolution must be >= 8");
    if (c.infinite) throw DomainError("region_grid: c_nu must be finite");
    check_c(c.value);
    Reciprocal a = reciprocal(c);
    std::vector<Reciprocal> xs, ys;
    for (int i = 0; i < resolution; ++i) {
        Rational r(2 * i + 1, 2 * resolution);
        xs.push_back({boost::rational_cast<double>(r), r});
        ys.push_back({boost::rational_cast<double>(r), r});
    }
    if (include_edges) {
        Reciprocal conj{1.0 - a.value, std::nullopt};
        if (a.exact) conj.exact = 1 - *a.exact;
        xs.push_back({0.0, Rational(0)});
        xs.push_back(conj);
        xs.push_back({1.0, Rational(1)});
        ys.push_back({0.0, Rational(0)});
        ys.push_back({1.0, Rational(1)});
    }
    std::vector<GridCell> out;
    for (const auto& x : xs)
        for (const auto& y : ys) {
            Num ax = num(a);
            out.push_back({x, y, classify(ax, num(x), num(y), kCriticalTolerance)});
        }
    return out;
}

}  // namespace shimorin
