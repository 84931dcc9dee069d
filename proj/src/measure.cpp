#include "shimorin/measure.hpp"

#include "shimorin/errors.hpp"
#include "shimorin/radial_quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace shimorin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact integral of the piecewise-linear tabulated density over [a, b].
double tabulated_integral(const Density& d, double a, double b) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < d.r.size(); ++i) {
        double lo = std::max(a, d.r[i]);
        double hi = std::min(b, d.r[i + 1]);
        if (hi <= lo) continue;
        total += 0.5 * (hi - lo) * (d(lo) + d(hi));
    }
    return total;
}

double density_tail(const Density& d, double t) {
    switch (d.kind) {
        case DensityKind::power:
            return d.kappa * std::pow(t, d.beta + 1.0) / (d.beta + 1.0);
        case DensityKind::nu_alpha:
            return boost::math::ibeta(2.0 - d.alpha, d.alpha - 1.0, t);
        case DensityKind::tabulated:
            return tabulated_integral(d, 1.0 - t, 1.0);
    }
    return 0.0;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

double number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(std::string("measure spec: missing numeric field '") + key + "'");
    return j.at(key).get<double>();
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(trim(item), &used));
            if (used != trim(item).size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("measure shorthand: bad number '" + item + "'");
        }
    }
    return out;
}

}  // namespace

Density Density::power(double kappa, double beta) {
    Density d;
    d.kind = DensityKind::power;
    d.kappa = kappa;
    d.beta = beta;
    return d;
}

Density Density::nu_alpha(double alpha) {
    Density d;
    d.kind = DensityKind::nu_alpha;
    d.alpha = alpha;
    return d;
}

Density Density::tabulated(std::vector<double> r, std::vector<double> values) {
    Density d;
    d.kind = DensityKind::tabulated;
    d.r = std::move(r);
    d.values = std::move(values);
    return d;
}

double Density::operator()(double x) const {
    switch (kind) {
        case DensityKind::power:
            return kappa * std::pow(1.0 - x, beta);
        case DensityKind::nu_alpha:
            return std::pow(x, alpha - 2.0) * std::pow(1.0 - x, 1.0 - alpha) /
                   radial::nu_alpha_normalizer(alpha);
        case DensityKind::tabulated: {
            if (x < r.front() || x > r.back()) return 0.0;
            auto it = std::upper_bound(r.begin(), r.end(), x);
            if (it == r.end()) return values.back();
            std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
            double w = (x - r[i]) / (r[i + 1] - r[i]);
            return values[i] + w * (values[i + 1] - values[i]);
        }
    }
    return 0.0;
}

double Density::boundary_exponent() const {
    switch (kind) {
        case DensityKind::power:
            return beta;
        case DensityKind::nu_alpha:
            return 1.0 - alpha;
        case DensityKind::tabulated:
            if (r.back() < 1.0) return kInf;
            return values.back() > 0.0 ? 0.0 : 1.0;
    }
    return 0.0;
}

double Density::mass() const {
    switch (kind) {
        case DensityKind::power:
            return kappa / (beta + 1.0);
        case DensityKind::nu_alpha:
            return 1.0;
        case DensityKind::tabulated:
            return tabulated_integral(*this, 0.0, 1.0);
    }
    return 0.0;
}

std::string Density::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case DensityKind::power:
            os << "power(kappa=" << kappa << ", beta=" << beta << ")";
            break;
        case DensityKind::nu_alpha:
            os << "nu_alpha(alpha=" << alpha << ")";
            break;
        case DensityKind::tabulated:
            os << "tabulated(" << r.size() << " points)";
            break;
    }
    return os.str();
}

RadialMeasure::RadialMeasure(std::vector<Atom> atoms, std::vector<Density> densities)
    : atoms_(std::move(atoms)), densities_(std::move(densities)) {
    for (const Atom& a : atoms_) {
        require(std::isfinite(a.x) && a.x >= 0.0 && a.x <= 1.0, "atom location must lie in [0,1]");
        require(std::isfinite(a.mass) && a.mass > 0.0, "atom mass must be positive");
    }
    for (const Density& d : densities_) {
        switch (d.kind) {
            case DensityKind::power:
                require(std::isfinite(d.kappa) && d.kappa > 0.0, "power density needs kappa > 0");
                require(std::isfinite(d.beta) && d.beta > -1.0, "power density needs beta > -1");
                break;
            case DensityKind::nu_alpha:
                require(d.alpha > 1.0 && d.alpha < 2.0, "nu_alpha needs alpha in (1,2)");
                break;
            case DensityKind::tabulated:
                require(d.r.size() >= 2 && d.r.size() == d.values.size(),
                        "tabulated density needs matching r and density arrays of length >= 2");
                require(d.r.front() >= 0.0 && d.r.back() <= 1.0, "tabulated r must lie in [0,1]");
                for (std::size_t i = 0; i + 1 < d.r.size(); ++i)
                    require(d.r[i + 1] > d.r[i], "tabulated r must be strictly increasing");
                for (double v : d.values) require(std::isfinite(v) && v >= 0.0, "tabulated density must be >= 0");
                require(d.mass() > 0.0, "tabulated density must have positive mass");
                break;
        }
    }
}

RadialMeasure RadialMeasure::delta(double x, double mass) { return RadialMeasure({{x, mass}}, {}); }
RadialMeasure RadialMeasure::lebesgue() { return RadialMeasure({}, {Density::lebesgue()}); }
RadialMeasure RadialMeasure::power(double kappa, double beta) {
    return RadialMeasure({}, {Density::power(kappa, beta)});
}
RadialMeasure RadialMeasure::nu_alpha(double alpha) { return RadialMeasure({}, {Density::nu_alpha(alpha)}); }

RadialMeasure RadialMeasure::from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) throw ConfigError("measure spec must be a JSON object");
    std::vector<Atom> atoms;
    std::vector<Density> densities;
    if (spec.contains("atoms")) {
        require(spec["atoms"].is_array(), "measure spec: 'atoms' must be an array");
        for (const auto& a : spec["atoms"]) atoms.push_back({number(a, "x"), number(a, "mass")});
    }
    if (spec.contains("densities")) {
        require(spec["densities"].is_array(), "measure spec: 'densities' must be an array");
        for (const auto& d : spec["densities"]) {
            require(d.is_object() && d.contains("kind") && d["kind"].is_string(),
                    "measure spec: density needs a 'kind'");
            std::string kind = d["kind"];
            if (kind == "power") {
                densities.push_back(Density::power(d.contains("kappa") ? number(d, "kappa") : 1.0, number(d, "beta")));
            } else if (kind == "nu_alpha") {
                densities.push_back(Density::nu_alpha(number(d, "alpha")));
            } else if (kind == "lebesgue") {
                densities.push_back(Density::lebesgue());
            } else if (kind == "tabulated") {
                require(d.contains("r") && d.contains("density") && d["r"].is_array() && d["density"].is_array(),
                        "tabulated density needs 'r' and 'density' arrays");
                std::vector<double> r, v;
                try {
                    r = d["r"].get<std::vector<double>>();
                    v = d["density"].get<std::vector<double>>();
                } catch (const nlohmann::json::exception&) {
                    throw ConfigError("tabulated density arrays must hold numbers");
                }
                densities.push_back(Density::tabulated(std::move(r), std::move(v)));
            } else {
                throw ConfigError("measure spec: unknown density kind '" + kind + "'");
            }
        }
    }
    RadialMeasure mu(std::move(atoms), std::move(densities));
    require(!mu.empty() && total_mass(mu) > 0.0, "measure must have positive total mass");
    return mu;
}

RadialMeasure RadialMeasure::parse(const std::string& raw) {
    std::string text = trim(raw);
    if (text.empty()) throw ConfigError("empty measure spec");
    if (text.front() == '{') {
        try {
            return from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("measure spec: invalid JSON: ") + e.what());
        }
    }
    if (text == "lebesgue") return lebesgue();
    if (text == "delta0") return delta(0.0);
    if (text == "delta1") return delta(1.0);
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        std::vector<double> args = parse_numbers(text.substr(colon + 1));
        if (head == "nu_alpha" && args.size() == 1) return nu_alpha(args[0]);
        if (head == "power" && args.size() == 1) return power(1.0, args[0]);
        if (head == "power" && args.size() == 2) return power(args[0], args[1]);
        if (head == "delta" && args.size() == 1) return delta(args[0]);
        if (head == "delta" && args.size() == 2) return delta(args[0], args[1]);
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(text, ec)) {
        std::ifstream in(text);
        try {
            return from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("measure file " + text + ": invalid JSON: " + e.what());
        }
    }
    throw ConfigError("unrecognized measure spec '" + text + "'");
}

nlohmann::json RadialMeasure::to_json() const {
    nlohmann::json j;
    j["atoms"] = nlohmann::json::array();
    for (const Atom& a : atoms_) j["atoms"].push_back({{"x", a.x}, {"mass", a.mass}});
    j["densities"] = nlohmann::json::array();
    for (const Density& d : densities_) {
        switch (d.kind) {
            case DensityKind::power:
                j["densities"].push_back({{"kind", "power"}, {"kappa", d.kappa}, {"beta", d.beta}});
                break;
            case DensityKind::nu_alpha:
                j["densities"].push_back({{"kind", "nu_alpha"}, {"alpha", d.alpha}});
                break;
            case DensityKind::tabulated:
                j["densities"].push_back({{"kind", "tabulated"}, {"r", d.r}, {"density", d.values}});
                break;
        }
    }
    return j;
}

std::string RadialMeasure::id() const { return to_json().dump(); }

double RadialMeasure::mass_at_one() const {
    double m = 0.0;
    for (const Atom& a : atoms_)
        if (a.x == 1.0) m += a.mass;
    return m;
}

RadialMeasure RadialMeasure::operator+(const RadialMeasure& other) const {
    std::vector<Atom> atoms = atoms_;
    atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
    std::vector<Density> dens = densities_;
    dens.insert(dens.end(), other.densities_.begin(), other.densities_.end());
    return RadialMeasure(std::move(atoms), std::move(dens));
}

double total_mass(const RadialMeasure& mu) {
    double m = 0.0;
    for (const Atom& a : mu.atoms()) m += a.mass;
    for (const Density& d : mu.densities()) m += d.mass();
    return m;
}

double tail_mass(const RadialMeasure& mu, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("tail_mass: t must lie in (0,1]");
    double m = 0.0;
    for (const Atom& a : mu.atoms())
        if (a.x < 1.0 && a.x >= 1.0 - t) m += a.mass;
    for (const Density& d : mu.densities()) m += density_tail(d, t);
    return m;
}

namespace {

// Closed-form integral of (1-r)^{-s} against one density, if available.
DivergibleValue density_singular_moment(const Density& d, double s) {
    switch (d.kind) {
        case DensityKind::power:
            if (d.beta - s > -1.0) return DivergibleValue::of(d.kappa / (d.beta - s + 1.0));
            return DivergibleValue::divergent(s - d.beta - 1.0);
        case DensityKind::nu_alpha:
            if (s < 2.0 - d.alpha)
                return DivergibleValue::of(std::exp(std::lgamma(2.0 - d.alpha - s) - std::lgamma(1.0 - s) -
                                                    std::lgamma(2.0 - d.alpha)));
            return DivergibleValue::divergent(s - (2.0 - d.alpha));
        case DensityKind::tabulated:
            return DivergibleValue::of(
                radial::integrate_density<double>(d, -s, 0.5, [](double, double) { return 1.0; }));
    }
    return DivergibleValue::of(0.0);
}

DivergibleValue combine(DivergibleValue acc, DivergibleValue part) {
    if (!acc.finite || !part.finite) {
        double g = std::max(acc.finite ? -kInf : acc.growth_exponent, part.finite ? -kInf : part.growth_exponent);
        return DivergibleValue::divergent(g);
    }
    return DivergibleValue::of(acc.value + part.value);
}

void check_s(double s) {
    if (!(s >= 0.0 && s < 1.0)) throw DomainError("singular moment: s must lie in [0,1)");
}

}  // namespace

DivergibleValue singular_moment(const RadialMeasure& mu, double s) {
    check_s(s);
    DivergibleValue acc = DivergibleValue::of(0.0);
    for (const Atom& a : mu.atoms()) {
        if (a.x < 1.0)
            acc = combine(acc, DivergibleValue::of(a.mass * std::pow(1.0 - a.x, -s)));
        else
            acc = combine(acc, s > 0.0 ? DivergibleValue::divergent(s) : DivergibleValue::of(a.mass));
    }
    for (const Density& d : mu.densities()) acc = combine(acc, density_singular_moment(d, s));
    return acc;
}

DivergibleValue singular_moment_sq(const RadialMeasure& mu, double s) {
    check_s(s);
    DivergibleValue acc = DivergibleValue::of(0.0);
    for (const Atom& a : mu.atoms()) {
        if (a.x < 1.0)
            acc = combine(acc, DivergibleValue::of(a.mass * std::pow((1.0 - a.x) * (1.0 + a.x), -s)));
        else
            acc = combine(acc, s > 0.0 ? DivergibleValue::divergent(s) : DivergibleValue::of(a.mass));
    }
    for (const Density& d : mu.densities()) {
        DivergibleValue plain = density_singular_moment(d, s);
        if (!plain.finite) {
            acc = combine(acc, plain);
            continue;
        }
        double v = radial::integrate_density<double>(d, -s, 0.5,
                                                     [s](double r, double) { return std::pow(1.0 + r, -s); });
        acc = combine(acc, DivergibleValue::of(v));
    }
    return acc;
}

double truncated_singular_moment(const RadialMeasure& mu, double s, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw DomainError("truncated_singular_moment: eps must lie in (0,1/2)");
    double v = 0.0;
    for (const Atom& a : mu.atoms())
        if (a.x <= 1.0 - eps) v += a.mass * std::pow(1.0 - a.x, -s);
    v += radial::integrate_densities<double>(mu, -s, eps, [](double, double) { return 1.0; }, {}, eps);
    return v;
}

namespace {

struct ProbeData {
    std::vector<double> values;
    double ratio = 0.0;  // last increment over previous increment
};

ProbeData probe_values(const std::function<double(double)>& truncated) {
    ProbeData d;
    for (int k = 1; k <= 6; ++k) d.values.push_back(truncated(std::pow(10.0, -2.0 * k)));
    std::size_t n = d.values.size();
    double d1 = d.values[n - 2] - d.values[n - 3];
    double d2 = d.values[n - 1] - d.values[n - 2];
    d.ratio = d1 > 0.0 ? d2 / d1 : (d2 > 0.0 ? kInf : 0.0);
    return d;
}

// Increments of a truncated integral scale like eps^{delta} per level; they stop
// decaying exactly when the integral diverges.
bool increments_diverge(double ratio) { return ratio >= 1.0 - 1e-6; }

}  // namespace

DivergibleValue probe_truncation(const std::function<double(double)>& truncated) {
    ProbeData d = probe_values(truncated);
    const auto& v = d.values;
    std::size_t n = v.size();
    if (increments_diverge(d.ratio)) {
        // eps drops by 100 per level, so increments grow by 100^p.
        double p = std::abs(d.ratio - 1.0) < 0.05 ? 0.0 : std::log(d.ratio) / std::log(100.0);
        return DivergibleValue::divergent(std::max(p, 0.0));
    }
    double d1 = v[n - 2] - v[n - 3];
    double d2 = v[n - 1] - v[n - 2];
    double denom = d2 - d1;
    if (d2 <= 0.0 || denom == 0.0) return DivergibleValue::of(v.back());
    return DivergibleValue::of(v.back() - d2 * d2 / denom);
}

CriticalIndex critical_index(const RadialMeasure& mu) {
    CriticalIndex ci;
    if (mu.has_atom_at_one()) {
        ci.c = 1.0;
        ci.attained = Attainment::yes;
        ci.s0 = ci.s0_lo = ci.s0_hi = 0.0;
        return ci;
    }
    double s0 = 1.0;
    bool singular = false;
    for (const Density& d : mu.densities()) {
        double e = d.boundary_exponent();
        if (e < 0.0 && e + 1.0 < s0) {
            s0 = e + 1.0;
            singular = true;
        }
    }
    ci.s0 = ci.s0_lo = ci.s0_hi = s0;
    ci.c = 2.0 / (2.0 - s0);
    ci.attained = singular ? Attainment::no : Attainment::unknown;
    return ci;
}

CriticalIndex critical_index_bisect(const RadialMeasure& mu, double tol) {
    CriticalIndex ci;
    ci.closed_form = false;
    if (mu.has_atom_at_one()) {
        ci.c = 1.0;
        ci.attained = Attainment::yes;
        ci.s0 = ci.s0_lo = ci.s0_hi = 0.0;
        return ci;
    }
    auto diverges = [&](double s) {
        return increments_diverge(probe_values([&](double eps) { return truncated_singular_moment(mu, s, eps); }).ratio);
    };
    double lo = 0.0;
    double hi = 1.0;
    if (!diverges(1.0 - tol)) {
        lo = 1.0 - tol;
    } else {
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            if (diverges(mid))
                hi = mid;
            else
                lo = mid;
        }
    }
    ci.s0_lo = lo;
    ci.s0_hi = hi;
    ci.s0 = 0.5 * (lo + hi);
    ci.c = 2.0 / (2.0 - ci.s0);
    ci.attained = Attainment::unknown;
    return ci;
}

DivergibleValue carleson_constant(const RadialMeasure& mu, double a, int depth) {
    if (!(a >= 0.0)) throw DomainError("carleson_constant: a must be >= 0");
    const double at_one = mu.mass_at_one();
    double lead = kInf;
    if (at_one > 0.0) lead = 0.0;
    for (const Density& d : mu.densities()) lead = std::min(lead, d.boundary_exponent() + 1.0);
    if (a > lead + 1e-9) return DivergibleValue::divergent(a - lead);

    auto ratio = [&](double t) { return (tail_mass(mu, t) + at_one) / std::pow(t, a); };
    std::vector<double> candidates;
    for (int j = 0; j <= depth; ++j) candidates.push_back(std::exp2(-j));
    for (const Atom& at : mu.atoms())
        if (at.x < 1.0 && at.x > 0.0) candidates.push_back(1.0 - at.x);
    double best = 0.0;
    double best_t = 1.0;
    for (double t : candidates) {
        double v = ratio(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    // Golden-section refinement in log t around the best candidate, for an
    // interior maximum of a smooth tail.
    double lo = std::log(std::max(best_t / 2.0, std::exp2(-depth)));
    double hi = std::log(std::min(best_t * 2.0, 1.0));
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = ratio(std::exp(x1));
    double f2 = ratio(std::exp(x2));
    for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = ratio(std::exp(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = ratio(std::exp(x2));
        }
    }
    best = std::max({best, f1, f2});
    return DivergibleValue::of(best);
}

DivergibleValue hyperbolic_integral(const RadialMeasure& mu) {
    DivergibleValue acc = DivergibleValue::of(0.0);
    for (const Atom& a : mu.atoms())
        if (a.x < 1.0) acc = combine(acc, DivergibleValue::of(a.mass / ((1.0 - a.x) * (1.0 + a.x))));
    for (const Density& d : mu.densities()) {
        double e = d.boundary_exponent();
        if (e <= 0.0) {
            acc = combine(acc, DivergibleValue::divergent(-e));
            continue;
        }
        double v = d.kind == DensityKind::tabulated
                       ? radial::integrate_density<double>(d, 0.0, 0.5,
                                                           [](double r, double u) { return 1.0 / ((1.0 + r) * u); })
                       : radial::integrate_density<double>(d, -1.0, 0.5,
                                                           [](double r, double) { return 1.0 / (1.0 + r); });
        acc = combine(acc, DivergibleValue::of(v));
    }
    return acc;
}

}  // namespace shimorin
