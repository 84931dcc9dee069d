#pragma once

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shimorin {

struct Atom {
    double x = 0.0;
    double mass = 0.0;
};

enum class DensityKind { power, nu_alpha, tabulated };

/// One absolutely continuous component of a radial measure.
struct Density {
    DensityKind kind = DensityKind::power;
    double kappa = 1.0;  // power
    double beta = 0.0;   // power
    double alpha = 1.5;  // nu_alpha
    std::vector<double> r;       // tabulated breakpoints, increasing, within [0,1]
    std::vector<double> values;  // tabulated density values, linear between breakpoints

    static Density power(double kappa, double beta);
    static Density nu_alpha(double alpha);
    static Density lebesgue() { return power(1.0, 0.0); }
    static Density tabulated(std::vector<double> r, std::vector<double> values);

    /// Density value at r in [0,1).
    double operator()(double r) const;
    /// Exponent e such that the density behaves like (1-r)^e at r -> 1.
    double boundary_exponent() const;
    double mass() const;
    std::string describe() const;
};

/// Finite positive radial measure on [0,1]: atoms plus catalog densities.
class RadialMeasure {
public:
    RadialMeasure() = default;
    RadialMeasure(std::vector<Atom> atoms, std::vector<Density> densities);

    static RadialMeasure delta(double x, double mass = 1.0);
    static RadialMeasure lebesgue();
    static RadialMeasure power(double kappa, double beta);
    static RadialMeasure nu_alpha(double alpha);

    /// Parses the JSON measure spec; throws ConfigError.
    static RadialMeasure from_json(const nlohmann::json& spec);
    /// Accepts inline JSON, a catalog shorthand (e.g. "lebesgue", "delta1",
    /// "nu_alpha:1.5", "power:1,-0.5"), or a path to a JSON file.
    static RadialMeasure parse(const std::string& text);

    nlohmann::json to_json() const;
    std::string id() const;

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Density>& densities() const { return densities_; }

    bool empty() const { return atoms_.empty() && densities_.empty(); }
    double mass_at_one() const;
    bool has_atom_at_one() const { return mass_at_one() > 0.0; }

    RadialMeasure operator+(const RadialMeasure& other) const;

private:
    std::vector<Atom> atoms_;
    std::vector<Density> densities_;
};

/// Either a finite non-negative value or a divergence with its blow-up rate.
struct DivergibleValue {
    bool finite = true;
    double value = 0.0;
    /// Rate p at which truncated integrals grow like eps^{-p}; 0 means logarithmic.
    double growth_exponent = 0.0;

    static DivergibleValue of(double v) { return {true, v, 0.0}; }
    static DivergibleValue divergent(double rate) { return {false, 0.0, rate}; }
};

enum class Attainment { unknown, yes, no };

struct CriticalIndex {
    double c = 2.0;
    Attainment attained = Attainment::unknown;
    double s0 = 1.0;
    /// Bracket on s0; degenerate when a closed form applied.
    double s0_lo = 1.0;
    double s0_hi = 1.0;
    bool closed_form = true;
};

double total_mass(const RadialMeasure& mu);

/// nu([1-t, 1)); atoms at exactly 1 are excluded.
double tail_mass(const RadialMeasure& mu, double t);

/// Integral of (1-r)^{-s} dnu.
DivergibleValue singular_moment(const RadialMeasure& mu, double s);
/// Integral of (1-r^2)^{-s} dnu.
DivergibleValue singular_moment_sq(const RadialMeasure& mu, double s);

/// Integral of (1-r)^{-s} over [0, 1-eps] by quadrature, atoms included.
double truncated_singular_moment(const RadialMeasure& mu, double s, double eps);

/// Generic divergence probe on eps = 1e-2, 1e-4, ..., 1e-12.
DivergibleValue probe_truncation(const std::function<double(double)>& truncated);

CriticalIndex critical_index(const RadialMeasure& mu);
/// Bisection on s against the truncation probe; independent of the catalog rule.
CriticalIndex critical_index_bisect(const RadialMeasure& mu, double tol = 1e-3);

/// sup_{0<t<=1} nu([1-t,1]) / t^a. The closed interval keeps atoms at 1.
DivergibleValue carleson_constant(const RadialMeasure& mu, double a, int depth = 40);

/// Integral of (1-r^2)^{-1} over [0,1).
DivergibleValue hyperbolic_integral(const RadialMeasure& mu);

}  // namespace shimorin
