#pragma once

#include "shimorin/measure.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace shimorin {

using Rational = boost::rational<long long>;

/// Exponent in [1, inf]; infinity is a flag, never a float sentinel.
struct Exponent {
    bool infinite = false;
    double value = 0.0;
    /// Exact value when the input was an integer, fraction or short decimal.
    std::optional<Rational> exact;

    static Exponent of(double v);
    static Exponent of(Rational r);
    static Exponent inf();
    /// Accepts "inf", "4/3", "2", "1.25".
    static Exponent parse(const std::string& s);

    std::string str() const;
};

/// 1/e, exact when possible.
struct Reciprocal {
    double value = 0.0;
    std::optional<Rational> exact;
};
Reciprocal reciprocal(const Exponent& e);

enum class Verdict { bounded, unbounded, critical_line_interior, critical_endpoint_1_c, critical_endpoint_cprime_inf };

std::string to_string(Verdict v);

struct RegionVerdict {
    Verdict verdict = Verdict::unbounded;
    /// "a", "b", "c", "d" for sufficiency clauses; "nec-p1", "nec-qinf",
    /// "nec-below" for necessity; "critical" on the boundary line.
    std::string clause;
    /// Endpoint substitute target: "weak L^{c,inf}" or "Bloch"; empty otherwise.
    std::string substitute;
};

inline constexpr double kCriticalTolerance = 1e-9;

/// Boundedness of T_nu : L^p -> L^q from c_nu alone. On the critical line the
/// answer depends on the measure; see standard_estimate.
RegionVerdict region_verdict(const Exponent& c, const Exponent& p, const Exponent& q, double tol = kCriticalTolerance);
RegionVerdict region_verdict(double c, const Exponent& p, const Exponent& q, double tol = kCriticalTolerance);

struct StandardEstimate {
    bool holds = false;
    double c_nu = 0.0;
    /// "finite measure", "Carleson" or "hyperbolic".
    std::string branch;
    double witness = 0.0;
    std::string reason;
};

/// The condition deciding boundedness on the critical line, by branch of c_nu.
StandardEstimate standard_estimate(const RadialMeasure& mu);

struct GridCell {
    Reciprocal inv_p;
    Reciprocal inv_q;
    RegionVerdict verdict;
};

/// Verdicts at cell centres ((i+1/2)/n, (j+1/2)/n) of the (1/p, 1/q) square.
/// With include_edges, also at 1/p in {0, 1 - 1/c, 1} and 1/q in {0, 1}.
std::vector<GridCell> region_grid(const Exponent& c, int resolution, bool include_edges = false);

}  // namespace shimorin
