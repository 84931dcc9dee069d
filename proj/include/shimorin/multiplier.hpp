#pragma once

#include "shimorin/measure.hpp"
#include "shimorin/radial_quadrature.hpp"
#include "shimorin/verdict.hpp"

#include <string>
#include <vector>

namespace shimorin {

/// m_0..m_N of T_nu acting on Taylor coefficients.
struct MultiplierSequence {
    std::string measure_id;
    std::vector<double> values;
    /// Relative tolerance the values were computed to.
    double quadrature_budget = 0.0;
    std::string route;

    double operator[](std::size_t n) const { return values[n]; }
    std::size_t size() const { return values.size(); }
};

struct MomentOptions {
    /// Recompute densities with a coarser rule and throw QuadratureError on mismatch.
    bool verify = true;
    double tolerance = 1e-9;
    radial::Options quad{};
};

/// m_n by direct quadrature of (1 - r^{n+1}) / ((n+1)(1-r)).
double moment(const RadialMeasure& mu, long n, const MomentOptions& opt = {});

/// Power moments int r^k dnu, k = 0..N, from closed-form recurrences.
std::vector<double> power_moments(const RadialMeasure& mu, long N);

/// m_0..m_N as running averages of the power moments; checks monotonicity.
MultiplierSequence moment_prefix(const RadialMeasure& mu, long N);

struct Envelope {
    double lower = 0.0;
    double upper = 0.0;
};

/// I_n = int min{1, 1/((n+1)t)} d(pushforward under t = 1-r), returned as
/// ((1 - 1/e) I_n, I_n).
Envelope claim1_envelope(const RadialMeasure& mu, long n);

/// Same envelope with every density component done by quadrature.
Envelope claim1_envelope_quadrature(const RadialMeasure& mu, long n);

struct DecayEstimate {
    double slope = 0.0;
    bool unstable = false;
    double first_half_slope = 0.0;
    double second_half_slope = 0.0;
    std::size_t points = 0;
};

/// Upper-envelope slope of log m_n against log(n+1), n on a 1.25-geometric grid.
DecayEstimate decay_exponent_estimate(const RadialMeasure& mu, long N);

/// Slope fit used by decay_exponent_estimate, exposed for tests.
double envelope_slope(const std::vector<double>& x, const std::vector<double>& y);

struct SeriesResult {
    double partial_sum = 0.0;
    GrowthVerdict verdict = GrowthVerdict::plateaued;
    std::vector<double> block_sums;
};

/// Partial sum of m_n (n+1)^{s-1} for n <= N, with a dyadic-block verdict.
SeriesResult series_partial(const RadialMeasure& mu, double s, long N);

/// Empirical subsequence {n <= N : m_n >= (n+1)^{-s0-eps}}.
std::vector<long> empirical_subsequence(const MultiplierSequence& m, double s0, double eps = 0.05);

}  // namespace shimorin
