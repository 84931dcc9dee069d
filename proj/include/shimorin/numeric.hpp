#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace shimorin {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached Gauss-Legendre rule; thread-safe.
const GaussRule& gauss_legendre(int n);

/// Pairwise (tree) sum; the result does not depend on thread count.
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Number of worker threads, capped by SHIMORIN_LAB_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write into index-addressed slots so results are thread-count independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace shimorin
