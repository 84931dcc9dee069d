#include "shimorin/verdict.hpp"

#include "shimorin/errors.hpp"

#include <cstddef>

namespace shimorin {

std::string to_string(GrowthVerdict v) { return v == GrowthVerdict::growing ? "growing" : "plateaued"; }

namespace verdict {

std::vector<double> dyadic_block_sums(const std::vector<double>& terms) {
    std::vector<double> out;
    for (std::size_t lo = 1; 2 * lo <= terms.size(); lo *= 2) {
        double s = 0.0;
        for (std::size_t n = lo; n < 2 * lo; ++n) s += terms[n];
        out.push_back(s);
    }
    return out;
}

GrowthVerdict from_blocks(const std::vector<double>& b, double total) {
    if (b.size() < static_cast<std::size_t>(kWindow))
        throw DomainError("growth verdict needs at least three complete dyadic blocks");
    std::size_t n = b.size();
    for (std::size_t i = n - kWindow + 1; i < n; ++i)
        if (b[i] < b[i - 1] * (1.0 - kBlockSlack)) return GrowthVerdict::plateaued;
    if (!(b[n - 1] > kBlockFloor * total)) return GrowthVerdict::plateaued;
    return GrowthVerdict::growing;
}

GrowthVerdict from_sweep(const std::vector<double>& v) {
    if (v.size() < static_cast<std::size_t>(kWindow))
        throw DomainError("sweep verdict needs at least three values");
    std::size_t n = v.size();
    double prev_inc = 0.0;
    for (std::size_t i = n - kWindow + 1; i < n; ++i) {
        double inc = v[i] - v[i - 1];
        if (!(inc > 0.0)) return GrowthVerdict::plateaued;
        if (i > n - kWindow + 1 && inc < kIncrementRetention * prev_inc) return GrowthVerdict::plateaued;
        prev_inc = inc;
    }
    if (prev_inc < kRelativeStep * v[n - 1]) return GrowthVerdict::plateaued;
    return GrowthVerdict::growing;
}

}  // namespace verdict
}  // namespace shimorin
