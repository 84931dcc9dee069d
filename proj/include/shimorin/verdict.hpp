#pragma once

// Growth-versus-plateau rules shared by series partial sums, Bergman
// membership and parameter sweeps. All thresholds live here.

#include <string>
#include <vector>

namespace shimorin {

enum class GrowthVerdict { growing, plateaued };

std::string to_string(GrowthVerdict v);

namespace verdict {

/// Number of trailing dyadic blocks (or sweep values) inspected.
inline constexpr int kWindow = 3;
/// Relative slack allowed when testing that block sums do not decrease. Block
/// sums of (n+1)^{-1} approach log 2 from above, so exact monotonicity would
/// call the harmonic series convergent; terms (n+1)^{-1-e} with e < 0.029
/// are reported growing under this slack.
inline constexpr double kBlockSlack = 0.02;
/// The last block must carry at least this fraction of the partial sum.
inline constexpr double kBlockFloor = 1e-12;
/// A sweep is growing when each of its last increments keeps at least this
/// fraction of the one before it. Logarithmic growth keeps about 1; a bounded
/// sweep converging like t^b keeps 2^{-b}, so this separates b > 0.074.
inline constexpr double kIncrementRetention = 0.95;
/// ...and the last increment is at least this fraction of the last value.
inline constexpr double kRelativeStep = 5e-3;

/// Sums of terms[n] over complete blocks [2^k, 2^{k+1}) within the range.
std::vector<double> dyadic_block_sums(const std::vector<double>& terms);

/// Growing iff the last kWindow block sums are non-decreasing and the last one
/// is above kBlockFloor times the total.
GrowthVerdict from_blocks(const std::vector<double>& block_sums, double total);

/// Verdict for a sequence of values along a dyadic parameter sweep.
GrowthVerdict from_sweep(const std::vector<double>& values);

}  // namespace verdict
}  // namespace shimorin
