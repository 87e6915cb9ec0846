#pragma once

#include <vector>

#include "pommer/types.hpp"

namespace pommer {

// Standard GAE recursion; values carries one bootstrap entry beyond rewards.
// With lambda = 1 this equals discounted return minus the value baseline.
std::vector<double> gae(const std::vector<double>& rewards, const std::vector<double>& values,
                        double gamma = 0.99, double lambda = 0.95);

struct MovingAverage {
  std::vector<double> mean;
  std::vector<double> lower;  // mean - 1.96 * std within the window
  std::vector<double> upper;
};

// Sliding mean with a 95% variance band; a window longer than the series
// collapses to a single aggregate point.
MovingAverage moving_average(const std::vector<double>& series, size_t window);

// A step is jittery when it lies inside a maximal run longer than the
// threshold during which the agent occupies a single cell or shuttles between
// two adjacent ones.
std::vector<bool> jitter_flags(const std::vector<Pos>& positions, int dormancy_threshold = 40);

// Flagged-step fraction per fixed-width bin; the divisor is always the bin
// width, so a trailing partial bin reports a proportionally small fraction.
std::vector<double> jitter_bins(const std::vector<Pos>& positions, int dormancy_threshold = 40,
                                int bin = 50);

// Element-wise average across games; shorter games contribute zero to bins
// they never reached.
std::vector<double> average_bins(const std::vector<std::vector<double>>& per_game);

}  // namespace pommer
