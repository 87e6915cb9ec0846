#include "pommer/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pommer {

std::vector<double> gae(const std::vector<double>& rewards, const std::vector<double>& values,
                        double gamma, double lambda) {
  if (values.size() != rewards.size() + 1)
    throw std::invalid_argument("gae: values must be one longer than rewards");
  std::vector<double> advantages(rewards.size(), 0.0);
  double acc = 0.0;
  for (size_t i = rewards.size(); i-- > 0;) {
    double delta = rewards[i] + gamma * values[i + 1] - values[i];
    acc = delta + gamma * lambda * acc;
    advantages[i] = acc;
  }
  return advantages;
}

MovingAverage moving_average(const std::vector<double>& series, size_t window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  if (series.empty()) return {};
  size_t w = std::min(window, series.size());
  size_t points = (window > series.size()) ? 1 : series.size() - w + 1;
  MovingAverage out;
  out.mean.reserve(points);
  out.lower.reserve(points);
  out.upper.reserve(points);
  for (size_t i = 0; i < points; ++i) {
    double sum = 0, sq = 0;
    for (size_t j = i; j < i + w; ++j) {
      sum += series[j];
      sq += series[j] * series[j];
    }
    double mean = sum / static_cast<double>(w);
    double var = std::max(0.0, sq / static_cast<double>(w) - mean * mean);
    double band = 1.96 * std::sqrt(var);
    out.mean.push_back(mean);
    out.lower.push_back(mean - band);
    out.upper.push_back(mean + band);
  }
  return out;
}

std::vector<bool> jitter_flags(const std::vector<Pos>& positions, int dormancy_threshold) {
  if (positions.empty()) throw std::invalid_argument("jitter_flags: empty position series");
  size_t n = positions.size();
  size_t thr = static_cast<size_t>(dormancy_threshold);
  std::vector<bool> flags(n, false);

  // dormant runs: maximal stretches on a single cell
  for (size_t i = 0; i < n;) {
    size_t j = i + 1;
    while (j < n && positions[j] == positions[i]) ++j;
    if (j - i > thr)
      for (size_t k = i; k < j; ++k) flags[k] = true;
    i = j;
  }

  // alternation runs: strict p,q,p,q,... between two adjacent cells
  for (size_t i = 0; i + 1 < n;) {
    if (!(adjacent(positions[i], positions[i + 1]))) {
      ++i;
      continue;
    }
    size_t j = i + 2;
    while (j < n && positions[j] == positions[j - 2]) ++j;
    if (j - i > thr)
      for (size_t k = i; k < j; ++k) flags[k] = true;
    i = j - 1;  // the trailing pair may seed a new alternation
  }
  return flags;
}

std::vector<double> jitter_bins(const std::vector<Pos>& positions, int dormancy_threshold,
                                int bin) {
  std::vector<bool> flags = jitter_flags(positions, dormancy_threshold);
  size_t bins = (flags.size() + static_cast<size_t>(bin) - 1) / static_cast<size_t>(bin);
  std::vector<double> out(bins, 0.0);
  for (size_t i = 0; i < flags.size(); ++i)
    if (flags[i]) out[i / static_cast<size_t>(bin)] += 1.0;
  for (double& v : out) v /= static_cast<double>(bin);
  return out;
}

std::vector<double> average_bins(const std::vector<std::vector<double>>& per_game) {
  size_t width = 0;
  for (const auto& g : per_game) width = std::max(width, g.size());
  std::vector<double> out(width, 0.0);
  if (per_game.empty()) return out;
  for (const auto& g : per_game)
    for (size_t i = 0; i < g.size(); ++i) out[i] += g[i];
  for (double& v : out) v /= static_cast<double>(per_game.size());
  return out;
}

}  // namespace pommer
