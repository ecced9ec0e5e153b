#include "stretchlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stretchlab/rng.hpp"

namespace stretchlab {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) {
    throw std::invalid_argument("quantile: empty sample");
  }
  if (q < 0.0 || q > 1.0) {
    throw std::invalid_argument("quantile: q outside [0,1]");
  }
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, q);
}

double mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double proportion_se(double p_hat, std::size_t n) {
  if (n == 0) throw std::invalid_argument("proportion_se: n = 0");
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  if (alpha <= 0.0 || alpha >= 1.0) {
    throw std::invalid_argument("ks_two_sample: alpha outside (0,1)");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto m = a.size(), n = b.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < m && j < n) {
    // Advance both samples past the next value so ties count once, at the
    // common jump of the two step functions.
    const double x = std::min(a[i], b[j]);
    while (i < m && a[i] == x) ++i;
    while (j < n && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / static_cast<double>(m) -
                              static_cast<double>(j) / static_cast<double>(n)));
  }
  KsResult res;
  res.statistic = d;
  res.threshold = std::sqrt(std::log(2.0 / alpha) / 2.0) *
                  std::sqrt(static_cast<double>(m + n) /
                            (static_cast<double>(m) * static_cast<double>(n)));
  res.reject = d > res.threshold;
  return res;
}

double bootstrap_se(const std::vector<double>& values,
                    const std::function<double(const std::vector<double>&)>& stat,
                    int replicates, std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("bootstrap_se: empty sample");
  if (replicates < 2) throw std::invalid_argument("bootstrap_se: replicates < 2");
  Xoshiro256PlusPlus rng(seed);
  const std::size_t n = values.size();
  std::vector<double> resample(n);
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(replicates));
  for (int r = 0; r < replicates; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      if (idx >= n) idx = n - 1;
      resample[k] = values[idx];
    }
    stats.push_back(stat(resample));
  }
  const double m = mean(stats);
  double ss = 0.0;
  for (double s : stats) ss += (s - m) * (s - m);
  return std::sqrt(ss / static_cast<double>(stats.size() - 1));
}

}  // namespace stretchlab
