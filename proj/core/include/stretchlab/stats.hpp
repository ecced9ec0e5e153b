#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace stretchlab {

// Quantile by linear interpolation on the sorted sample (the convention used
// by common statistical software, "type 7"): with N values and q in [0,1],
// let h = (N-1)q; the result interpolates between the floor(h)-th and next
// order statistic with weight h - floor(h). This exact rule is what summary
// files record, so golden outputs are stable.
double quantile_sorted(const std::vector<double>& sorted, double q);

// Convenience wrapper: copies and sorts, then quantile_sorted.
double quantile(std::vector<double> values, double q);

double mean(const std::vector<double>& values);

// Standard error of an empirical proportion: sqrt(p(1-p)/n).
double proportion_se(double p_hat, std::size_t n);

// Two-sample Kolmogorov-Smirnov test. statistic is the sup-norm distance of
// the two empirical CDFs; the rejection threshold at level alpha is
// sqrt(ln(2/alpha)/2) * sqrt((m+n)/(m*n)).
struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool reject = false;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha);

// Bootstrap standard error of an arbitrary statistic: `replicates` resamples
// with replacement, seeded deterministically; returns the sample standard
// deviation of the replicate statistics.
double bootstrap_se(const std::vector<double>& values,
                    const std::function<double(const std::vector<double>&)>& stat,
                    int replicates, std::uint64_t seed);

}  // namespace stretchlab
