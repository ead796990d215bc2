#pragma once

#include <vector>

namespace ustat::bench {

// Two-sample Kolmogorov-Smirnov distance sup_x |F_a(x) - F_b(x)|; handles ties
// by comparing the CDFs only after all equal values are consumed.
double ks_distance(std::vector<double> a, std::vector<double> b);

double median(std::vector<double> values);

// OLS slope of log(y) on log(x); x and y must be positive.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ustat::bench
