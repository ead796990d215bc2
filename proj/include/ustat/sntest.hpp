#pragma once

#include <optional>
#include <vector>

#include "ustat/gaussmc.hpp"
#include "ustat/kernels.hpp"
#include "ustat/useq.hpp"

namespace ustat {

struct RelevantTestConfig {
  double delta = 0.0;  // tolerance Delta >= 0
  double alpha = 0.05;
  int lambda_grid_size = 0;  // 0: use min(n1, n2); explicit values must be >= 8
  int w_paths = 100000;      // paths for the W limit simulation
  int w_grid = 2048;         // cells for the W integral
  RngSpec rng;
  // Studies that run many tests at the same alpha reuse one simulated
  // quantile; the limit law is pivotal, so this loses nothing.
  std::optional<double> precomputed_q;
  int threads = 1;
};

struct SNReport {
  double S = 0.0;
  double D1 = 0.0;  // D(1)
  double V = 0.0;   // self-normalizer, sqrt of V^2
  double q = 0.0;   // simulated (1-alpha) quantile of W
  bool reject = false;
  double N = 0.0;  // effective sample size n1 n2 / (n1 + n2)
  bool degenerate_v = false;
  int lambda_grid_size = 0;
};

// D(lambda) = |U^(1)_{floor(lambda n1)} - U^(2)_{floor(lambda n2)}|_2^2,
// zero whenever either index is below 2. The grid must be ascending, lie in
// (0, 1] and end at exactly 1.
std::vector<double> distance_process(const Sample& x, const Sample& y, const KernelSpec& spec,
                                     const std::vector<double>& lambda_grid);

// V^2 = integral_0^1 [lambda N (D(lambda) - D(1))]^2 d lambda, left-endpoint
// rule on the grid with an implicit zero-valued cell head at lambda = 0.
double self_normalizer_sq(const std::vector<double>& D, const std::vector<double>& lambda_grid,
                          double N);

// Two-sample relevant test of H0: |theta1 - theta2|_2^2 <= delta. When V = 0
// (constant data) S is reported as a signed infinity with degenerate_v set.
SNReport run_relevant_test(const Sample& x, const Sample& y, const KernelSpec& spec,
                           const RelevantTestConfig& cfg);

}  // namespace ustat
