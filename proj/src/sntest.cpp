#include "ustat/sntest.hpp"

#include <cmath>
#include <limits>

namespace ustat {

namespace {

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InputError("lambda grid must be nonempty");
  double prev = 0.0;
  for (double lam : grid) {
    if (!(lam > 0.0 && lam <= 1.0)) throw InputError("lambda grid values must lie in (0, 1]");
    if (!(lam > prev)) throw InputError("lambda grid must be strictly ascending");
    prev = lam;
  }
  if (grid.back() != 1.0) throw InputError("lambda grid must end at exactly 1");
}

}  // namespace

std::vector<double> distance_process(const Sample& x, const Sample& y, const KernelSpec& spec,
                                     const std::vector<double>& lambda_grid) {
  if (x.p() != y.p()) throw InputError("distance_process: samples must share p");
  validate_grid(lambda_grid);

  const SeqPath ux = sequential_ustat(x, spec);
  const SeqPath uy = sequential_ustat(y, spec);
  const int n1 = x.n();
  const int n2 = y.n();

  std::vector<double> D;
  D.reserve(lambda_grid.size());
  for (double lam : lambda_grid) {
    const int k1 = static_cast<int>(std::floor(lam * n1));
    const int k2 = static_cast<int>(std::floor(lam * n2));
    if (k1 < 2 || k2 < 2) {
      D.push_back(0.0);
      continue;
    }
    D.push_back((ux.at(k1) - uy.at(k2)).squaredNorm());
  }
  return D;
}

double self_normalizer_sq(const std::vector<double>& D, const std::vector<double>& lambda_grid,
                          double N) {
  if (lambda_grid.empty()) throw InputError("self_normalizer_sq: empty grid");
  if (D.size() != lambda_grid.size())
    throw InputError("self_normalizer_sq: D and grid must have equal length");

  // Left-endpoint rule; the head cell [0, lambda_1] contributes zero because
  // the integrand vanishes at lambda = 0 by the D convention.
  const double d_end = D.back();
  long double acc = 0.0L;
  for (std::size_t j = 0; j + 1 < lambda_grid.size(); ++j) {
    const double f = lambda_grid[j] * N * (D[j] - d_end);
    acc += static_cast<long double>(f) * f * (lambda_grid[j + 1] - lambda_grid[j]);
  }
  return static_cast<double>(acc);
}

SNReport run_relevant_test(const Sample& x, const Sample& y, const KernelSpec& spec,
                           const RelevantTestConfig& cfg) {
  if (x.n() < 4 || y.n() < 4) throw InputError("run_relevant_test: need n1, n2 >= 4");
  if (!(cfg.delta >= 0.0)) throw InputError("run_relevant_test: delta must be >= 0");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw InputError("run_relevant_test: alpha must lie in (0,1)");
  if (cfg.lambda_grid_size != 0 && cfg.lambda_grid_size < 8)
    throw InputError("run_relevant_test: lambda_grid_size must be 0 (auto) or >= 8");

  // D(lambda) only moves when floor(lambda n_i) increments, so the default
  // grid j/m with m = min(n1, n2) is as fine as the data can resolve.
  const int m = cfg.lambda_grid_size > 0 ? cfg.lambda_grid_size : std::min(x.n(), y.n());
  std::vector<double> grid(m);
  for (int j = 1; j <= m; ++j) grid[j - 1] = static_cast<double>(j) / m;

  const std::vector<double> D = distance_process(x, y, spec, grid);
  const double n1 = x.n();
  const double n2 = y.n();
  const double N = n1 * n2 / (n1 + n2);
  const double V2 = self_normalizer_sq(D, grid, N);
  const double V = std::sqrt(V2);
  const double D1 = D.back();

  SNReport report;
  report.D1 = D1;
  report.V = V;
  report.N = N;
  report.lambda_grid_size = m;
  report.q = cfg.precomputed_q
                 ? *cfg.precomputed_q
                 : scalar_quantile(
                       sn_limit_sample(cfg.w_paths, cfg.w_grid, cfg.rng, cfg.threads), cfg.alpha);

  if (V > 0.0) {
    report.S = N * (D1 - cfg.delta) / V;
  } else {
    report.degenerate_v = true;
    const double inf = std::numeric_limits<double>::infinity();
    report.S = D1 > cfg.delta ? inf : (D1 < cfg.delta ? -inf : 0.0);
  }
  report.reject = report.S > report.q;
  return report;
}

}  // namespace ustat
