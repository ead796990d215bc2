#include "ustat/cpdetect.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ustat {

namespace {

void validate_drift(const DriftSpec& spec) {
  if (spec.mu1.size() == 0 || spec.mu1.size() != spec.mu2.size() ||
      spec.mu1.size() != spec.mu12.size())
    throw InputError("DriftSpec: mu1, mu2, mu12 must be nonempty and share a dimension");
  if (!(spec.tau_star > 0.0 && spec.tau_star < 1.0))
    throw InputError("DriftSpec: tau_star must lie in (0,1)");
  if (!((spec.mu2 - spec.mu1).norm() > 0.0)) throw InputError("DriftSpec: mu2 must differ from mu1");
}

}  // namespace

SeqPath cusum_process(const Sample& sample, const KernelSpec& spec) {
  const int n = sample.n();
  if (n < 4) throw InputError("cusum_process: need n >= 4");
  const int p = sample.p();
  const int d = kernel_dimension(spec, p);

  // Forward row sums C_i = sum_{j>i} h(X_i, X_j) feed the suffix statistic,
  // backward row sums R_j = sum_{i<j} h(X_i, X_j) feed the prefix; one kernel
  // evaluation per pair covers both.
  std::vector<long double> fwd(static_cast<std::size_t>(n) * d, 0.0L);
  std::vector<long double> bwd(static_cast<std::size_t>(n) * d, 0.0L);
  std::vector<double> buf(d);
  int ci = 0;
  int cj = 0;
  try {
    for (int i = 0; i < n - 1; ++i) {
      const std::span<const double> xi{sample.row(i), static_cast<std::size_t>(p)};
      for (int j = i + 1; j < n; ++j) {
        ci = i;
        cj = j;
        eval_kernel(spec, xi, {sample.row(j), static_cast<std::size_t>(p)}, buf);
        for (int l = 0; l < d; ++l) {
          fwd[static_cast<std::size_t>(i) * d + l] += buf[l];
          bwd[static_cast<std::size_t>(j) * d + l] += buf[l];
        }
      }
    }
  } catch (const DegeneratePairError& e) {
    throw DegeneratePairError(std::string(e.what()) + " (observations " + std::to_string(ci + 1) +
                              " and " + std::to_string(cj + 1) + ")");
  }

  SeqPath path;
  path.values.resize(n - 3, d);
  path.k_start = 2;
  path.k_end = n - 2;
  path.n = n;
  path.kernel_evals = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  // prefix[k] = sum of all pairs within observations 1..k; suffix[k] = sum of
  // all pairs within k+1..n (every such pair's smaller index is >= k+1).
  std::vector<long double> prefix(d, 0.0L);
  std::vector<long double> suffix(d, 0.0L);
  for (int i = 2; i < n; ++i)
    for (int l = 0; l < d; ++l) suffix[l] += fwd[static_cast<std::size_t>(i) * d + l];
  for (int l = 0; l < d; ++l)
    prefix[l] = bwd[d + l];  // pairs within {1, 2}: row sum of observation 2

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (int k = 2; k <= n - 2; ++k) {
    const long double pre_pairs = static_cast<long double>(k) * (k - 1) / 2;
    const long double suf_pairs =
        static_cast<long double>(n - k) * (n - k - 1) / 2;
    const double frac = static_cast<double>(k) / n;
    const double coef = sqrt_n * frac * (1.0 - frac);
    for (int l = 0; l < d; ++l)
      path.values(k - 2, l) =
          coef * static_cast<double>(prefix[l] / pre_pairs - suffix[l] / suf_pairs);
    if (k <= n - 3) {
      for (int l = 0; l < d; ++l) {
        prefix[l] += bwd[static_cast<std::size_t>(k) * d + l];
        suffix[l] -= fwd[static_cast<std::size_t>(k) * d + l];
      }
    }
  }
  return path;
}

CusumStatistic cusum_statistic(const SeqPath& path) {
  if (path.values.rows() == 0) throw InputError("cusum_statistic: empty path");
  CusumStatistic stat;
  double best2 = -1.0;
  for (Eigen::Index r = 0; r < path.values.rows(); ++r) {
    const double nrm2 = path.values.row(r).squaredNorm();
    if (nrm2 > best2) {
      best2 = nrm2;
      stat.k_hat = path.k_start + static_cast<int>(r);
    }
  }
  stat.T_n = std::sqrt(best2);
  return stat;
}

CusumResult detect_change(const Sample& sample, const KernelSpec& spec, double alpha, int n_paths,
                          const RngSpec& rng, int threads) {
  if (sample.n() < 5) throw InputError("detect_change: need n >= 5");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("detect_change: alpha must lie in (0,1)");
  if (n_paths < 1000) throw InputError("detect_change: need n_paths >= 1000");

  CusumResult result;
  result.path = cusum_process(sample, spec);
  const CusumStatistic stat = cusum_statistic(result.path);
  result.T_n = stat.T_n;
  result.k_hat = stat.k_hat;
  result.tau_hat = static_cast<double>(stat.k_hat) / sample.n();

  const JackknifeResult jack = jackknife_projections(sample, spec);
  const CovarianceEstimate cov = covariance_estimate(jack.projections);
  result.sigma_min_eigenvalue = cov.min_eigenvalue;
  result.sigma_clipped_mass = cov.clipped_mass;

  // The CUSUM maxes over n-3 indices, so the bridge grid must be at least as
  // fine to avoid systematic undercoverage of the sup.
  const int grid = std::max(sample.n(), 512);
  const BridgePathSet bridge = brownian_bridge_sups(cov.root, grid, n_paths, rng, threads);
  result.q = sup_quantile(bridge, alpha);
  result.bridge_paths_used = n_paths;
  result.reject = result.T_n > result.q;
  return result;
}

double drift_V(const DriftSpec& spec, double t) {
  validate_drift(spec);
  if (!(t > 0.0 && t < 1.0)) throw InputError("drift_V: t must lie in (0,1)");
  const Vector delta = spec.mu2 - spec.mu1;
  const double dn = delta.norm();
  const double tau = spec.tau_star;
  if (t <= tau) {
    const Vector inner = (1.0 - tau) * (1.0 - tau) * (-delta) / dn +
                         2.0 * (tau - t) * (1.0 - tau) * (spec.mu1 - spec.mu12) / dn;
    return (t / (1.0 - t)) * inner.norm();
  }
  const Vector inner =
      tau * tau * (-delta) / dn + 2.0 * tau * (t - tau) * (spec.mu12 - spec.mu2) / dn;
  return ((1.0 - t) / t) * inner.norm();
}

bool check_geometric_constraints(const DriftSpec& spec) {
  validate_drift(spec);
  const Vector delta = spec.mu2 - spec.mu1;
  const double d2 = delta.squaredNorm();
  const double first = 2.0 * spec.tau_star * delta.dot(spec.mu1 - spec.mu12);
  const double second = 2.0 * (1.0 - spec.tau_star) * delta.dot(spec.mu12 - spec.mu2);
  return first < d2 && second < d2;
}

}  // namespace ustat
