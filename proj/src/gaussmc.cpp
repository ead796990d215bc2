#include "ustat/gaussmc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ustat/parallel.hpp"

namespace ustat {

PsdSqrtResult psd_sqrt(const Matrix& sigma) {
  if (sigma.rows() == 0 || sigma.rows() != sigma.cols())
    throw InputError("psd_sqrt: expected a nonempty square matrix");
  if (!sigma.allFinite()) throw InputError("psd_sqrt: matrix contains non-finite entries");
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale)
    throw InputError("psd_sqrt: matrix is not symmetric within 1e-8 tolerance");

  const Matrix sym = 0.5 * (sigma + sigma.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success)
    throw DegeneracyError("psd_sqrt: eigendecomposition failed to converge");

  const Vector lambda = es.eigenvalues();
  double clipped = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda[i] < 0.0) clipped -= lambda[i];

  const Vector sqrt_lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  PsdSqrtResult result;
  result.root = es.eigenvectors() * sqrt_lambda.asDiagonal() * es.eigenvectors().transpose();
  result.clipped_mass = clipped;
  result.min_eigenvalue = lambda.minCoeff();
  return result;
}

SeqPath gaussian_partial_sums(const Matrix& root, int n, const RngSpec& rng) {
  if (root.rows() == 0 || root.rows() != root.cols())
    throw InputError("gaussian_partial_sums: root must be a nonempty square matrix");
  if (n < 1) throw InputError("gaussian_partial_sums: n must be >= 1");
  const int d = static_cast<int>(root.rows());

  RngStream stream(rng);
  SeqPath path;
  path.values.resize(n, d);
  path.k_start = 1;
  path.k_end = n;
  path.n = n;

  std::vector<long double> acc(d, 0.0L);
  Vector xi(d);
  Vector z(d);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < d; ++l) xi[l] = stream.normal();
    z.noalias() = root * xi;
    for (int l = 0; l < d; ++l) {
      acc[l] += z[l];
      path.values(k, l) = static_cast<double>(acc[l]) * inv_sqrt_n;
    }
  }
  return path;
}

namespace {

// Cumulative standard Brownian motion rows B(j/m), j = 1..m, into a reused
// buffer of m*d doubles.
void simulate_bm(RngStream& stream, int m, int d, std::vector<double>& bm) {
  bm.resize(static_cast<std::size_t>(m) * d);
  const double step_sd = 1.0 / std::sqrt(static_cast<double>(m));
  for (int l = 0; l < d; ++l) bm[l] = step_sd * stream.normal();
  for (int j = 1; j < m; ++j) {
    double* cur = bm.data() + static_cast<std::size_t>(j) * d;
    const double* prev = cur - d;
    for (int l = 0; l < d; ++l) cur[l] = prev[l] + step_sd * stream.normal();
  }
}

}  // namespace

Matrix brownian_bridge_path(const Matrix& root, int grid_size, const RngSpec& rng) {
  if (root.rows() == 0 || root.rows() != root.cols())
    throw InputError("brownian_bridge_path: root must be a nonempty square matrix");
  if (grid_size < 2) throw InputError("brownian_bridge_path: grid_size must be >= 2");
  const int d = static_cast<int>(root.rows());
  const Matrix two_root = 2.0 * root;

  RngStream stream(rng);
  std::vector<double> bm;
  simulate_bm(stream, grid_size, d, bm);
  const double* b1 = bm.data() + static_cast<std::size_t>(grid_size - 1) * d;

  Matrix out(grid_size, d);
  Vector bridge(d);
  for (int j = 1; j <= grid_size; ++j) {
    const double t = static_cast<double>(j) / grid_size;
    const double* bj = bm.data() + static_cast<std::size_t>(j - 1) * d;
    for (int l = 0; l < d; ++l) bridge[l] = bj[l] - t * b1[l];
    out.row(j - 1) = (two_root * bridge).transpose();
  }
  return out;
}

BridgePathSet brownian_bridge_sups(const Matrix& root, int grid_size, int n_paths,
                                   const RngSpec& rng, int threads) {
  if (root.rows() == 0 || root.rows() != root.cols())
    throw InputError("brownian_bridge_sups: root must be a nonempty square matrix");
  if (grid_size < 2) throw InputError("brownian_bridge_sups: grid_size must be >= 2");
  if (n_paths < 1) throw InputError("brownian_bridge_sups: n_paths must be >= 1");
  const int d = static_cast<int>(root.rows());
  const Matrix two_root = 2.0 * root;

  BridgePathSet set;
  set.sup_norms.assign(n_paths, 0.0);
  set.n_paths = n_paths;
  set.grid_size = grid_size;

  parallel_for(static_cast<std::size_t>(n_paths), threads, [&](std::size_t path) {
    RngStream stream(rng.with_stream(rng.stream_id + path));
    thread_local std::vector<double> bm;
    simulate_bm(stream, grid_size, d, bm);
    const double* b1 = bm.data() + static_cast<std::size_t>(grid_size - 1) * d;

    // accumulate v = 2 root B0(t) column by column; two_root is col-major
    const double* rt = two_root.data();
    thread_local std::vector<double> v;
    v.assign(d, 0.0);
    double sup2 = 0.0;
    for (int j = 1; j < grid_size; ++j) {
      const double t = static_cast<double>(j) / grid_size;
      const double* bj = bm.data() + static_cast<std::size_t>(j - 1) * d;
      std::fill(v.begin(), v.end(), 0.0);
      for (int l = 0; l < d; ++l) {
        const double c = bj[l] - t * b1[l];
        const double* col = rt + static_cast<std::size_t>(l) * d;
        for (int i = 0; i < d; ++i) v[i] += c * col[i];
      }
      double nrm2 = 0.0;
      for (int i = 0; i < d; ++i) nrm2 += v[i] * v[i];
      if (nrm2 > sup2) sup2 = nrm2;
    }
    set.sup_norms[path] = std::sqrt(sup2);
  });
  return set;
}

double scalar_quantile(const std::vector<double>& values, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("quantile: alpha must lie in (0,1)");
  if (values.empty()) throw InputError("quantile: empty sample");
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const auto count = sorted.size();
  auto idx = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(count)));
  idx = std::min(std::max<std::size_t>(idx, 1), count);
  return sorted[idx - 1];
}

double sup_quantile(const BridgePathSet& paths, double alpha) {
  if (paths.n_paths < 100) throw InputError("sup_quantile: need at least 100 paths");
  return scalar_quantile(paths.sup_norms, alpha);
}

std::vector<double> sn_limit_sample(int n_paths, int grid_size, const RngSpec& rng, int threads) {
  if (grid_size < 16) throw InputError("sn_limit_sample: grid_size must be >= 16");
  if (n_paths < 100) throw InputError("sn_limit_sample: n_paths must be >= 100");

  std::vector<double> draws(n_paths, 0.0);
  const int fine = 2 * grid_size;  // half-step resolution for genuine midpoints
  parallel_for(static_cast<std::size_t>(n_paths), threads, [&](std::size_t path) {
    RngStream stream(rng.with_stream(rng.stream_id + path));
    thread_local std::vector<double> bm;
    bm.resize(fine);
    const double step_sd = 1.0 / std::sqrt(static_cast<double>(fine));
    double b = 0.0;
    for (int r = 0; r < fine; ++r) {
      b += step_sd * stream.normal();
      bm[r] = b;
    }
    const double b1 = bm[fine - 1];
    long double acc = 0.0L;
    for (int j = 1; j <= grid_size; ++j) {
      const double mid = bm[2 * j - 2];  // B((2j-1) / (2m))
      const double lam = (2.0 * j - 1.0) / (2.0 * grid_size);
      const double term = mid - lam * b1;
      acc += static_cast<long double>(term) * term;
    }
    const double integral = static_cast<double>(acc / grid_size);
    draws[path] = b1 / std::sqrt(integral);
  });
  return draws;
}

}  // namespace ustat
