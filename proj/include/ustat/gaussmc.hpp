#pragma once

#include <vector>

#include "ustat/rng.hpp"
#include "ustat/types.hpp"

namespace ustat {

struct PsdSqrtResult {
  Matrix root;
  double clipped_mass = 0.0;
  double min_eigenvalue = 0.0;
};

// Symmetric square root via full eigendecomposition, eigenvalues clipped at
// zero (clipping repairs roundoff; it is not a ridge). Input asymmetry beyond
// 1e-8 relative is an error; below that the matrix is symmetrized as
// (A + A^T)/2.
PsdSqrtResult psd_sqrt(const Matrix& sigma);

// Gaussian partial sums W_k = (1/sqrt(n)) sum_{i<=k} root * xi_i, k = 1..n,
// with xi_i i.i.d. standard normal d-vectors from the given stream.
SeqPath gaussian_partial_sums(const Matrix& root, int n, const RngSpec& rng);

struct BridgePathSet {
  std::vector<double> sup_norms;  // one per path, in path order
  int n_paths = 0;
  int grid_size = 0;
};

// One feasible bridge path: rows j = 1..grid_size hold 2 root B0(j/m) where
// B0 is a standard d-dimensional Brownian bridge built from scaled partial
// sums (the last row, t = 1, is exactly zero by construction). The resulting
// process has covariance 4 (min(s,t) - st) root root^T.
Matrix brownian_bridge_path(const Matrix& root, int grid_size, const RngSpec& rng);

// sup_{j=1..m-1} |2 root B0(j/m)|_2 per path. Path j draws from stream
// rng.stream_id + j, so the set is reproducible under any thread count.
BridgePathSet brownian_bridge_sups(const Matrix& root, int grid_size, int n_paths,
                                   const RngSpec& rng, int threads = 1);

// Empirical (1-alpha) quantile: order statistic ceil((1-alpha) n), 1-based.
double scalar_quantile(const std::vector<double>& values, double alpha);
double sup_quantile(const BridgePathSet& paths, double alpha);

// Draws of W = B(1) / [ integral_0^1 (B(t) - t B(1))^2 dt ]^{1/2} with the
// integral as a midpoint Riemann sum over grid_size cells; the Brownian path
// is simulated at half-step resolution so every cell has a genuine midpoint.
std::vector<double> sn_limit_sample(int n_paths, int grid_size, const RngSpec& rng,
                                    int threads = 1);

}  // namespace ustat
