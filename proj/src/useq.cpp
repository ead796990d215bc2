#include "ustat/useq.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ustat/gaussmc.hpp"

namespace ustat {

namespace {

std::span<const double> obs(const Sample& s, int i) {
  return {s.row(i), static_cast<std::size_t>(s.p())};
}

[[noreturn]] void rethrow_with_pair(const DegeneratePairError& e, int i, int j) {
  // 1-based observation indices, matching how data rows are counted.
  throw DegeneratePairError(std::string(e.what()) + " (observations " + std::to_string(i + 1) +
                            " and " + std::to_string(j + 1) + ")");
}

}  // namespace

Vector full_ustat(const Sample& sample, const KernelSpec& spec) {
  const int n = sample.n();
  const int d = kernel_dimension(spec, sample.p());
  std::vector<long double> acc(d, 0.0L);
  std::vector<double> buf(d);
  int ci = 0;
  int cj = 0;
  try {
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        ci = i;
        cj = j;
        eval_kernel(spec, obs(sample, i), obs(sample, j), buf);
        for (int l = 0; l < d; ++l) acc[l] += buf[l];
      }
    }
  } catch (const DegeneratePairError& e) {
    rethrow_with_pair(e, ci, cj);
  }
  const long double scale =
      2.0L / (static_cast<long double>(n) * static_cast<long double>(n - 1));
  Vector u(d);
  for (int l = 0; l < d; ++l) u[l] = static_cast<double>(acc[l] * scale);
  return u;
}

namespace {

// Shared prefix recurrence: P_k = P_{k-1} + sum_{i<k} h(X_i, X_k). emit is
// called once per k = 2..n with the running pair sum.
template <typename Emit>
void prefix_pair_scan(const Sample& sample, const KernelSpec& spec, Emit&& emit) {
  const int n = sample.n();
  const int d = kernel_dimension(spec, sample.p());
  std::vector<long double> acc(d, 0.0L);
  std::vector<double> buf(d);
  int ci = 0;
  int cj = 0;
  try {
    for (int k = 1; k < n; ++k) {
      for (int i = 0; i < k; ++i) {
        ci = i;
        cj = k;
        eval_kernel(spec, obs(sample, i), obs(sample, k), buf);
        for (int l = 0; l < d; ++l) acc[l] += buf[l];
      }
      emit(k + 1, acc);  // prefix now holds k+1 observations
    }
  } catch (const DegeneratePairError& e) {
    rethrow_with_pair(e, ci, cj);
  }
}

}  // namespace

SeqPath sequential_ustat(const Sample& sample, const KernelSpec& spec) {
  const int n = sample.n();
  const int d = kernel_dimension(spec, sample.p());
  SeqPath path;
  path.values.resize(n - 1, d);
  path.k_start = 2;
  path.k_end = n;
  path.n = n;
  path.kernel_evals = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  prefix_pair_scan(sample, spec, [&](int k, const std::vector<long double>& pairs) {
    const long double count = static_cast<long double>(k) * (k - 1) / 2;
    for (int l = 0; l < d; ++l)
      path.values(k - 2, l) = static_cast<double>(pairs[l] / count);
  });
  return path;
}

SeqPath sequential_T(const Sample& sample, const KernelSpec& spec, const Vector& theta) {
  const int n = sample.n();
  const int d = kernel_dimension(spec, sample.p());
  if (theta.size() != d) throw InputError("sequential_T: theta has wrong dimension");
  SeqPath path;
  path.values.resize(n - 1, d);
  path.k_start = 2;
  path.k_end = n;
  path.n = n;
  path.kernel_evals = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  prefix_pair_scan(sample, spec, [&](int k, const std::vector<long double>& pairs) {
    const long double count = static_cast<long double>(k) * (k - 1) / 2;
    const long double denom = static_cast<long double>(sqrt_n) * (k - 1);
    for (int l = 0; l < d; ++l)
      path.values(k - 2, l) =
          static_cast<double>((pairs[l] - count * static_cast<long double>(theta[l])) / denom);
  });
  return path;
}

JackknifeResult jackknife_projections(const Sample& sample, const KernelSpec& spec) {
  const int n = sample.n();
  const int d = kernel_dimension(spec, sample.p());
  std::vector<long double> rows(static_cast<std::size_t>(n) * d, 0.0L);
  std::vector<long double> total(d, 0.0L);
  std::vector<double> buf(d);
  int ci = 0;
  int cj = 0;
  try {
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        ci = i;
        cj = j;
        eval_kernel(spec, obs(sample, i), obs(sample, j), buf);
        for (int l = 0; l < d; ++l) {
          rows[static_cast<std::size_t>(i) * d + l] += buf[l];
          rows[static_cast<std::size_t>(j) * d + l] += buf[l];
          total[l] += buf[l];
        }
      }
    }
  } catch (const DegeneratePairError& e) {
    rethrow_with_pair(e, ci, cj);
  }

  const long double u_scale =
      2.0L / (static_cast<long double>(n) * static_cast<long double>(n - 1));
  JackknifeResult result;
  result.projections.resize(n, d);
  result.zero_degenerate = (n == 2);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < d; ++l)
      result.projections(i, l) = static_cast<double>(
          rows[static_cast<std::size_t>(i) * d + l] / (n - 1) - total[l] * u_scale);
  return result;
}

CovarianceEstimate covariance_estimate(const Matrix& projections) {
  if (projections.rows() < 2)
    throw InputError("covariance_estimate: need at least two projection rows");
  if (projections.cols() < 1) throw InputError("covariance_estimate: empty projections");
  if (!projections.allFinite())
    throw InputError("covariance_estimate: projections contain non-finite values");

  const auto n = projections.rows();
  const auto d = projections.cols();
  Matrix sigma = Matrix::Zero(d, d);
  sigma.selfadjointView<Eigen::Lower>().rankUpdate(projections.transpose(), 1.0 / double(n));
  sigma = Matrix(sigma.selfadjointView<Eigen::Lower>());  // mirror to exact symmetry

  PsdSqrtResult root = psd_sqrt(sigma);
  CovarianceEstimate estimate;
  estimate.sigma = std::move(sigma);
  estimate.root = std::move(root.root);
  estimate.clipped_mass = root.clipped_mass;
  estimate.min_eigenvalue = root.min_eigenvalue;
  return estimate;
}

}  // namespace ustat
