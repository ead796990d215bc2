#pragma once

#include "ustat/kernels.hpp"
#include "ustat/types.hpp"

namespace ustat {

// U_n = (2 / (n (n-1))) sum_{i<j} h(X_i, X_j), summed i-outer j-inner.
Vector full_ustat(const Sample& sample, const KernelSpec& spec);

// U_k for k = 2..n through the prefix pair-sum recurrence; exactly
// n(n-1)/2 kernel evaluations.
SeqPath sequential_ustat(const Sample& sample, const KernelSpec& spec);

// T_k = (k / (2 sqrt(n))) (U_k - theta) for k = 2..n. Callers that do not
// know theta pass the full-sample U_n as an explicit plug-in.
SeqPath sequential_T(const Sample& sample, const KernelSpec& spec, const Vector& theta);

struct JackknifeResult {
  Matrix projections;  // n x d, row i holds g_hat_i
  // n == 2 makes both projections identically zero; flagged, not an error.
  bool zero_degenerate = false;
};

// g_hat_i = (1/(n-1)) sum_{j != i} h(X_i, X_j) - U_n. Rows sum to zero up to
// rounding.
JackknifeResult jackknife_projections(const Sample& sample, const KernelSpec& spec);

// sigma = (1/n) sum_i g_i g_i^T with its PSD square root and clip diagnostics.
CovarianceEstimate covariance_estimate(const Matrix& projections);

}  // namespace ustat
