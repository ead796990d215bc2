#pragma once

#include <span>
#include <vector>

#include "ustat/types.hpp"

namespace ustat {

enum class KernelFamily {
  GiniMeanDifference,        // h_l = |x_l - y_l|, d = p
  CharacteristicDispersion,  // h_l = cos(x_l - y_l), d = p
  SpatialKendallTau,         // vec((x-y)(x-y)^T / |x-y|_2^2), d = p^2
  HuberScoredCovariance,     // min(|x-y|_2^2 / 2, xi) * (x-y)(x-y)^T / |x-y|_2^2, d = p^2
  CoordinateProduct,         // h_l = x_l y_l, d = p
};

struct KernelSpec {
  KernelFamily family = KernelFamily::GiniMeanDifference;
  double huber_xi = 1.0;  // truncation threshold, HuberScoredCovariance only (> 0)
};

// Relative tie threshold: the spatial Kendall tau kernel rejects pairs with
// |x - y|_2 < tol * max(1, |x|_2, |y|_2). Ties have probability zero for
// continuous data, so callers abort loudly instead of substituting a value.
inline constexpr double kDegeneratePairTol = 1e-12;

int kernel_dimension(const KernelSpec& spec, int p);

// Evaluates h(x, y) into out; out.size() must equal kernel_dimension(spec, p).
// Matrix-valued families are vectorized row-major.
void eval_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y,
                 std::span<double> out);
Vector eval_kernel(const KernelSpec& spec, const Vector& x, const Vector& y);

enum class MarginalFamily { Normal, Cauchy, Laplace };

// One coordinate's marginal law: Normal(sigma), Cauchy(gamma) or Laplace(b).
// Locations never enter the closed forms below (the supported kernels are
// shift invariant per coordinate), so only the scale is carried.
struct Marginal {
  MarginalFamily family = MarginalFamily::Normal;
  double scale = 1.0;
};

// Analytic theta = E h(X, X') per coordinate for independent marginals.
// Supported pairs: GMD+Normal, CDP+Normal, CDP+Cauchy, CDP+Laplace; anything
// else throws UnsupportedMarginalError.
Vector closed_form_theta(const KernelSpec& spec, const std::vector<Marginal>& marginals);

// Variance factor of the first-order GMD projection under Gaussian sampling:
// Var g_l = c_g * sigma_l^2 with c_g = 1/3 + (2 sqrt(3) - 4) / pi.
double gmd_gaussian_projection_constant();

}  // namespace ustat
