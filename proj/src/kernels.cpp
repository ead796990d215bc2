#include "ustat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ustat {

namespace {

void validate_spec(const KernelSpec& spec) {
  if (spec.family == KernelFamily::HuberScoredCovariance && !(spec.huber_xi > 0.0))
    throw InputError("HuberScoredCovariance requires huber_xi > 0");
}

}  // namespace

int kernel_dimension(const KernelSpec& spec, int p) {
  validate_spec(spec);
  if (p < 1) throw InputError("kernel_dimension: p must be >= 1");
  switch (spec.family) {
    case KernelFamily::GiniMeanDifference:
    case KernelFamily::CharacteristicDispersion:
    case KernelFamily::CoordinateProduct:
      return p;
    case KernelFamily::SpatialKendallTau:
    case KernelFamily::HuberScoredCovariance:
      return p * p;
  }
  throw InputError("kernel_dimension: unknown family");
}

void eval_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y,
                 std::span<double> out) {
  validate_spec(spec);
  const int p = static_cast<int>(x.size());
  if (p < 1 || x.size() != y.size())
    throw InputError("eval_kernel: x and y must be nonempty vectors of equal length");
  if (static_cast<int>(out.size()) != kernel_dimension(spec, p))
    throw InputError("eval_kernel: output buffer has wrong dimension");

  switch (spec.family) {
    case KernelFamily::GiniMeanDifference:
      for (int l = 0; l < p; ++l) out[l] = std::fabs(x[l] - y[l]);
      return;
    case KernelFamily::CharacteristicDispersion:
      // fabs canonicalizes the argument so eval(x,y) == eval(y,x) bit-exactly
      for (int l = 0; l < p; ++l) out[l] = std::cos(std::fabs(x[l] - y[l]));
      return;
    case KernelFamily::CoordinateProduct:
      for (int l = 0; l < p; ++l) out[l] = x[l] * y[l];
      return;
    case KernelFamily::SpatialKendallTau:
    case KernelFamily::HuberScoredCovariance: {
      thread_local std::vector<double> diff;
      diff.resize(p);
      double nrm2 = 0.0;
      for (int l = 0; l < p; ++l) {
        diff[l] = x[l] - y[l];
        nrm2 += diff[l] * diff[l];
      }
      double scale;
      if (spec.family == KernelFamily::SpatialKendallTau) {
        double xn2 = 0.0;
        double yn2 = 0.0;
        for (int l = 0; l < p; ++l) {
          xn2 += x[l] * x[l];
          yn2 += y[l] * y[l];
        }
        const double floor2 =
            kDegeneratePairTol * kDegeneratePairTol * std::max({1.0, xn2, yn2});
        if (nrm2 < floor2)
          throw DegeneratePairError("spatial Kendall tau kernel: observation pair is tied");
        scale = 1.0 / nrm2;
      } else {
        if (nrm2 == 0.0) {  // continuous extension: psi(t) ~ t near 0, so h -> 0
          std::fill(out.begin(), out.end(), 0.0);
          return;
        }
        scale = std::min(0.5 * nrm2, spec.huber_xi) / nrm2;
      }
      for (int i = 0; i < p; ++i) {
        const double si = scale * diff[i];
        for (int j = 0; j < p; ++j) out[i * p + j] = si * diff[j];
      }
      return;
    }
  }
  throw InputError("eval_kernel: unknown family");
}

Vector eval_kernel(const KernelSpec& spec, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw InputError("eval_kernel: x and y must have equal length");
  Vector out(kernel_dimension(spec, static_cast<int>(x.size())));
  eval_kernel(spec, std::span<const double>(x.data(), x.size()),
              std::span<const double>(y.data(), y.size()),
              std::span<double>(out.data(), out.size()));
  return out;
}

Vector closed_form_theta(const KernelSpec& spec, const std::vector<Marginal>& marginals) {
  validate_spec(spec);
  if (marginals.empty()) throw InputError("closed_form_theta: empty marginal list");
  const bool gmd = spec.family == KernelFamily::GiniMeanDifference;
  const bool cdp = spec.family == KernelFamily::CharacteristicDispersion;
  if (!gmd && !cdp)
    throw UnsupportedMarginalError(
        "closed_form_theta supports GiniMeanDifference and CharacteristicDispersion only");

  Vector theta(marginals.size());
  for (std::size_t l = 0; l < marginals.size(); ++l) {
    const Marginal& m = marginals[l];
    if (!(m.scale >= 0.0) || !std::isfinite(m.scale))
      throw InputError("closed_form_theta: marginal scale must be finite and >= 0");
    if (gmd) {
      if (m.family != MarginalFamily::Normal)
        throw UnsupportedMarginalError("GMD closed form is available for Normal marginals only");
      theta[l] = 2.0 * m.scale / std::sqrt(std::numbers::pi);
    } else {
      switch (m.family) {
        case MarginalFamily::Normal:
          theta[l] = std::exp(-m.scale * m.scale);
          break;
        case MarginalFamily::Cauchy:
          theta[l] = std::exp(-2.0 * m.scale);
          break;
        case MarginalFamily::Laplace:
          theta[l] = 1.0 / ((1.0 + m.scale * m.scale) * (1.0 + m.scale * m.scale));
          break;
      }
    }
  }
  return theta;
}

double gmd_gaussian_projection_constant() {
  static const double c_g =
      1.0 / 3.0 + (2.0 * std::sqrt(3.0) - 4.0) / std::numbers::pi;
  return c_g;
}

}  // namespace ustat
