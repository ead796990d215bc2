#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ustat/bench/stats.hpp"
#include "ustat/cpdetect.hpp"
#include "ustat/rng.hpp"

using namespace ustat;

namespace {

Sample random_sample(RngStream& g, int n, int p, double scale = 1.0) {
  DataMatrix data(n, p);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < p; ++l) data(i, l) = scale * g.normal();
  return Sample(std::move(data));
}

Sample scale_shift_sample(RngStream& g, int n, int p, double tau, double s1, double s2) {
  DataMatrix data(n, p);
  const int k_star = static_cast<int>(std::floor(n * tau));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < p; ++l) data(i, l) = (i < k_star ? s1 : s2) * g.normal();
  return Sample(std::move(data));
}

const KernelSpec kGmd{KernelFamily::GiniMeanDifference, 1.0};

const std::vector<KernelSpec> kAllFamilies = {
    {KernelFamily::GiniMeanDifference, 1.0},   {KernelFamily::CharacteristicDispersion, 1.0},
    {KernelFamily::SpatialKendallTau, 1.0},    {KernelFamily::HuberScoredCovariance, 0.8},
    {KernelFamily::CoordinateProduct, 1.0}};

}  // namespace

TEST_CASE("cusum process base cases") {
  const Sample constant(DataMatrix(DataMatrix::Constant(8, 2, 2.0)));
  const SeqPath path = cusum_process(constant, kGmd);
  CHECK(path.k_start == 2);
  CHECK(path.k_end == 6);
  CHECK(path.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(path.kernel_evals == 28);  // 8 * 7 / 2

  RngStream g(RngSpec{61, 0});
  CHECK_THROWS_AS(cusum_process(random_sample(g, 3, 2), kGmd), InputError);
}

TEST_CASE("cusum matches brute force and counts kernel evals exactly once") {
  RngStream g(RngSpec{62, 0});
  for (const auto& spec : kAllFamilies) {
    const bool matrix_kernel = spec.family == KernelFamily::SpatialKendallTau ||
                               spec.family == KernelFamily::HuberScoredCovariance;
    for (int rep = 0; rep < 10; ++rep) {
      const int n = 5 + static_cast<int>(g.next_u64() % 6);
      const int p = matrix_kernel ? 2 : 1 + static_cast<int>(g.next_u64() % 3);
      const Sample s = random_sample(g, n, p);
      const SeqPath path = cusum_process(s, spec);
      CHECK(path.kernel_evals == static_cast<std::uint64_t>(n) * (n - 1) / 2);
      const Matrix expected = oracle::cusum(spec, s);
      CHECK((path.values - expected).cwiseAbs().maxCoeff() <=
            1e-10 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("reversal antisymmetry of the path, invariance of the statistic") {
  RngStream g(RngSpec{63, 0});
  for (const auto& spec : kAllFamilies) {
    const bool matrix_kernel = spec.family == KernelFamily::SpatialKendallTau ||
                               spec.family == KernelFamily::HuberScoredCovariance;
    for (int rep = 0; rep < 4; ++rep) {
      const int n = 8 + static_cast<int>(g.next_u64() % 5);
      const Sample s = random_sample(g, n, matrix_kernel ? 2 : 2);
      const Sample rev(DataMatrix(s.data().colwise().reverse()));

      const SeqPath path = cusum_process(s, spec);
      const SeqPath path_rev = cusum_process(rev, spec);
      const double scale = std::max(1.0, path.values.cwiseAbs().maxCoeff());
      for (int k = 2; k <= n - 2; ++k) {
        const Eigen::RowVectorXd lhs = path_rev.at(n - k);
        const Eigen::RowVectorXd rhs = -path.at(k);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * scale);
      }

      const CusumStatistic a = cusum_statistic(path);
      const CusumStatistic b = cusum_statistic(path_rev);
      CHECK(std::fabs(a.T_n - b.T_n) <= 1e-10 * std::max(1.0, a.T_n));
    }
  }
}

TEST_CASE("cusum statistic argmax and ties") {
  SeqPath path;
  path.k_start = 2;
  path.k_end = 6;
  path.n = 8;
  path.values = Matrix::Zero(5, 2);
  const CusumStatistic zero = cusum_statistic(path);
  CHECK(zero.T_n == 0.0);
  CHECK(zero.k_hat == 2);  // smallest index on ties

  path.values(3, 0) = 3.0;  // unique peak at k = 5
  const CusumStatistic peak = cusum_statistic(path);
  CHECK(peak.T_n == 3.0);
  CHECK(peak.k_hat == 5);

  SeqPath empty;
  CHECK_THROWS_AS(cusum_statistic(empty), InputError);
}

TEST_CASE("detect_change on constant data never rejects") {
  const Sample constant(DataMatrix(DataMatrix::Constant(24, 2, 1.5)));
  const CusumResult res = detect_change(constant, kGmd, 0.05, 1000, RngSpec{64, 0});
  CHECK(res.T_n == 0.0);
  CHECK(res.q == 0.0);
  CHECK(!res.reject);
  CHECK(res.bridge_paths_used == 1000);
  CHECK(res.sigma_min_eigenvalue == 0.0);

  RngStream g(RngSpec{65, 0});
  const Sample s = random_sample(g, 30, 2);
  CHECK_THROWS_AS(detect_change(s, kGmd, 0.05, 100, RngSpec{64, 0}), InputError);
  CHECK_THROWS_AS(detect_change(s, kGmd, 1.5, 1000, RngSpec{64, 0}), InputError);
}

TEST_CASE("detect_change is deterministic across thread counts") {
  RngStream g(RngSpec{66, 0});
  const Sample s = random_sample(g, 40, 2);
  const CusumResult a = detect_change(s, kGmd, 0.05, 1000, RngSpec{66, 5}, 1);
  const CusumResult b = detect_change(s, kGmd, 0.05, 1000, RngSpec{66, 5}, 4);
  CHECK(a.T_n == b.T_n);
  CHECK(a.q == b.q);
  CHECK(a.k_hat == b.k_hat);
}

TEST_CASE("argmax concentrates near the break as n grows") {
  RngStream g(RngSpec{67, 0});
  const double tau = 0.5;
  auto median_err = [&](int n) {
    std::vector<double> errs;
    for (int rep = 0; rep < 50; ++rep) {
      const Sample s = scale_shift_sample(g, n, 2, tau, 1.0, 2.0);
      const CusumStatistic stat = cusum_statistic(cusum_process(s, kGmd));
      errs.push_back(std::fabs(static_cast<double>(stat.k_hat) / n - tau));
    }
    return ustat::bench::median(errs);
  };
  const double e200 = median_err(200);
  const double e400 = median_err(400);
  CHECK(e400 <= std::max(0.5 * e200, 0.01));
}

TEST_CASE("drift V branches, continuity and argmax") {
  DriftSpec spec;
  spec.mu1 = Vector::Zero(3);
  spec.mu2 = Vector::Zero(3);
  spec.mu2 << 1.0, -0.5, 2.0;
  spec.mu12 = 0.5 * (spec.mu1 + spec.mu2);
  spec.tau_star = 0.35;

  // both branches meet at tau* with value tau* (1 - tau*)
  const double v_left = drift_V(spec, spec.tau_star);
  const double v_right = drift_V(spec, spec.tau_star + 1e-9);
  CHECK(v_left == doctest::Approx(spec.tau_star * (1.0 - spec.tau_star)).epsilon(1e-9));
  CHECK(std::fabs(v_left - v_right) <= 1e-6);

  // vanishing at the edges
  CHECK(drift_V(spec, 1e-9) <= 1e-8);
  CHECK(drift_V(spec, 1.0 - 1e-9) <= 1e-8);
  CHECK_THROWS_AS(drift_V(spec, 0.0), InputError);
  CHECK_THROWS_AS(drift_V(spec, 1.0), InputError);

  // midpoint mu12, tau* = 0.5: grid argmax lands on 0.5
  spec.tau_star = 0.5;
  CHECK(check_geometric_constraints(spec));
  double best_t = 0.0;
  double best_v = -1.0;
  for (int i = 1; i <= 99; ++i) {
    const double t = i / 100.0;
    const double v = drift_V(spec, t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  CHECK(best_t == doctest::Approx(0.5));
}

TEST_CASE("geometric constraints") {
  DriftSpec spec;
  spec.mu1 = Vector::Zero(2);
  spec.mu2 = Vector::Zero(2);
  spec.mu2 << 2.0, 0.0;
  spec.tau_star = 0.9;

  spec.mu12 = 0.5 * (spec.mu1 + spec.mu2);
  CHECK(check_geometric_constraints(spec));

  spec.mu12 = spec.mu1;
  CHECK(check_geometric_constraints(spec));

  // adversarial mu12 = mu1 - delta at tau* = 0.9 violates the first inequality
  spec.mu12 = spec.mu1 - (spec.mu2 - spec.mu1);
  CHECK(!check_geometric_constraints(spec));

  DriftSpec bad = spec;
  bad.mu2 = bad.mu1;
  CHECK_THROWS_AS(check_geometric_constraints(bad), InputError);
}
