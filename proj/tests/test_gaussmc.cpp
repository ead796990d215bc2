#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ustat/gaussmc.hpp"

using namespace ustat;

TEST_CASE("psd_sqrt basics") {
  const Matrix eye = Matrix::Identity(3, 3);
  const PsdSqrtResult r1 = psd_sqrt(eye);
  CHECK((r1.root - eye).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(r1.clipped_mass == 0.0);
  CHECK(r1.min_eigenvalue == doctest::Approx(1.0));

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 4.0;
  diag(1, 1) = 9.0;
  const PsdSqrtResult r2 = psd_sqrt(diag);
  CHECK(r2.root(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r2.root(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::fabs(r2.root(0, 1)) <= 1e-12);

  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.2, 1.0;
  CHECK_THROWS_AS(psd_sqrt(asym), InputError);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(psd_sqrt(nan), InputError);
}

TEST_CASE("psd_sqrt reproduces a clipped random covariance") {
  RngStream g(RngSpec{31, 0});
  const int d = 5;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g.normal();
  Matrix sigma = a * a.transpose();

  // push one eigenvalue slightly negative
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  Vector lam = es.eigenvalues();
  lam[0] = -1e-12;
  sigma = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  sigma = 0.5 * (sigma + sigma.transpose());

  const PsdSqrtResult r = psd_sqrt(sigma);
  Vector lam_clipped = lam.cwiseMax(0.0);
  const Matrix target =
      es.eigenvectors() * lam_clipped.asDiagonal() * es.eigenvectors().transpose();
  const double op_scale = lam.cwiseAbs().maxCoeff();
  CHECK((r.root * r.root.transpose() - target).cwiseAbs().maxCoeff() <= 1e-9 * op_scale);
  CHECK(r.clipped_mass >= 0.0);
  CHECK(r.min_eigenvalue <= 0.0);
}

TEST_CASE("gaussian partial sums: zero root, variance, covariance") {
  const Matrix zero = Matrix::Zero(2, 2);
  const SeqPath z = gaussian_partial_sums(zero, 10, RngSpec{32, 0});
  CHECK(z.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.k_start == 1);
  CHECK(z.k_end == 10);

  // d = 1, root = 1: Var(W_n) = 1
  {
    const Matrix one = Matrix::Identity(1, 1);
    const int reps = 10000;
    double m2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      const SeqPath w = gaussian_partial_sums(one, 4, RngSpec{33, static_cast<std::uint64_t>(r)});
      const double v = w.at(4)[0];
      m2 += v * v;
    }
    m2 /= reps;
    CHECK(m2 > 0.94);
    CHECK(m2 < 1.06);
  }

  // d = 2: Cov(W_n) = root root^T entrywise within 5 standard errors
  {
    Matrix root(2, 2);
    root << 1.0, 0.0, 0.5, 2.0;
    const Matrix target = root * root.transpose();
    const int reps = 10000;
    Matrix acc = Matrix::Zero(2, 2);
    for (int r = 0; r < reps; ++r) {
      const SeqPath w = gaussian_partial_sums(root, 3, RngSpec{34, static_cast<std::uint64_t>(r)});
      const Vector v = w.at(3).transpose();
      acc += v * v.transpose();
    }
    acc /= reps;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double se = std::sqrt(
            (target(i, i) * target(j, j) + target(i, j) * target(i, j)) / reps);
        CHECK(std::fabs(acc(i, j) - target(i, j)) <= 5.0 * se);
      }
  }
}

TEST_CASE("bridge paths: endpoints, zero root, mean centering, covariance at 1/2") {
  const Matrix zero = Matrix::Zero(3, 3);
  const BridgePathSet zs = brownian_bridge_sups(zero, 64, 50, RngSpec{35, 0});
  for (double s : zs.sup_norms) CHECK(s == 0.0);

  Matrix root(2, 2);
  root << 1.0, 0.3, 0.0, 0.7;
  const int m = 64;
  const int paths = 20000;
  Matrix mean_acc = Matrix::Zero(m, 2);
  Matrix cov_acc = Matrix::Zero(2, 2);
  for (int j = 0; j < paths; ++j) {
    const Matrix path = brownian_bridge_path(root, m, RngSpec{36, static_cast<std::uint64_t>(j)});
    REQUIRE(path.rows() == m);
    CHECK(path.row(m - 1).cwiseAbs().maxCoeff() == 0.0);  // t = 1 exactly zero
    mean_acc += path;
    const Vector half = path.row(m / 2 - 1).transpose();  // t = 1/2
    cov_acc += half * half.transpose();
  }
  mean_acc /= paths;
  cov_acc /= paths;

  // 4 (1/2 - 1/4) = 1, so Cov at t = 1/2 is root root^T
  const Matrix target = root * root.transpose();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double se =
          std::sqrt((target(i, i) * target(j, j) + target(i, j) * target(i, j)) / paths);
      CHECK(std::fabs(cov_acc(i, j) - target(i, j)) <= 5.0 * se);
    }

  // mean of every grid row is zero within 5 MC standard errors
  for (int r = 0; r + 1 < m; ++r) {
    const double t = static_cast<double>(r + 1) / m;
    const double var_bound = 4.0 * t * (1.0 - t) * target(0, 0);
    const double se = std::sqrt(var_bound / paths);
    CHECK(std::fabs(mean_acc(r, 0)) <= 5.0 * std::max(se, 1e-12));
  }
}

TEST_CASE("bridge sups are thread-schedule independent and scale exactly") {
  Matrix root(2, 2);
  root << 0.9, 0.1, 0.1, 1.4;
  const BridgePathSet serial = brownian_bridge_sups(root, 128, 500, RngSpec{37, 11});
  const BridgePathSet threaded = brownian_bridge_sups(root, 128, 500, RngSpec{37, 11}, 4);
  REQUIRE(serial.sup_norms.size() == threaded.sup_norms.size());
  for (std::size_t i = 0; i < serial.sup_norms.size(); ++i)
    CHECK(serial.sup_norms[i] == threaded.sup_norms[i]);

  // doubling the root doubles every sup exactly (powers of two are lossless)
  const BridgePathSet doubled = brownian_bridge_sups(Matrix(2.0 * root), 128, 500, RngSpec{37, 11});
  for (std::size_t i = 0; i < serial.sup_norms.size(); ++i)
    CHECK(doubled.sup_norms[i] == 2.0 * serial.sup_norms[i]);
}

TEST_CASE("sup_quantile order statistic") {
  BridgePathSet paths;
  paths.n_paths = 100;
  paths.grid_size = 8;
  paths.sup_norms.assign(100, 2.5);
  CHECK(sup_quantile(paths, 0.05) == 2.5);
  CHECK(sup_quantile(paths, 0.5) == 2.5);

  for (int i = 0; i < 100; ++i) paths.sup_norms[i] = i + 1.0;  // 1..100
  CHECK(sup_quantile(paths, 0.05) == 95.0);  // ceil(0.95 * 100) = 95
  CHECK(sup_quantile(paths, 0.10) == 90.0);
  CHECK_THROWS_AS(sup_quantile(paths, 0.0), InputError);
  CHECK_THROWS_AS(sup_quantile(paths, 1.0), InputError);
  paths.n_paths = 50;
  CHECK_THROWS_AS(sup_quantile(paths, 0.05), InputError);
}

TEST_CASE("bridge sup quantile matches the Kolmogorov oracle in d = 1") {
  // root = 1/2 makes 2 root B0 a standard bridge, whose sup-abs law is
  // Kolmogorov's distribution.
  Matrix root(1, 1);
  root << 0.5;
  const BridgePathSet paths = brownian_bridge_sups(root, 1024, 40000, RngSpec{38, 0}, 2);
  const double q = sup_quantile(paths, 0.05);
  const double target = oracle::kolmogorov_quantile(0.95);
  CHECK(target == doctest::Approx(1.3581).epsilon(1e-3));
  CHECK(std::fabs(q - target) / target < 0.025);
}

TEST_CASE("quantile monotone in alpha") {
  Matrix root(1, 1);
  root << 1.0;
  const BridgePathSet paths = brownian_bridge_sups(root, 256, 4000, RngSpec{39, 0}, 2);
  CHECK(sup_quantile(paths, 0.01) > sup_quantile(paths, 0.05));
  CHECK(sup_quantile(paths, 0.05) > sup_quantile(paths, 0.10));
}

TEST_CASE("sn limit sample: symmetry, monotonicity, seed stability") {
  const std::vector<double> w = sn_limit_sample(100000, 2048, RngSpec{40, 0}, 2);
  std::vector<double> abs_med(w);
  const double med = ustat::scalar_quantile(abs_med, 0.5);
  CHECK(std::fabs(med) < 0.02);
  CHECK(scalar_quantile(w, 0.01) > scalar_quantile(w, 0.05));

  const std::vector<double> w2 = sn_limit_sample(100000, 2048, RngSpec{41, 0}, 2);
  const double q1 = scalar_quantile(w, 0.05);
  const double q2 = scalar_quantile(w2, 0.05);
  CHECK(std::fabs(q1 - q2) / q1 < 0.02);

  CHECK_THROWS_AS(sn_limit_sample(50, 2048, RngSpec{40, 0}), InputError);
  CHECK_THROWS_AS(sn_limit_sample(1000, 8, RngSpec{40, 0}), InputError);
}

TEST_CASE("reproducibility of gaussian machinery") {
  Matrix root(2, 2);
  root << 1.0, 0.0, 0.2, 0.8;
  const SeqPath a = gaussian_partial_sums(root, 50, RngSpec{42, 3});
  const SeqPath b = gaussian_partial_sums(root, 50, RngSpec{42, 3});
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);

  const std::vector<double> w1 = sn_limit_sample(200, 64, RngSpec{42, 9}, 1);
  const std::vector<double> w2 = sn_limit_sample(200, 64, RngSpec{42, 9}, 3);
  for (std::size_t i = 0; i < w1.size(); ++i) CHECK(w1[i] == w2[i]);
}
