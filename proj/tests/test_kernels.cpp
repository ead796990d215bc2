#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ustat/kernels.hpp"
#include "ustat/rng.hpp"

using namespace ustat;

namespace {

Vector random_vec(RngStream& g, int p) {
  Vector v(p);
  for (int l = 0; l < p; ++l) v[l] = g.normal();
  return v;
}

const KernelSpec kGmd{KernelFamily::GiniMeanDifference, 1.0};
const KernelSpec kCdp{KernelFamily::CharacteristicDispersion, 1.0};
const KernelSpec kSkt{KernelFamily::SpatialKendallTau, 1.0};
const KernelSpec kCp{KernelFamily::CoordinateProduct, 1.0};

}  // namespace

TEST_CASE("kernel dimensions") {
  CHECK(kernel_dimension(kGmd, 7) == 7);
  CHECK(kernel_dimension(kSkt, 3) == 9);
  CHECK(kernel_dimension(kCdp, 1) == 1);
  CHECK(kernel_dimension(KernelSpec{KernelFamily::HuberScoredCovariance, 2.0}, 4) == 16);
  CHECK(kernel_dimension(kCp, 5) == 5);
  CHECK_THROWS_AS(kernel_dimension(kGmd, 0), InputError);
  CHECK_THROWS_AS(kernel_dimension(KernelSpec{KernelFamily::HuberScoredCovariance, 0.0}, 2),
                  InputError);
}

TEST_CASE("pointwise values") {
  Vector x(2), y(2);
  x << 1, 3;
  y << 4, -1;
  const Vector gmd = eval_kernel(kGmd, x, y);
  CHECK(gmd[0] == 3.0);
  CHECK(gmd[1] == 4.0);

  const Vector cdp_same = eval_kernel(kCdp, x, x);
  CHECK(cdp_same[0] == 1.0);
  CHECK(cdp_same[1] == 1.0);

  const Vector cp = eval_kernel(kCp, x, y);
  CHECK(cp[0] == 4.0);
  CHECK(cp[1] == -3.0);

  // unit-direction difference: vec of [[1,0],[0,0]]
  Vector a(2), b(2);
  a << 2, 5;
  b << 1, 5;
  const Vector skt = eval_kernel(kSkt, a, b);
  CHECK(skt[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(skt[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(skt[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(skt[3] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("dimension mismatch and degenerate pairs") {
  Vector x(2), y(3);
  CHECK_THROWS_AS(eval_kernel(kGmd, x, y), InputError);
  Vector same(3);
  same << 1, 2, 3;
  CHECK_THROWS_AS(eval_kernel(kSkt, same, same), DegeneratePairError);
  // Huber extends continuously to zero at ties.
  const Vector h =
      eval_kernel(KernelSpec{KernelFamily::HuberScoredCovariance, 1.0}, same, same);
  CHECK(h.norm() == 0.0);
}

TEST_CASE("symmetry over random pairs, all families") {
  RngStream g(RngSpec{11, 0});
  for (const auto family :
       {KernelFamily::GiniMeanDifference, KernelFamily::CharacteristicDispersion,
        KernelFamily::SpatialKendallTau, KernelFamily::HuberScoredCovariance,
        KernelFamily::CoordinateProduct}) {
    const KernelSpec spec{family, 0.7};
    for (int rep = 0; rep < 1000; ++rep) {
      const Vector x = random_vec(g, 3);
      const Vector y = random_vec(g, 3);
      const Vector hxy = eval_kernel(spec, x, y);
      const Vector hyx = eval_kernel(spec, y, x);
      REQUIRE((hxy - hyx).cwiseAbs().maxCoeff() == 0.0);  // exact
    }
  }
}

TEST_CASE("spatial Kendall tau identities") {
  RngStream g(RngSpec{12, 0});
  for (int rep = 0; rep < 1000; ++rep) {
    const int p = 2 + static_cast<int>(g.next_u64() % 3);
    const Vector x = random_vec(g, p);
    const Vector y = random_vec(g, p);
    const Vector h = eval_kernel(kSkt, x, y);
    CHECK(std::fabs(h.norm() - 1.0) <= 1e-12);
    // trace of the unvectorized matrix = sum of diagonal entries
    double trace = 0.0;
    for (int l = 0; l < p; ++l) trace += h[l * p + l];
    CHECK(std::fabs(trace - 1.0) <= 1e-12);
    // entries bounded by 1, scale invariance
    CHECK(h.cwiseAbs().maxCoeff() <= 1.0 + 1e-15);
    for (const double c : {0.5, 3.7}) {
      const Vector hs = eval_kernel(kSkt, Vector(c * x), Vector(c * y));
      CHECK((hs - h).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("characteristic dispersion bounded in [-1, 1]") {
  RngStream g(RngSpec{13, 0});
  for (int rep = 0; rep < 1000; ++rep) {
    const Vector x = 10.0 * random_vec(g, 4);
    const Vector y = 10.0 * random_vec(g, 4);
    const Vector h = eval_kernel(kCdp, x, y);
    CHECK(h.maxCoeff() <= 1.0);
    CHECK(h.minCoeff() >= -1.0);
  }
}

TEST_CASE("huber truncation matches the tau direction for small xi") {
  RngStream g(RngSpec{14, 0});
  const double xi = 1e-6;
  const KernelSpec huber{KernelFamily::HuberScoredCovariance, xi};
  for (int rep = 0; rep < 100; ++rep) {
    const Vector x = random_vec(g, 3);
    const Vector y = random_vec(g, 3);
    if (0.5 * (x - y).squaredNorm() <= xi) continue;
    const Vector h = eval_kernel(huber, x, y);
    const Vector tau = eval_kernel(kSkt, x, y);
    CHECK((h - xi * tau).cwiseAbs().maxCoeff() <= 1e-15);
  }
  // below the threshold the quadratic branch applies: h = (x-y)(x-y)^T / 2
  const KernelSpec wide{KernelFamily::HuberScoredCovariance, 1e9};
  Vector x(2), y(2);
  x << 1, 2;
  y << 0.5, 1.0;
  const Vector h = eval_kernel(wide, x, y);
  CHECK(h[0] == doctest::Approx(0.5 * 0.5 * 0.5));
  CHECK(h[3] == doctest::Approx(0.5 * 1.0 * 1.0));
}

TEST_CASE("closed-form theta values") {
  const Vector gmd_normal =
      closed_form_theta(kGmd, {Marginal{MarginalFamily::Normal, 1.0}});
  CHECK(gmd_normal[0] == doctest::Approx(1.1283791671).epsilon(1e-9));

  const Vector cdp_cauchy =
      closed_form_theta(kCdp, {Marginal{MarginalFamily::Cauchy, 0.5}});
  CHECK(cdp_cauchy[0] == doctest::Approx(0.3678794412).epsilon(1e-9));

  const Vector cdp_laplace =
      closed_form_theta(kCdp, {Marginal{MarginalFamily::Laplace, 1.0}});
  CHECK(cdp_laplace[0] == doctest::Approx(0.25).epsilon(1e-12));

  const Vector cdp_normal =
      closed_form_theta(kCdp, {Marginal{MarginalFamily::Normal, 2.0}});
  CHECK(cdp_normal[0] == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));

  CHECK_THROWS_AS(closed_form_theta(kGmd, {Marginal{MarginalFamily::Cauchy, 1.0}}),
                  UnsupportedMarginalError);
  CHECK_THROWS_AS(closed_form_theta(kSkt, {Marginal{MarginalFamily::Normal, 1.0}}),
                  UnsupportedMarginalError);
}

TEST_CASE("projection variance constant agrees with quadrature") {
  const double quad = oracle::gmd_projection_variance_quadrature();
  CHECK(std::fabs(gmd_gaussian_projection_constant() - quad) < 1e-8);
  CHECK(gmd_gaussian_projection_constant() == doctest::Approx(0.163).epsilon(2e-3));
}
