#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "losbo/kernel.hpp"

using namespace losbo;

namespace {

Vector vec1(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

std::vector<Vector> random_points(int count, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) {
    Vector v(dim);
    for (int d = 0; d < dim; ++d) v[d] = dist(rng);
    pts.push_back(std::move(v));
  }
  return pts;
}

}  // namespace

TEST_CASE("squared exponential values") {
  Kernel k(KernelFamily::SquaredExponential, 1.0, 1.0);
  CHECK(k(vec1(0.4), vec1(0.4)) == doctest::Approx(1.0));
  // r^2 = 2 l^2 gives exp(-1)
  CHECK(k(vec1(0.0), vec1(std::sqrt(2.0))) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  Kernel scaled(KernelFamily::SquaredExponential, 0.5, 3.0);
  CHECK(scaled(vec1(1.0), vec1(1.0)) == doctest::Approx(3.0));
}

TEST_CASE("matern32 values") {
  Kernel k(KernelFamily::Matern32, 1.0, 1.0);
  CHECK(k(vec1(0.0), vec1(0.0)) == doctest::Approx(1.0));
  const double r = 0.7;
  const double z = std::sqrt(3.0) * r;
  CHECK(k(vec1(0.0), vec1(r)) == doctest::Approx((1.0 + z) * std::exp(-z)).epsilon(1e-12));
}

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS_AS(Kernel(KernelFamily::SquaredExponential, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelFamily::SquaredExponential, 1.0, -1.0), std::invalid_argument);
  Kernel k(KernelFamily::SquaredExponential, 1.0, 1.0);
  Vector a(1), b(2);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(k(a, b), std::invalid_argument);
}

TEST_CASE("gram matrix basics") {
  Kernel k(KernelFamily::SquaredExponential, 1.0, 2.5);
  CHECK(k.gram({}).rows() == 0);

  Matrix one = k.gram({vec1(0.3)});
  CHECK(one(0, 0) == doctest::Approx(2.5));

  Kernel unit(KernelFamily::SquaredExponential, 1.0, 1.0);
  Matrix dup = unit.gram({vec1(1.0), vec1(1.0)});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(dup(i, j) == doctest::Approx(1.0));

  Matrix two = unit.gram({vec1(0.0), vec1(std::sqrt(2.0))});
  CHECK(two(0, 0) == doctest::Approx(1.0));
  CHECK(two(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(two(1, 0) == doctest::Approx(two(0, 1)));
}

TEST_CASE("metric") {
  CHECK(metric(vec1(0.7), vec1(0.7)) == 0.0);
  Vector a(2), b(2);
  a << 0.0, 0.0;
  b << 3.0, 4.0;
  CHECK(metric(a, b) == doctest::Approx(5.0));
  CHECK(metric(vec1(0.0), vec1(-2.0)) == doctest::Approx(2.0));
}

TEST_CASE("gram matrices are positive semidefinite") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 20);
  for (KernelFamily family : {KernelFamily::SquaredExponential, KernelFamily::Matern32}) {
    Kernel k(family, 0.6, 1.7);
    for (int trial = 0; trial < 50; ++trial) {
      const auto pts = random_points(size(rng), 2, rng);
      Matrix g = k.gram(pts);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * k.output_variance);
      // boundedness by the value at zero distance
      for (const auto& a : pts)
        for (const auto& b : pts) CHECK(k(a, b) <= k.output_variance + 1e-12);
    }
  }
}

TEST_CASE("metric triangle inequality on random triples") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = random_points(3, 3, rng);
    CHECK(metric(pts[0], pts[2]) <= metric(pts[0], pts[1]) + metric(pts[1], pts[2]) + 1e-12);
  }
}

TEST_CASE("domain") {
  Domain d = Domain::interval(-2.0, 2.0);
  CHECK(d.dimension() == 1);
  CHECK(d.contains(vec1(2.0)));
  CHECK(!d.contains(vec1(2.0 + 1e-9)));
  CHECK(d.clip(vec1(5.0))[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(Domain::interval(1.0, 1.0), std::invalid_argument);
}
