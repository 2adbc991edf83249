#include <doctest.h>

#include <cmath>
#include <random>

#include "losbo/bounds.hpp"

using namespace losbo;

namespace {

Vector vec1(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

GpPosterior random_posterior(int t, double lambda, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x_dist(-2.0, 2.0);
  std::normal_distribution<double> y_dist(0.0, 2.0);
  std::vector<Vector> xs;
  Vector ys(t);
  for (int i = 0; i < t; ++i) {
    xs.push_back(vec1(x_dist(rng)));
    ys[i] = y_dist(rng);
  }
  return GpPosterior(GpConfig(Kernel(KernelFamily::SquaredExponential, 0.4, 1.0), lambda),
                     xs, ys);
}

}  // namespace

TEST_CASE("fixed heuristic is constant") {
  const auto spec = BoundSpec::fixed(2.0);
  std::mt19937_64 rng(1);
  for (int t : {0, 1, 5, 12})
    CHECK(beta(spec, random_posterior(t, 0.3, rng)) == 2.0);
}

TEST_CASE("abbasi-yadkori with no data by hand") {
  // B + (R/sqrt(lambda)) sqrt(2 ln(1/delta)) with an empty determinant
  const auto spec = BoundSpec::abbasi_yadkori(10.0, 1.0, 1.0 / std::exp(1.0));
  GpPosterior empty(GpConfig(Kernel(KernelFamily::SquaredExponential, 1.0, 1.0), 1.0));
  CHECK(beta(spec, empty) == doctest::Approx(10.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fiedler reproduces abbasi-yadkori for lambda <= 1") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lambda_dist(0.01, 1.0);
  std::uniform_int_distribution<int> size(1, 10);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = lambda_dist(rng);
    const auto post = random_posterior(size(rng), lambda, rng);
    const double ay = beta(BoundSpec::abbasi_yadkori(10.0, 0.5, 0.01), post);
    const double fi = beta(BoundSpec::fiedler(10.0, 0.5, 0.01), post);
    CHECK(std::abs(fi - ay) <= 1e-10 * ay);
  }
}

TEST_CASE("fiedler adds t ln(lambda) for lambda > 1") {
  std::mt19937_64 rng(6);
  const double lambda = 4.0;
  const auto post = random_posterior(7, lambda, rng);
  const double log_det = post.log_det_scaled();
  const double expected =
      10.0 + 0.5 / std::sqrt(lambda) *
                 std::sqrt(log_det + 7.0 * std::log(lambda) - 2.0 * std::log(0.01));
  CHECK(beta(BoundSpec::fiedler(10.0, 0.5, 0.01), post) ==
        doctest::Approx(expected).epsilon(1e-12));
  // and it now exceeds the abbasi-yadkori value
  CHECK(beta(BoundSpec::fiedler(10.0, 0.5, 0.01), post) >
        beta(BoundSpec::abbasi_yadkori(10.0, 0.5, 0.01), post));
}

TEST_CASE("beta grows with data and shrinks with delta") {
  std::mt19937_64 rng(7);
  const auto spec = BoundSpec::abbasi_yadkori(10.0, 0.5, 0.01);
  double prev = 0.0;
  for (int t : {0, 2, 4, 8, 16}) {
    auto seeded = std::mt19937_64(42);
    const double b = beta(spec, random_posterior(t, 0.25, seeded));
    CHECK(b >= prev);
    prev = b;
  }
  const auto post = random_posterior(6, 0.25, rng);
  CHECK(beta(BoundSpec::abbasi_yadkori(10.0, 0.5, 0.01), post) >
        beta(BoundSpec::abbasi_yadkori(10.0, 0.5, 0.1), post));
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(BoundSpec::fixed(0.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundSpec::abbasi_yadkori(0.0, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(BoundSpec::abbasi_yadkori(1.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(BoundSpec::abbasi_yadkori(1.0, 1.0, 1.5), std::invalid_argument);
  // the information-gain based scaling has no computable general form here
  CHECK_THROWS_AS(bound_strategy_from_string("chowdhury"), std::invalid_argument);
}
