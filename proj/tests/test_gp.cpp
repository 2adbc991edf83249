#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "losbo/gp.hpp"

using namespace losbo;

namespace {

Vector vec1(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

struct DenseOracle {
  // direct-inverse reference path, independent of the Cholesky implementation
  Matrix k_reg;
  Matrix inv;
  std::vector<Vector> inputs;
  Kernel kernel;
  Vector centered;
  double prior_mean;

  DenseOracle(const GpConfig& config, const std::vector<Vector>& xs, const Vector& ys)
      : inputs(xs), kernel(config.kernel), prior_mean(config.prior_mean) {
    k_reg = kernel.gram(xs);
    k_reg.diagonal().array() += config.noise_variance;
    inv = k_reg.inverse();
    centered = ys.array() - prior_mean;
  }

  double mean(const Vector& x) const {
    Vector kx(static_cast<Eigen::Index>(inputs.size()));
    for (std::size_t i = 0; i < inputs.size(); ++i)
      kx[static_cast<Eigen::Index>(i)] = kernel(inputs[i], x);
    return prior_mean + kx.dot(inv * centered);
  }

  double variance(const Vector& x) const {
    Vector kx(static_cast<Eigen::Index>(inputs.size()));
    for (std::size_t i = 0; i < inputs.size(); ++i)
      kx[static_cast<Eigen::Index>(i)] = kernel(inputs[i], x);
    return kernel(x, x) - kx.dot(inv * kx);
  }

  double log_det_scaled(double lambda) const {
    Matrix scaled = (k_reg - lambda * Matrix::Identity(k_reg.rows(), k_reg.cols())) / lambda;
    scaled.diagonal().array() += 1.0;
    return std::log(scaled.determinant());
  }
};

std::vector<Vector> random_inputs(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<Vector> xs;
  for (int i = 0; i < count; ++i) xs.push_back(vec1(dist(rng)));
  return xs;
}

}  // namespace

TEST_CASE("empty posterior recovers the prior") {
  GpConfig config(Kernel(KernelFamily::SquaredExponential, 1.0, 1.7), 0.5, 0.3);
  GpPosterior prior(config);
  CHECK(prior.mean(vec1(0.4)) == doctest::Approx(0.3));
  CHECK(prior.variance(vec1(0.4)) == doctest::Approx(1.7));
  CHECK(prior.log_det_scaled() == 0.0);
}

TEST_CASE("single observation closed form") {
  GpConfig config(Kernel(KernelFamily::SquaredExponential, 1.0, 1.0), 1.0, 0.0);
  Vector y(1);
  y << 2.0;
  GpPosterior post(config, {vec1(0.0)}, y);
  // mean k/(k+lambda) y = 1, variance 1 - 1/(1+1) = 0.5, det(I + K/lambda) = 2
  CHECK(post.mean(vec1(0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(post.variance(vec1(0.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(post.log_det_scaled() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("mismatched sizes rejected") {
  GpConfig config(Kernel(KernelFamily::SquaredExponential, 1.0, 1.0), 1.0);
  Vector y(2);
  y << 1.0, 2.0;
  CHECK_THROWS_AS(GpPosterior(config, {vec1(0.0)}, y), std::invalid_argument);
}

TEST_CASE("cholesky path matches a dense-inverse oracle") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> size(1, 30);
  std::uniform_real_distribution<double> lambda_dist(0.01, 2.0);
  std::normal_distribution<double> y_dist(0.0, 3.0);

  for (int trial = 0; trial < 100; ++trial) {
    const int t = size(rng);
    const auto xs = random_inputs(t, rng);
    Vector ys(t);
    for (int i = 0; i < t; ++i) ys[i] = y_dist(rng);
    GpConfig config(Kernel(KernelFamily::SquaredExponential, 0.5, 1.0), lambda_dist(rng), 0.1);
    GpPosterior post(config, xs, ys);
    DenseOracle oracle(config, xs, ys);

    for (double x : {-1.5, -0.2, 0.8}) {
      CHECK(post.mean(vec1(x)) == doctest::Approx(oracle.mean(vec1(x))).epsilon(1e-8));
      CHECK(post.variance(vec1(x)) ==
            doctest::Approx(std::max(0.0, oracle.variance(vec1(x)))).epsilon(1e-8));
    }
    if (t <= 20)
      CHECK(post.log_det_scaled() ==
            doctest::Approx(oracle.log_det_scaled(config.noise_variance)).epsilon(1e-8));

    // batch prediction agrees with the pointwise path
    Vector means, vars;
    const std::vector<Vector> test_points{vec1(-1.5), vec1(-0.2), vec1(0.8)};
    post.predict(test_points, means, vars);
    for (int i = 0; i < 3; ++i) {
      CHECK(means[i] == doctest::Approx(post.mean(test_points[i])).epsilon(1e-12));
      CHECK(vars[i] == doctest::Approx(post.variance(test_points[i])).epsilon(1e-12));
    }
  }
}

TEST_CASE("far-field mean returns to the prior") {
  GpConfig config(Kernel(KernelFamily::SquaredExponential, 1.0, 1.0), 0.1, 0.25);
  Vector y(2);
  y << 3.0, -1.0;
  GpPosterior post(config, {vec1(0.0), vec1(0.5)}, y);
  CHECK(post.mean(vec1(50.0)) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(post.variance(vec1(50.0)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("adding data never increases posterior variance") {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> y_dist(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto xs = random_inputs(8, rng);
    Vector ys(8);
    for (int i = 0; i < 8; ++i) ys[i] = y_dist(rng);
    GpConfig config(Kernel(KernelFamily::Matern32, 0.8, 1.0), 0.05, 0.0);
    for (int t = 1; t < 8; ++t) {
      GpPosterior smaller(config, {xs.begin(), xs.begin() + t}, ys.head(t));
      GpPosterior larger(config, {xs.begin(), xs.begin() + t + 1}, ys.head(t + 1));
      for (double x : {-1.9, -0.4, 0.3, 1.2})
        CHECK(larger.variance(vec1(x)) <= smaller.variance(vec1(x)) + 1e-9);
      CHECK(larger.log_det_scaled() >= smaller.log_det_scaled() - 1e-12);
    }
  }
}

TEST_CASE("near-interpolation for vanishing nominal noise") {
  GpConfig config(Kernel(KernelFamily::SquaredExponential, 0.5, 1.0), 1e-8, 0.0);
  const std::vector<Vector> xs{vec1(-1.0), vec1(0.0), vec1(1.0)};
  Vector ys(3);
  ys << 0.5, -0.25, 0.75;
  GpPosterior post(config, xs, ys);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(post.mean(xs[i]) - ys[i]) < 1e-3);
}
