#include "losbo/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace losbo {

GpConfig::GpConfig(Kernel k, double noise_variance, double prior_mean)
    : kernel(k), noise_variance(noise_variance), prior_mean(prior_mean) {
  if (!(noise_variance > 0.0))
    throw std::invalid_argument("gp noise_variance must be positive");
}

GpPosterior::GpPosterior(GpConfig config) : config_(std::move(config)) {}

GpPosterior::GpPosterior(GpConfig config, std::vector<Vector> inputs, Vector targets)
    : config_(std::move(config)), inputs_(std::move(inputs)) {
  const auto t = static_cast<Eigen::Index>(inputs_.size());
  if (targets.size() != t)
    throw std::invalid_argument("gp fit: |inputs| != |targets|");
  if (t == 0) return;

  centered_targets_ = targets.array() - config_.prior_mean;

  Matrix k = config_.kernel.gram(inputs_);
  k.diagonal().array() += config_.noise_variance;

  Eigen::LLT<Matrix> llt(k);
  if (llt.info() != Eigen::Success) {
    // one jitter retry; escalating jitter would silently corrupt the beta bounds
    k.diagonal().array() += 1e-10 * config_.kernel.output_variance;
    llt.compute(k);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("gp fit: Cholesky failed even with jitter");
  }
  chol_ = llt.matrixL();
  alpha_ = llt.solve(centered_targets_);
}

GpPosterior fit(const GpConfig& config, const std::vector<Vector>& inputs,
                const Vector& targets) {
  return GpPosterior(config, inputs, targets);
}

Vector GpPosterior::cross_covariance(const Vector& x) const {
  Vector k(size());
  for (Eigen::Index i = 0; i < size(); ++i)
    k[i] = config_.kernel(inputs_[static_cast<std::size_t>(i)], x);
  return k;
}

double GpPosterior::mean(const Vector& x) const {
  if (size() == 0) return config_.prior_mean;
  return config_.prior_mean + cross_covariance(x).dot(alpha_);
}

double GpPosterior::variance(const Vector& x) const {
  const double prior = config_.kernel(x, x);
  if (size() == 0) return prior;
  const Vector v = chol_.triangularView<Eigen::Lower>().solve(cross_covariance(x));
  double var = prior - v.squaredNorm();
  if (var < 0.0) {
    if (var < -1e-10)
      throw std::runtime_error("gp variance: negative beyond tolerance: " + std::to_string(var));
    ++clamp_count_;
    var = 0.0;
  }
  return var;
}

void GpPosterior::predict(const std::vector<Vector>& points, Vector& means,
                          Vector& variances) const {
  const auto n = static_cast<Eigen::Index>(points.size());
  means.resize(n);
  variances.resize(n);
  if (size() == 0) {
    means.setConstant(config_.prior_mean);
    for (Eigen::Index j = 0; j < n; ++j)
      variances[j] = config_.kernel(points[static_cast<std::size_t>(j)],
                                    points[static_cast<std::size_t>(j)]);
    return;
  }
  Matrix kx(size(), n);
  for (Eigen::Index j = 0; j < n; ++j)
    kx.col(j) = cross_covariance(points[static_cast<std::size_t>(j)]);
  means = kx.transpose() * alpha_;
  means.array() += config_.prior_mean;
  chol_.triangularView<Eigen::Lower>().solveInPlace(kx);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector& p = points[static_cast<std::size_t>(j)];
    double var = config_.kernel(p, p) - kx.col(j).squaredNorm();
    if (var < 0.0) {
      if (var < -1e-10)
        throw std::runtime_error("gp variance: negative beyond tolerance: " + std::to_string(var));
      ++clamp_count_;
      var = 0.0;
    }
    variances[j] = var;
  }
}

double GpPosterior::log_det_scaled() const {
  if (size() == 0) return 0.0;
  // det(I + K/lambda) = det(K + lambda I) / lambda^t
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) log_det += std::log(chol_(i, i));
  return 2.0 * log_det - static_cast<double>(size()) * std::log(config_.noise_variance);
}

}  // namespace losbo
