#pragma once

#include <vector>

#include "losbo/kernel.hpp"

namespace losbo {

struct GpConfig {
  Kernel kernel;
  double noise_variance = 1.0;  // nominal noise variance, the lambda in K + lambda I
  double prior_mean = 0.0;

  GpConfig() = default;
  GpConfig(Kernel kernel, double noise_variance, double prior_mean = 0.0);
};

/// Exact GP regression state. Immutable after fit; prediction is const and
/// safe to share across threads. Refitting is from scratch (t stays small in
/// every experiment here, so the O(t^3) Cholesky per step is fine).
class GpPosterior {
 public:
  explicit GpPosterior(GpConfig config);  // empty posterior = prior
  GpPosterior(GpConfig config, std::vector<Vector> inputs, Vector targets);

  const GpConfig& config() const { return config_; }
  const std::vector<Vector>& inputs() const { return inputs_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(inputs_.size()); }

  double mean(const Vector& x) const;
  double variance(const Vector& x) const;

  /// Means and variances at many points through one triangular solve.
  void predict(const std::vector<Vector>& points, Vector& means, Vector& variances) const;

  /// ln det(I + K_t / lambda), from the stored Cholesky factor.
  double log_det_scaled() const;

  const Matrix& cholesky_factor() const { return chol_; }
  int negative_variance_clamps() const { return clamp_count_; }

 private:
  Vector cross_covariance(const Vector& x) const;

  GpConfig config_;
  std::vector<Vector> inputs_;
  Vector centered_targets_;
  Matrix chol_;        // lower-triangular L with L L' = K + lambda I
  Vector alpha_;       // (K + lambda I)^{-1} (y - m)
  mutable int clamp_count_ = 0;
};

GpPosterior fit(const GpConfig& config, const std::vector<Vector>& inputs,
                const Vector& targets);

}  // namespace losbo
