#pragma once

#include <functional>
#include <random>
#include <vector>

#include "losbo/gp.hpp"

namespace losbo {

/// Union-of-balls certified-safe region for continuous-domain safe BO.
/// Each observation (x, y) contributes the closed ball around x with radius
/// max{0, (y - E - h)/L}; zero-radius balls are kept so their centers remain
/// feasible starts. Radii of existing balls never change.
class SafeRegion {
 public:
  explicit SafeRegion(Domain domain);

  /// Seed ball (initial safe set); no containment precondition.
  void add_ball(const Vector& center, double radius);

  /// Ball from a query made inside the region.
  void add_observation(const Vector& x, double y, double lipschitz,
                       double noise_margin, double threshold);

  bool contains(const Vector& x) const;

  const Domain& domain() const { return domain_; }
  const std::vector<Vector>& centers() const { return centers_; }
  const std::vector<double>& radii() const { return radii_; }
  int ball_count() const { return static_cast<int>(centers_.size()); }

  /// Projection onto ball j intersect box: clip to the box, radially project
  /// to the ball, alternate. Result always passes contains().
  Vector project(const Vector& x, int ball_index) const;

 private:
  Domain domain_;
  std::vector<Vector> centers_;
  std::vector<double> radii_;
};

struct MultistartOptions {
  int starts_per_ball = 2;       // ball center plus (starts-1) uniform draws
  int max_ascent_iterations = 100;
  double displacement_tol = 1e-10;
  int backtrack_limit = 40;
};

struct RegionOptimum {
  Vector x;
  double value = 0.0;
};

/// Maximize an arbitrary objective over the region by per-ball multistart
/// projected gradient ascent with central finite-difference gradients.
/// The returned point is always feasible (every candidate is projected and
/// membership-checked); ball centers are always among the starts, so the
/// returned value is >= the objective at every center.
RegionOptimum maximize_over_region(const SafeRegion& region,
                                   const std::function<double(const Vector&)>& objective,
                                   double fd_step, const MultistartOptions& options,
                                   std::mt19937_64& rng);

/// GP-UCB acquisition step: argmax over the region of mean + beta * sigma.
/// fd step is 1e-6 times the kernel length scale.
RegionOptimum select_next(const SafeRegion& region, const GpPosterior& posterior,
                          double beta_value, int starts_per_ball, std::mt19937_64& rng);

/// Uniform draw from the region (volume-weighted ball choice with coverage
/// correction); used by the safety-constrained random-search baseline.
/// Degenerates to a uniform choice among centers when every radius is zero.
Vector sample_uniform_from_region(const SafeRegion& region, std::mt19937_64& rng);

}  // namespace losbo
