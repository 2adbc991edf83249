#include "losbo/safe_region.hpp"

#include <cmath>
#include <stdexcept>

namespace losbo {

SafeRegion::SafeRegion(Domain domain) : domain_(std::move(domain)) {}

void SafeRegion::add_ball(const Vector& center, double radius) {
  if (!domain_.contains(center))
    throw std::invalid_argument("safe region ball center outside the domain box");
  if (radius < 0.0) throw std::invalid_argument("safe region ball radius must be >= 0");
  centers_.push_back(center);
  radii_.push_back(radius);
}

void SafeRegion::add_observation(const Vector& x, double y, double lipschitz,
                                 double noise_margin, double threshold) {
  if (!contains(x))
    throw std::logic_error("add_observation: query point was not inside the safe region");
  const double radius = std::max(0.0, (y - noise_margin - threshold) / lipschitz);
  centers_.push_back(x);
  radii_.push_back(radius);
}

bool SafeRegion::contains(const Vector& x) const {
  if (!domain_.contains(x)) return false;
  for (std::size_t j = 0; j < centers_.size(); ++j)
    if ((x - centers_[j]).norm() <= radii_[j]) return true;
  return false;
}

Vector SafeRegion::project(const Vector& x, int ball_index) const {
  const Vector& z = centers_[static_cast<std::size_t>(ball_index)];
  const double r = radii_[static_cast<std::size_t>(ball_index)];
  Vector p = x;
  for (int round = 0; round < 20; ++round) {
    const Vector before = p;
    p = domain_.clip(p);
    const double d = (p - z).norm();
    if (d > r) {
      if (r == 0.0) {
        p = z;
      } else {
        // radial scaling can land a few ulps outside the closed ball; shrink
        // the offset until strictly inside, falling back to the center
        double scale = r / d;
        const Vector offset = p - z;
        p = z + offset * scale;
        for (int k = 0; k < 8 && (p - z).norm() > r; ++k) {
          scale *= 1.0 - 1e-12;
          p = z + offset * scale;
        }
        if ((p - z).norm() > r) p = z;
      }
    }
    if ((p - before).norm() < 1e-10) break;
  }
  return p;
}

namespace {

Vector uniform_in_ball(const Vector& center, double radius, std::mt19937_64& rng) {
  const auto d = center.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector dir(d);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < d; ++i) dir[i] = gauss(rng);
    norm = dir.norm();
  } while (norm == 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = radius * std::pow(unit(rng), 1.0 / static_cast<double>(d));
  return center + dir * (scale / norm);
}

struct AscentResult {
  Vector x;
  double value;
};

AscentResult ascend(const SafeRegion& region, int ball_index, const Vector& start,
                    const std::function<double(const Vector&)>& objective,
                    double fd_step, const MultistartOptions& options) {
  const auto dim = start.size();
  const double radius = region.radii()[static_cast<std::size_t>(ball_index)];

  Vector x = region.project(start, ball_index);
  double fx = objective(x);
  if (radius == 0.0) return {x, fx};  // center is the only feasible point

  // normalized-direction steps with a trust length; scale-free in the
  // objective's magnitude
  double trust = radius;
  for (int iter = 0; iter < options.max_ascent_iterations; ++iter) {
    Vector grad(dim);
    Vector probe = x;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double xi = x[i];
      probe[i] = xi + fd_step;
      const double fp = objective(probe);
      probe[i] = xi - fd_step;
      const double fm = objective(probe);
      probe[i] = xi;
      grad[i] = (fp - fm) / (2.0 * fd_step);
    }
    const double gnorm = grad.norm();
    if (gnorm == 0.0) break;
    const Vector dir = grad / gnorm;

    double eta = trust;
    bool accepted = false;
    Vector cand;
    double fc = 0.0;
    for (int k = 0; k < options.backtrack_limit; ++k) {
      cand = region.project(x + eta * dir, ball_index);
      fc = objective(cand);
      if (fc > fx) {
        accepted = true;
        break;
      }
      eta *= 0.5;
      if (eta < options.displacement_tol) break;
    }
    if (!accepted) break;

    const double moved = (cand - x).norm();
    x = cand;
    fx = fc;
    if (moved < options.displacement_tol) break;
    trust = std::min(2.0 * eta, radius);
  }
  return {x, fx};
}

}  // namespace

RegionOptimum maximize_over_region(const SafeRegion& region,
                                   const std::function<double(const Vector&)>& objective,
                                   double fd_step, const MultistartOptions& options,
                                   std::mt19937_64& rng) {
  if (region.ball_count() == 0)
    throw std::invalid_argument("maximize_over_region: region has no balls");

  RegionOptimum best;
  bool have_best = false;
  for (int j = 0; j < region.ball_count(); ++j) {
    const Vector& center = region.centers()[static_cast<std::size_t>(j)];
    const double radius = region.radii()[static_cast<std::size_t>(j)];
    for (int s = 0; s < std::max(1, options.starts_per_ball); ++s) {
      const Vector start = s == 0 ? center : uniform_in_ball(center, radius, rng);
      AscentResult res = ascend(region, j, start, objective, fd_step, options);
      if (!region.contains(res.x)) continue;  // filters fp stragglers; centers always pass
      if (!have_best || res.value > best.value) {
        best.x = res.x;
        best.value = res.value;
        have_best = true;
      }
    }
  }
  if (!have_best)
    throw std::runtime_error("maximize_over_region: no feasible iterate found");
  return best;
}

RegionOptimum select_next(const SafeRegion& region, const GpPosterior& posterior,
                          double beta_value, int starts_per_ball, std::mt19937_64& rng) {
  MultistartOptions options;
  options.starts_per_ball = starts_per_ball;
  const double fd_step = 1e-6 * posterior.config().kernel.length_scale;
  auto acquisition = [&](const Vector& x) {
    return posterior.mean(x) + beta_value * std::sqrt(posterior.variance(x));
  };
  return maximize_over_region(region, acquisition, fd_step, options, rng);
}

Vector sample_uniform_from_region(const SafeRegion& region, std::mt19937_64& rng) {
  if (region.ball_count() == 0)
    throw std::invalid_argument("sample_uniform_from_region: region has no balls");

  const auto& centers = region.centers();
  const auto& radii = region.radii();
  const auto dim = static_cast<double>(centers[0].size());

  std::vector<double> weights(radii.size(), 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    weights[j] = std::pow(radii[j], dim);
    total += weights[j];
  }
  if (total == 0.0) {  // all balls degenerate: uniform choice among centers
    std::uniform_int_distribution<std::size_t> pick(0, centers.size() - 1);
    return centers[pick(rng)];
  }

  std::discrete_distribution<std::size_t> ball_dist(weights.begin(), weights.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t j = ball_dist(rng);
    const Vector x = uniform_in_ball(centers[j], radii[j], rng);
    if (!region.domain().contains(x)) continue;
    int covering = 0;
    for (std::size_t m = 0; m < centers.size(); ++m)
      if (radii[m] > 0.0 && (x - centers[m]).norm() <= radii[m]) ++covering;
    if (unit(rng) * covering <= 1.0) return x;
  }
  return centers[0];  // unreachable for any sane region
}

}  // namespace losbo
