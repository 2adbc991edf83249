#include "losbo/instance.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "losbo/seeding.hpp"

namespace losbo {
namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

// deterministic interior sample, independent of any campaign RNG stream
std::vector<Vector> deterministic_sample(const Domain& domain, int count) {
  auto rng = make_rng(0x5eedf00dULL);
  std::vector<Vector> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vector x(domain.dimension());
    for (int d = 0; d < domain.dimension(); ++d) {
      std::uniform_real_distribution<double> dist(domain.lower[d], domain.upper[d]);
      x[d] = dist(rng);
    }
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace

std::vector<Vector> linspace_grid(const Domain& domain, int points_per_dim) {
  if (domain.dimension() != 1)
    throw std::invalid_argument("linspace_grid: only 1d grids are supported");
  if (points_per_dim < 2) throw std::invalid_argument("linspace_grid: need >= 2 points");
  std::vector<Vector> grid;
  grid.reserve(points_per_dim);
  for (double x : linspace(domain.lower[0], domain.upper[0], points_per_dim)) {
    Vector v(1);
    v[0] = x;
    grid.push_back(std::move(v));
  }
  return grid;
}

double estimate_lipschitz(const TargetFn& f, const Domain& domain, int grid_size) {
  if (grid_size < 3) throw std::invalid_argument("estimate_lipschitz: grid too small");
  double max_slope = 0.0;

  if (domain.dimension() == 1) {
    const auto xs = linspace(domain.lower[0], domain.upper[0], grid_size);
    const double dx = xs[1] - xs[0];
    Vector v(1);
    v[0] = xs[0];
    double prev = f(v);
    for (int i = 1; i < grid_size; ++i) {
      v[0] = xs[i];
      const double cur = f(v);
      max_slope = std::max(max_slope, std::abs(cur - prev) / dx);
      prev = cur;
    }
    return 1.1 * max_slope;
  }

  const int dim = domain.dimension();
  const Vector center = 0.5 * (domain.lower + domain.upper);

  // per-axis line scans through the center
  const int line_points = std::max(grid_size, 64);
  for (int d = 0; d < dim; ++d) {
    const auto xs = linspace(domain.lower[d], domain.upper[d], line_points);
    const double dx = xs[1] - xs[0];
    Vector v = center;
    v[d] = xs[0];
    double prev = f(v);
    for (int i = 1; i < line_points; ++i) {
      v[d] = xs[i];
      const double cur = f(v);
      max_slope = std::max(max_slope, std::abs(cur - prev) / dx);
      prev = cur;
    }
  }

  // gradient norms at sampled interior points
  const int samples = std::max(grid_size, 256);
  const double h = 1e-5 * (domain.upper - domain.lower).minCoeff();
  for (const Vector& p : deterministic_sample(domain, samples)) {
    Vector grad(dim);
    Vector probe = p;
    for (int d = 0; d < dim; ++d) {
      const double lo = std::max(p[d] - h, domain.lower[d]);
      const double hi = std::min(p[d] + h, domain.upper[d]);
      probe[d] = hi;
      const double fp = f(probe);
      probe[d] = lo;
      const double fm = f(probe);
      probe[d] = p[d];
      grad[d] = (fp - fm) / (hi - lo);
    }
    max_slope = std::max(max_slope, grad.norm());
  }
  return 1.1 * max_slope;
}

double compute_threshold(const TargetFn& f, const Domain& domain, int grid_size) {
  std::vector<double> values;
  if (domain.dimension() == 1) {
    values.reserve(grid_size);
    Vector v(1);
    for (double x : linspace(domain.lower[0], domain.upper[0], grid_size)) {
      v[0] = x;
      values.push_back(f(v));
    }
  } else {
    for (const Vector& p : deterministic_sample(domain, grid_size * domain.dimension()))
      values.push_back(f(p));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return mean - 0.2 * std::sqrt(var);
}

std::optional<std::pair<double, double>> pick_initial_safe_interval(
    const TargetFn& f, const Domain& domain, double threshold, double noise_margin,
    int grid_size) {
  if (domain.dimension() != 1)
    throw std::invalid_argument("pick_initial_safe_interval: 1d targets only");
  const auto xs = linspace(domain.lower[0], domain.upper[0], grid_size);
  std::vector<double> values(xs.size());
  Vector v(1);
  int argmax = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    v[0] = xs[i];
    values[i] = f(v);
    if (values[i] > values[static_cast<std::size_t>(argmax)]) argmax = static_cast<int>(i);
  }
  const double level = threshold + noise_margin;
  if (values[static_cast<std::size_t>(argmax)] < level) return std::nullopt;

  int left = argmax;
  while (left > 0 && values[static_cast<std::size_t>(left - 1)] >= level) --left;
  int right = argmax;
  while (right + 1 < static_cast<int>(xs.size()) &&
         values[static_cast<std::size_t>(right + 1)] >= level)
    ++right;
  return std::make_pair(xs[static_cast<std::size_t>(left)],
                        xs[static_cast<std::size_t>(right)]);
}

double sample_initial_point(const std::pair<double, double>& interval,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(interval.first, interval.second);
  return interval.first == interval.second ? interval.first : dist(rng);
}

double max_on_grid(const TargetFn& f, const Domain& domain, int grid_size) {
  double best = -std::numeric_limits<double>::infinity();
  if (domain.dimension() == 1) {
    Vector v(1);
    for (double x : linspace(domain.lower[0], domain.upper[0], grid_size)) {
      v[0] = x;
      best = std::max(best, f(v));
    }
  } else {
    const Vector center = 0.5 * (domain.lower + domain.upper);
    best = f(center);
    for (const Vector& p : deterministic_sample(domain, grid_size * domain.dimension()))
      best = std::max(best, f(p));
  }
  return best;
}

double normalized_metric(double f_at_recommended, double threshold, double f_star) {
  const double span = f_star - threshold;
  if (!(span > 0.0))
    throw std::invalid_argument("normalized_metric: degenerate instance with f* <= h");
  return (f_at_recommended - threshold) / span;
}

}  // namespace losbo
