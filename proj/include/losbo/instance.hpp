#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "losbo/kernel.hpp"

namespace losbo {

using TargetFn = std::function<double(const Vector&)>;

std::vector<Vector> linspace_grid(const Domain& domain, int points_per_dim);

/// Slightly conservative Lipschitz upper bound: maximum observed slope times
/// 1.1. In 1d this is the max adjacent finite-difference slope on a fine grid
/// (grid_size points, default 2000). In higher dimensions it combines
/// per-axis line scans through the box center with central-difference
/// gradient norms at a deterministic sample of interior points; pure box
/// sampling alone misses thin radial shells in high dimension.
double estimate_lipschitz(const TargetFn& f, const Domain& domain, int grid_size = 2000);

/// h = empirical mean - 0.2 * empirical SD on a fine grid (population SD).
double compute_threshold(const TargetFn& f, const Domain& domain, int grid_size = 2000);

/// Largest interval around the 1d argmax on which f >= h + E. Empty when not
/// even the argmax clears the margin (the caller regenerates the instance).
std::optional<std::pair<double, double>> pick_initial_safe_interval(
    const TargetFn& f, const Domain& domain, double threshold, double noise_margin,
    int grid_size = 2000);

/// One point uniformly from the interval; the singleton initial safe set.
double sample_initial_point(const std::pair<double, double>& interval,
                            std::mt19937_64& rng);

double max_on_grid(const TargetFn& f, const Domain& domain, int grid_size = 2000);

/// (f(recommended) - h) / (f* - h). Exceeds [0,1] only if the recommended
/// point is unsafe; deliberately not clamped.
double normalized_metric(double f_at_recommended, double threshold, double f_star);

}  // namespace losbo
