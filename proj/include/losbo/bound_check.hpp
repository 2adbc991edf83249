#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "losbo/gp.hpp"

namespace losbo {

/// Heuristic-beta coverage experiment: sample SE-ONB targets, fit GPs on
/// noisy datasets drawn from a subinterval, and count datasets where the
/// target escapes the mean +- beta * sigma band anywhere on the check grid.
struct BoundCheckConfig {
  int num_functions = 20;
  int datasets_per_function = 200;
  int points_per_dataset = 100;
  double input_lo = 0.0, input_hi = 1.0;  // data inputs drawn uniformly here
  double noise_variance = 0.01;           // normal observation noise
  double beta = 2.0;
  double length_scale = 0.2 / std::numbers::sqrt2;
  double target_norm = 10.0;
  int num_terms = 40;
  Domain domain = Domain::interval(-2.0, 2.0);  // band checked over this box
  int check_grid_size = 1000;
  double gp_noise_variance = std::numeric_limits<double>::quiet_NaN();  // default: noise_variance
  std::uint64_t seed = 1;
  int workers = 0;
  std::string output;  // optional csv path
};

struct BoundCheckResult {
  std::vector<int> per_function_violations;  // violated datasets per function
  int datasets_per_function = 0;
  double mean_violations = 0.0;  // over functions
  double sd_violations = 0.0;
  double violation_fraction = 0.0;  // total violated / total datasets
};

bool uncertainty_band_violated(const GpPosterior& posterior,
                               const std::vector<Vector>& grid,
                               const Vector& target_values, double beta);

BoundCheckResult run_bound_check(const BoundCheckConfig& config);

void write_bound_check_csv(const std::string& path, const BoundCheckResult& result);

}  // namespace losbo
