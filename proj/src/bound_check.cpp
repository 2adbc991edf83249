#include "losbo/bound_check.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "losbo/campaign.hpp"
#include "losbo/instance.hpp"
#include "losbo/rkhs.hpp"
#include "losbo/seeding.hpp"

namespace losbo {

bool uncertainty_band_violated(const GpPosterior& posterior,
                               const std::vector<Vector>& grid,
                               const Vector& target_values, double beta) {
  Vector means, variances;
  posterior.predict(grid, means, variances);
  for (Eigen::Index i = 0; i < means.size(); ++i)
    if (std::abs(target_values[i] - means[i]) > beta * std::sqrt(variances[i])) return true;
  return false;
}

BoundCheckResult run_bound_check(const BoundCheckConfig& config) {
  if (config.num_functions <= 0 || config.datasets_per_function <= 0)
    throw std::invalid_argument("bound check needs positive function/dataset counts");

  const auto grid = linspace_grid(config.domain, config.check_grid_size);
  const double gp_lambda = std::isnan(config.gp_noise_variance) ? config.noise_variance
                                                                : config.gp_noise_variance;
  const GpConfig gp_config(
      Kernel(KernelFamily::SquaredExponential, config.length_scale, 1.0), gp_lambda, 0.0);

  std::vector<RkhsFunction> functions;
  std::vector<Vector> target_on_grid;
  functions.reserve(static_cast<std::size_t>(config.num_functions));
  for (int i = 0; i < config.num_functions; ++i) {
    functions.push_back(sample_se_onb(config.length_scale, config.domain, config.num_terms,
                                      config.target_norm,
                                      derive_seed(config.seed, 0xB0, i)));
    Vector values(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t g = 0; g < grid.size(); ++g)
      values[static_cast<Eigen::Index>(g)] = functions.back().value(grid[g]);
    target_on_grid.push_back(std::move(values));
  }

  const int total = config.num_functions * config.datasets_per_function;
  std::vector<char> violated(static_cast<std::size_t>(total), 0);
  parallel_for(total, resolve_workers(config.workers), [&](int idx) {
    const int fn = idx / config.datasets_per_function;
    const int ds = idx % config.datasets_per_function;
    auto rng = make_rng(derive_seed(config.seed, 0xB1,
                                    static_cast<std::uint64_t>(fn) * 1000003ULL +
                                        static_cast<std::uint64_t>(ds)));
    std::uniform_real_distribution<double> input_dist(config.input_lo, config.input_hi);
    std::normal_distribution<double> noise(0.0, std::sqrt(config.noise_variance));

    std::vector<Vector> inputs;
    Vector targets(config.points_per_dataset);
    inputs.reserve(static_cast<std::size_t>(config.points_per_dataset));
    for (int p = 0; p < config.points_per_dataset; ++p) {
      Vector x(1);
      x[0] = input_dist(rng);
      targets[p] = functions[static_cast<std::size_t>(fn)].value(x) + noise(rng);
      inputs.push_back(std::move(x));
    }
    const GpPosterior posterior(gp_config, std::move(inputs), std::move(targets));
    violated[static_cast<std::size_t>(idx)] = uncertainty_band_violated(
        posterior, grid, target_on_grid[static_cast<std::size_t>(fn)], config.beta);
  });

  BoundCheckResult result;
  result.datasets_per_function = config.datasets_per_function;
  result.per_function_violations.assign(static_cast<std::size_t>(config.num_functions), 0);
  int total_violations = 0;
  for (int idx = 0; idx < total; ++idx) {
    if (violated[static_cast<std::size_t>(idx)]) {
      ++result.per_function_violations[static_cast<std::size_t>(idx / config.datasets_per_function)];
      ++total_violations;
    }
  }
  double mean = 0.0;
  for (int c : result.per_function_violations) mean += c;
  mean /= config.num_functions;
  double var = 0.0;
  for (int c : result.per_function_violations) var += (c - mean) * (c - mean);
  var /= config.num_functions;
  result.mean_violations = mean;
  result.sd_violations = std::sqrt(var);
  result.violation_fraction = static_cast<double>(total_violations) / total;

  if (!config.output.empty()) write_bound_check_csv(config.output, result);
  return result;
}

void write_bound_check_csv(const std::string& path, const BoundCheckResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "function_id,violated_datasets,datasets\n";
  for (std::size_t i = 0; i < result.per_function_violations.size(); ++i)
    out << i << ',' << result.per_function_violations[i] << ','
        << result.datasets_per_function << '\n';
  out << "mean," << format_double(result.mean_violations) << ",\n";
  out << "sd," << format_double(result.sd_violations) << ",\n";
  out << "fraction," << format_double(result.violation_fraction) << ",\n";
}

}  // namespace losbo
