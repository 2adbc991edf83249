#include "losbo/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace losbo {

using nlohmann::json;

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return j;
}

namespace {

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

template <typename T>
T require(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing required config key: " + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

Kernel kernel_from_json(const json& j) {
  try {
    return Kernel(kernel_family_from_string(require<std::string>(j, "family")),
                  require<double>(j, "length_scale"),
                  get_or<double>(j, "output_variance", 1.0));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Domain domain_from_json(const json& j) {
  try {
    if (j.is_array()) {
      if (j.size() != 2) throw ConfigError("1d domain must be [lower, upper]");
      return Domain::interval(j.at(0).get<double>(), j.at(1).get<double>());
    }
    const auto lo = require<std::vector<double>>(j, "lower");
    const auto hi = require<std::vector<double>>(j, "upper");
    Vector l(static_cast<Eigen::Index>(lo.size())), u(static_cast<Eigen::Index>(hi.size()));
    for (std::size_t i = 0; i < lo.size(); ++i) l[static_cast<Eigen::Index>(i)] = lo[i];
    for (std::size_t i = 0; i < hi.size(); ++i) u[static_cast<Eigen::Index>(i)] = hi[i];
    return Domain(l, u);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

NoiseSpec noise_from_json(const json& j) {
  try {
    NoiseSpec spec;
    spec.kind = noise_kind_from_string(require<std::string>(j, "kind"));
    spec.magnitude = get_or<double>(j, "magnitude", 0.0);
    if (spec.kind != NoiseKind::None && !(spec.magnitude > 0.0))
      throw ConfigError("noise magnitude must be positive");
    return spec;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

BoundSpec bound_from_json(const json& j) {
  try {
    const auto strategy = bound_strategy_from_string(require<std::string>(j, "strategy"));
    if (strategy == BoundStrategy::FixedHeuristic)
      return BoundSpec::fixed(require<double>(j, "fixed_value"));
    const double b = require<double>(j, "rkhs_norm_bound");
    const double r = require<double>(j, "subgaussian_constant");
    const double delta = require<double>(j, "confidence");
    return strategy == BoundStrategy::AbbasiYadkori ? BoundSpec::abbasi_yadkori(b, r, delta)
                                                    : BoundSpec::fiedler(b, r, delta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

GpConfig gp_from_json(const json& j) {
  try {
    return GpConfig(kernel_from_json(j.at("kernel")), require<double>(j, "noise_variance"),
                    get_or<double>(j, "prior_mean", 0.0));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad gp config: ") + e.what());
  }
}

FunctionGenSpec function_gen_from_json(const json& j) {
  FunctionGenSpec spec;
  spec.method = get_or<std::string>(j, "method", "se_onb");
  if (spec.method == "files") {
    spec.files = require<std::vector<std::string>>(j, "files");
    return spec;
  }
  if (j.contains("kernel")) {
    spec.kernel = kernel_from_json(j.at("kernel"));
  } else if (j.contains("length_scale")) {
    try {
      spec.kernel = Kernel(KernelFamily::SquaredExponential, j.at("length_scale").get<double>(),
                           1.0);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("domain")) spec.domain = domain_from_json(j.at("domain"));
  spec.num_terms = get_or<int>(j, "num_terms", spec.num_terms);
  spec.num_centers_min = get_or<int>(j, "num_centers_min", spec.num_centers_min);
  spec.num_centers_max = get_or<int>(j, "num_centers_max", spec.num_centers_max);
  spec.target_norm = get_or<double>(j, "target_norm", spec.target_norm);
  return spec;
}

CampaignConfig campaign_config_from_json(const json& j) {
  CampaignConfig config;
  try {
    config.algorithm = algorithm_from_string(require<std::string>(j, "algorithm"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  config.iterations = require<int>(j, "iterations");
  config.repetitions = require<int>(j, "repetitions");
  config.seed = get_or<std::uint64_t>(j, "seed", 1);
  config.num_functions = get_or<int>(j, "num_functions", config.num_functions);
  config.grid_size = get_or<int>(j, "grid_size", config.grid_size);
  config.prep_grid_size = get_or<int>(j, "prep_grid_size", config.prep_grid_size);
  config.noise_margin_factor = get_or<double>(j, "noise_margin_factor", 2.0);
  config.initial_safe_points = get_or<int>(j, "initial_safe_points", 0);
  config.starts_per_ball = get_or<int>(j, "starts_per_ball", 2);
  config.compute_metric = get_or<bool>(j, "compute_metric", true);
  config.expect_zero_violations = get_or<bool>(j, "expect_zero_violations", false);
  config.output_prefix = get_or<std::string>(j, "output_prefix", "");
  config.workers = get_or<int>(j, "workers", 0);
  config.benchmark = get_or<std::string>(j, "benchmark", "");
  config.benchmark_threshold =
      get_or<double>(j, "benchmark_threshold", config.benchmark_threshold);
  config.benchmark_initial_level =
      get_or<double>(j, "benchmark_initial_level", config.benchmark_initial_level);

  if (j.contains("functions")) config.functions = function_gen_from_json(j.at("functions"));
  if (j.contains("gp")) {
    config.gp = gp_from_json(j.at("gp"));
    config.gp_given = true;
  }
  if (j.contains("bound")) config.bound = bound_from_json(j.at("bound"));
  if (j.contains("noise")) config.noise = noise_from_json(j.at("noise"));
  return config;
}

BoundCheckConfig bound_check_config_from_json(const json& j) {
  BoundCheckConfig config;
  config.num_functions = get_or<int>(j, "num_functions", config.num_functions);
  config.datasets_per_function =
      get_or<int>(j, "datasets_per_function", config.datasets_per_function);
  config.points_per_dataset = get_or<int>(j, "points_per_dataset", config.points_per_dataset);
  config.input_lo = get_or<double>(j, "input_lo", config.input_lo);
  config.input_hi = get_or<double>(j, "input_hi", config.input_hi);
  config.noise_variance = get_or<double>(j, "noise_variance", config.noise_variance);
  config.beta = get_or<double>(j, "beta", config.beta);
  config.length_scale = get_or<double>(j, "length_scale", config.length_scale);
  config.target_norm = get_or<double>(j, "target_norm", config.target_norm);
  config.num_terms = get_or<int>(j, "num_terms", config.num_terms);
  if (j.contains("domain")) config.domain = domain_from_json(j.at("domain"));
  config.check_grid_size = get_or<int>(j, "check_grid_size", config.check_grid_size);
  config.gp_noise_variance = get_or<double>(j, "gp_noise_variance", config.gp_noise_variance);
  config.seed = get_or<std::uint64_t>(j, "seed", 1);
  config.workers = get_or<int>(j, "workers", 0);
  config.output = get_or<std::string>(j, "output", "");
  return config;
}

GenerateConfig generate_config_from_json(const json& j) {
  GenerateConfig config;
  config.functions = function_gen_from_json(j.contains("functions") ? j.at("functions") : j);
  if (config.functions.method == "files")
    throw ConfigError("generate requires method se_onb or pre_rkhs");
  config.count = get_or<int>(j, "count", config.count);
  config.seed = get_or<std::uint64_t>(j, "seed", 1);
  config.output_dir = get_or<std::string>(j, "output_dir", config.output_dir);
  config.prefix = get_or<std::string>(j, "prefix", config.prefix);
  return config;
}

}  // namespace losbo
