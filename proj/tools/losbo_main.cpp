#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "losbo/bound_check.hpp"
#include "losbo/campaign.hpp"
#include "losbo/config.hpp"
#include "losbo/rkhs.hpp"
#include "losbo/seeding.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitSafetyViolation = 3;

int cmd_generate(const std::string& config_path) {
  const auto config = losbo::generate_config_from_json(losbo::load_json_file(config_path));
  std::filesystem::create_directories(config.output_dir);
  for (int i = 0; i < config.count; ++i) {
    const auto seed = losbo::derive_seed(config.seed, 0xF17E, static_cast<std::uint64_t>(i) * 64);
    losbo::RkhsFunction f;
    if (config.functions.method == "se_onb") {
      f = losbo::sample_se_onb(config.functions.kernel.length_scale, config.functions.domain,
                               config.functions.num_terms, config.functions.target_norm, seed);
    } else {
      auto size_rng = losbo::make_rng(losbo::derive_seed(seed, 0xCC));
      std::uniform_int_distribution<int> centers(config.functions.num_centers_min,
                                                 config.functions.num_centers_max);
      f = losbo::sample_pre_rkhs(config.functions.kernel, config.functions.domain,
                                 centers(size_rng), config.functions.target_norm, seed);
    }
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%03d.rkhs", config.prefix.c_str(), i);
    const auto path = std::filesystem::path(config.output_dir) / name;
    losbo::save_rkhs_function(f, path.string());
    std::cout << path.string() << "\n";
  }
  return 0;
}

int cmd_run(const std::string& config_path) {
  const auto config = losbo::campaign_config_from_json(losbo::load_json_file(config_path));
  const auto result = losbo::run_campaign(config);
  const auto& s = result.summary;
  std::cout << "algorithm:               " << s.algorithm << "\n"
            << "runs:                    " << s.runs << " (" << s.failed_runs << " failed)\n"
            << "not started %:           " << s.not_started_pct << "\n"
            << "safety violations %:     " << s.violation_runs_pct << "\n"
            << "worst-case violations %: " << s.worst_function_violation_pct << "\n"
            << "final performance %:     " << s.final_performance_pct << "\n"
            << "mean best observed:      " << s.mean_best_observed << "\n";
  if (!config.output_prefix.empty())
    std::cout << "csv: " << config.output_prefix << "_{runs,summary,steps}.csv\n";
  if (config.expect_zero_violations && s.total_violation_steps > 0) {
    std::cerr << "safety violations detected in a zero-violation mode ("
              << s.total_violation_steps << " steps)\n";
    return kExitSafetyViolation;
  }
  return 0;
}

int cmd_report(const std::string& runs_path, const std::string& out_prefix) {
  const auto records = losbo::read_runs_csv(runs_path);
  const auto summary = losbo::aggregate(records);
  losbo::write_summary_csv(out_prefix + "_summary.csv", summary);
  losbo::write_steps_csv(out_prefix + "_steps.csv", summary);
  std::cout << "algorithm:               " << summary.algorithm << "\n"
            << "runs:                    " << summary.runs << "\n"
            << "not started %:           " << summary.not_started_pct << "\n"
            << "safety violations %:     " << summary.violation_runs_pct << "\n"
            << "worst-case violations %: " << summary.worst_function_violation_pct << "\n"
            << "final performance %:     " << summary.final_performance_pct << "\n";
  return 0;
}

int cmd_bound_check(const std::string& config_path) {
  const auto config = losbo::bound_check_config_from_json(losbo::load_json_file(config_path));
  const auto result = losbo::run_bound_check(config);
  std::cout << "datasets per function: " << result.datasets_per_function << "\n"
            << "violations (mean +- sd over functions): " << result.mean_violations << " +- "
            << result.sd_violations << "\n"
            << "violation fraction: " << result.violation_fraction << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safe Bayesian optimization experiments (SafeOpt / LoSBO / LoS-GP-UCB)"};
  app.require_subcommand(1);

  std::string config_path, runs_path, out_prefix = "report";

  auto* generate = app.add_subcommand("generate", "sample target functions and pin them to files");
  generate->add_option("--config", config_path, "json config")->required();

  auto* run = app.add_subcommand("run", "execute a campaign from a config file");
  run->add_option("--config", config_path, "json config")->required();

  auto* report = app.add_subcommand("report", "aggregate a runs csv into summary tables");
  report->add_option("--runs", runs_path, "runs csv produced by `run`")->required();
  report->add_option("--out", out_prefix, "output prefix for summary/steps csv");

  auto* bound_check = app.add_subcommand("bound-check", "heuristic-beta band violation experiment");
  bound_check->add_option("--config", config_path, "json config")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(config_path);
    if (run->parsed()) return cmd_run(config_path);
    if (report->parsed()) return cmd_report(runs_path, out_prefix);
    if (bound_check->parsed()) return cmd_bound_check(config_path);
  } catch (const losbo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
