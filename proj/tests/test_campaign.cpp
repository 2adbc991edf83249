#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "losbo/campaign.hpp"
#include "losbo/config.hpp"

#include <nlohmann/json.hpp>

using namespace losbo;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CampaignConfig tiny_losbo_config() {
  CampaignConfig config;
  config.algorithm = AlgorithmId::LoSBO;
  config.num_functions = 2;
  config.repetitions = 3;
  config.iterations = 5;
  config.seed = 7;
  config.grid_size = 80;
  config.prep_grid_size = 400;
  config.noise = NoiseSpec{NoiseKind::UniformBounded, 0.01};
  config.bound = BoundSpec::fixed(2.0);
  config.workers = 1;
  return config;
}

}  // namespace

TEST_CASE("identical configs produce byte-identical csv output") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "losbo_campaign_test";
  fs::create_directories(dir);

  auto config = tiny_losbo_config();
  config.output_prefix = (dir / "a").string();
  run_campaign(config);
  config.output_prefix = (dir / "b").string();
  config.workers = 2;  // worker count must not affect the output bytes
  run_campaign(config);

  for (const char* suffix : {"_runs.csv", "_summary.csv", "_steps.csv"})
    CHECK(slurp((dir / ("a" + std::string(suffix))).string()) ==
          slurp((dir / ("b" + std::string(suffix))).string()));
  fs::remove_all(dir);
}

TEST_CASE("losbo campaign stays safe and reports sane aggregates") {
  auto config = tiny_losbo_config();
  const auto result = run_campaign(config);
  CHECK(result.records.size() == 6);
  CHECK(result.summary.total_violation_steps == 0);
  CHECK(result.summary.violation_runs_pct == 0.0);
  CHECK(result.summary.failed_runs == 0);
  for (const auto& record : result.records) {
    CHECK_FALSE(record.failed);
    CHECK(record.steps.size() <= 5);
    for (const auto& step : record.steps)
      if (step.queried) CHECK(step.safe_size >= 1);
  }
  // metric should be computed and inside the sane range for safe runs
  CHECK(result.summary.mean_final_metric > 0.0);
  CHECK(result.summary.mean_final_metric <= 1.0 + 1e-9);
}

TEST_CASE("zero repetitions give an empty report") {
  auto config = tiny_losbo_config();
  config.repetitions = 0;
  const auto result = run_campaign(config);
  CHECK(result.records.empty());
  CHECK(result.summary.runs == 0);
}

TEST_CASE("runs csv round-trips through the reader") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "losbo_roundtrip_test";
  fs::create_directories(dir);

  auto config = tiny_losbo_config();
  config.algorithm = AlgorithmId::SafeOpt;
  config.bound = BoundSpec::abbasi_yadkori(10.0, 0.01, 0.01);
  config.output_prefix = (dir / "rt").string();
  const auto result = run_campaign(config);

  const auto records = read_runs_csv((dir / "rt_runs.csv").string());
  const auto summary = aggregate(records);
  CHECK(summary.runs == result.summary.runs);
  CHECK(summary.violation_runs_pct == result.summary.violation_runs_pct);
  CHECK(summary.not_started_pct == result.summary.not_started_pct);
  CHECK(summary.final_performance_pct == result.summary.final_performance_pct);
  CHECK(summary.mean_best_observed == result.summary.mean_best_observed);

  // report path writes the same summary csv bytes
  write_summary_csv((dir / "rt2_summary.csv").string(), summary);
  CHECK(slurp((dir / "rt_summary.csv").string()) == slurp((dir / "rt2_summary.csv").string()));
  fs::remove_all(dir);
}

TEST_CASE("region campaign on the gaussian benchmark") {
  CampaignConfig config;
  config.algorithm = AlgorithmId::LoSGpUcb;
  config.benchmark = "gaussian10";
  config.benchmark_threshold = 0.2;
  config.benchmark_initial_level = 0.4;
  config.repetitions = 2;
  config.iterations = 6;
  config.seed = 3;
  config.prep_grid_size = 300;
  config.noise = NoiseSpec{NoiseKind::UniformBounded, 0.01};
  config.bound = BoundSpec::fixed(2.0);
  config.compute_metric = false;
  config.workers = 1;

  const auto result = run_campaign(config);
  CHECK(result.summary.total_violation_steps == 0);
  for (const auto& record : result.records) {
    CHECK_FALSE(record.failed);
    CHECK(record.steps.size() == 6);
    CHECK(record.best_observed > 0.3);
  }

  config.algorithm = AlgorithmId::RandomSearch;
  const auto rs = run_campaign(config);
  CHECK(rs.summary.total_violation_steps == 0);
  CHECK_FALSE(rs.records.front().failed);
}

TEST_CASE("grid algorithms reject multi-d benchmarks") {
  CampaignConfig config;
  config.algorithm = AlgorithmId::LoSBO;
  config.benchmark = "gaussian10";
  config.repetitions = 1;
  config.iterations = 2;
  CHECK_THROWS_AS(run_campaign(config), std::invalid_argument);
}

TEST_CASE("campaign config parses from json") {
  const auto j = nlohmann::json::parse(R"({
    "algorithm": "safeopt",
    "iterations": 20,
    "repetitions": 100,
    "num_functions": 10,
    "seed": 99,
    "functions": {"method": "se_onb", "length_scale": 0.1414, "num_terms": 40,
                  "target_norm": 10.0, "domain": [-2.0, 2.0]},
    "gp": {"kernel": {"family": "squared_exponential", "length_scale": 0.1414},
           "noise_variance": 0.01},
    "bound": {"strategy": "abbasi_yadkori", "rkhs_norm_bound": 10.0,
              "subgaussian_constant": 0.01, "confidence": 0.01},
    "noise": {"kind": "uniform", "magnitude": 0.01},
    "expect_zero_violations": false
  })");
  const auto config = campaign_config_from_json(j);
  CHECK(config.algorithm == AlgorithmId::SafeOpt);
  CHECK(config.iterations == 20);
  CHECK(config.seed == 99);
  CHECK(config.gp_given);
  CHECK(config.bound.strategy == BoundStrategy::AbbasiYadkori);
  CHECK(config.noise.kind == NoiseKind::UniformBounded);

  CHECK_THROWS_AS(campaign_config_from_json(nlohmann::json::parse(R"({"algorithm":"x"})")),
                  ConfigError);
  CHECK_THROWS_AS(campaign_config_from_json(nlohmann::json::parse(
                      R"({"algorithm":"losbo","iterations":5})")),
                  ConfigError);
}
