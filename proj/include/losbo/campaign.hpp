#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "losbo/bounds.hpp"
#include "losbo/gp.hpp"
#include "losbo/instance.hpp"
#include "losbo/noise.hpp"
#include "losbo/rkhs.hpp"

namespace losbo {

enum class AlgorithmId { SafeOpt, LoSBO, LoSGpUcb, RandomSearch };

AlgorithmId algorithm_from_string(const std::string& name);
std::string to_string(AlgorithmId id);

struct FunctionGenSpec {
  std::string method = "se_onb";  // se_onb | pre_rkhs | files
  Kernel kernel{KernelFamily::SquaredExponential, 0.2 / std::numbers::sqrt2, 1.0};
  int num_terms = 40;                              // se_onb
  int num_centers_min = 20, num_centers_max = 60;  // pre_rkhs
  double target_norm = 10.0;
  Domain domain = Domain::interval(-2.0, 2.0);
  std::vector<std::string> files;
};

struct CampaignConfig {
  AlgorithmId algorithm = AlgorithmId::LoSBO;
  int num_functions = 10;
  int repetitions = 100;
  int iterations = 20;
  std::uint64_t seed = 1;
  int grid_size = 500;       // discrete-domain algorithms
  int prep_grid_size = 2000;  // L / h / f* / initial-interval estimation
  FunctionGenSpec functions;
  bool gp_given = false;  // false: derive the paper-protocol default GP config
  GpConfig gp;
  BoundSpec bound = BoundSpec::fixed(2.0);
  NoiseSpec noise{NoiseKind::UniformBounded, 0.01};
  double noise_margin_factor = 2.0;  // E = factor * B_eps
  int initial_safe_points = 0;  // 0 = auto: 2 for RKHS campaigns, 1 for benchmarks
  int starts_per_ball = 2;
  bool compute_metric = true;
  bool expect_zero_violations = false;
  std::string output_prefix;  // empty: no CSV output
  int workers = 0;            // 0: LOSBO_WORKERS env or hardware concurrency

  std::string benchmark;  // nonempty: benchmark target instead of RKHS functions
  double benchmark_threshold = std::numeric_limits<double>::quiet_NaN();
  double benchmark_initial_level = std::numeric_limits<double>::quiet_NaN();
};

struct StepTrace {
  int t = 0;
  bool queried = false;
  Vector x;
  double y = std::numeric_limits<double>::quiet_NaN();
  double metric = std::numeric_limits<double>::quiet_NaN();
  int safe_size = 0;  // |S_t| on grids; positive-radius ball count for regions
  double beta = std::numeric_limits<double>::quiet_NaN();
  double best_acquisition = std::numeric_limits<double>::quiet_NaN();
  bool violation = false;
  std::string status = "running";
};

struct RunRecord {
  int function_id = 0;
  int rep = 0;
  AlgorithmId algorithm = AlgorithmId::LoSBO;
  std::uint64_t seed = 0;
  std::vector<StepTrace> steps;
  int safety_violation_count = 0;
  bool not_started = false;
  bool stuck = false;
  double final_metric = std::numeric_limits<double>::quiet_NaN();
  double best_observed = std::numeric_limits<double>::quiet_NaN();
  bool failed = false;
  std::string error;
};

struct CampaignSummary {
  std::string algorithm;
  int runs = 0;
  int failed_runs = 0;
  int iterations = 0;
  int num_functions = 0;
  double not_started_pct = 0.0;
  double violation_runs_pct = 0.0;
  double worst_function_violation_pct = 0.0;
  double final_performance_pct = 0.0;
  double mean_final_metric = 0.0;
  double mean_best_observed = 0.0;
  int total_violation_steps = 0;
  std::vector<double> step_metric_mean, step_metric_sd;
  std::vector<double> per_function_violation_pct, per_function_final_mean;
};

struct CampaignResult {
  std::vector<RunRecord> records;
  CampaignSummary summary;
};

/// Everything derived from one target function before any run starts.
struct PreparedTarget {
  TargetFn f;
  Domain domain;
  double lipschitz = 0.0;
  double threshold = 0.0;
  double noise_margin = 0.0;
  double f_star = 0.0;
  std::pair<double, double> safe_interval{0.0, 0.0};  // 1d targets
  std::shared_ptr<const RkhsFunction> rkhs;           // set in RKHS mode
  std::function<Vector(std::mt19937_64&)> initial_point;
  GpConfig gp;  // effective regression config for this campaign
};

PreparedTarget prepare_rkhs_target(const CampaignConfig& config, int function_id);
PreparedTarget prepare_benchmark_target(const CampaignConfig& config);

RunRecord run_one(const CampaignConfig& config, const PreparedTarget& target,
                  int function_id, int rep);

CampaignResult run_campaign(const CampaignConfig& config);

CampaignSummary aggregate(const std::vector<RunRecord>& records);

void write_runs_csv(const std::string& path, const std::vector<RunRecord>& records);
void write_summary_csv(const std::string& path, const CampaignSummary& summary);
void write_steps_csv(const std::string& path, const CampaignSummary& summary);
std::vector<RunRecord> read_runs_csv(const std::string& path);

std::string format_double(double v);

int resolve_workers(int requested);
void parallel_for(int count, int workers, const std::function<void(int)>& body);

}  // namespace losbo
