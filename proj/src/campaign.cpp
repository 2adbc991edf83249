#include "losbo/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "losbo/safe_grid.hpp"
#include "losbo/safe_region.hpp"
#include "losbo/benchmarks.hpp"
#include "losbo/seeding.hpp"

namespace losbo {

AlgorithmId algorithm_from_string(const std::string& name) {
  if (name == "safeopt") return AlgorithmId::SafeOpt;
  if (name == "losbo") return AlgorithmId::LoSBO;
  if (name == "los_gp_ucb" || name == "los-gp-ucb") return AlgorithmId::LoSGpUcb;
  if (name == "random_search" || name == "random-search") return AlgorithmId::RandomSearch;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::SafeOpt: return "safeopt";
    case AlgorithmId::LoSBO: return "losbo";
    case AlgorithmId::LoSGpUcb: return "los_gp_ucb";
    case AlgorithmId::RandomSearch: return "random_search";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LOSBO_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

constexpr std::uint64_t kFunctionStream = 0xF17E;
constexpr std::uint64_t kRunStream = 0x5217;
constexpr std::uint64_t kMetricStream = 0x4D45;

GpConfig default_rkhs_gp(const CampaignConfig& config) {
  const double r = config.noise.subgaussian_constant();
  // paper protocol: nominal noise variance set equal to R (a variance set to a
  // subgaussian constant; reproduced literally, see README)
  const double lambda = r > 0.0 ? r : 1e-6;
  return GpConfig(config.functions.kernel, lambda, 0.0);
}

double positive_ball_count(const SafeRegion& region) {
  int count = 0;
  for (double r : region.radii())
    if (r > 0.0) ++count;
  return count;
}

RunRecord run_grid_algorithm(const CampaignConfig& config, const PreparedTarget& target,
                             int function_id, int rep, std::uint64_t run_seed) {
  RunRecord record;
  record.function_id = function_id;
  record.rep = rep;
  record.algorithm = config.algorithm;
  record.seed = run_seed;

  auto rng = make_rng(run_seed);
  const auto grid = linspace_grid(target.domain, config.grid_size);

  // initial safe indices: uniform over grid points inside the safe interval
  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(grid.size()); ++i)
    if (grid[i][0] >= target.safe_interval.first && grid[i][0] <= target.safe_interval.second)
      candidates.push_back(i);
  const int init_points = config.initial_safe_points > 0 ? config.initial_safe_points : 2;
  std::vector<int> initial_indices;
  if (!candidates.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    for (int k = 0; k < init_points; ++k)
      initial_indices.push_back(candidates[pick(rng)]);
  } else {
    const double mid = 0.5 * (target.safe_interval.first + target.safe_interval.second);
    int nearest = 0;
    for (int i = 1; i < static_cast<int>(grid.size()); ++i)
      if (std::abs(grid[i][0] - mid) < std::abs(grid[nearest][0] - mid)) nearest = i;
    if (target.f(grid[nearest]) < target.threshold)
      throw std::runtime_error("no safe grid point available for S0");
    initial_indices.push_back(nearest);
  }

  GridProblem problem;
  problem.grid = grid;
  problem.safety_threshold = target.threshold;
  problem.lipschitz_bound = target.lipschitz;
  problem.noise_margin = target.noise_margin;
  problem.initial_safe_indices = initial_indices;
  problem.oracle = [&](const Vector& x) { return target.f(x) + config.noise.sample(rng); };

  const GridVariant variant =
      config.algorithm == AlgorithmId::LoSBO ? GridVariant::LoSBO : GridVariant::SafeOpt;
  GridSafeBo bo(problem, variant, config.bound, target.gp);
  const int initial_safe = bo.safe_count();

  for (int t = 1; t <= config.iterations && bo.running(); ++t) {
    const GridStepRecord sr = bo.step();
    StepTrace trace;
    trace.t = sr.t;
    trace.safe_size = sr.safe_count;
    trace.beta = sr.beta;
    if (sr.status == GridStatus::Stuck) {
      trace.status = "stuck";
      record.stuck = true;
      record.steps.push_back(std::move(trace));
      break;
    }
    trace.queried = true;
    trace.x = problem.grid[sr.chosen_index];
    trace.y = sr.y;
    const double f_true = target.f(trace.x);
    trace.violation = f_true < target.threshold;
    if (trace.violation) ++record.safety_violation_count;
    if (std::isnan(record.best_observed) || sr.y > record.best_observed)
      record.best_observed = sr.y;
    if (config.compute_metric) {
      const int rec_idx = bo.recommend();
      if (rec_idx >= 0) {
        trace.metric = normalized_metric(target.f(problem.grid[rec_idx]), target.threshold,
                                         target.f_star);
        record.final_metric = trace.metric;
      }
    }
    record.steps.push_back(std::move(trace));
  }
  record.not_started = bo.safe_count() == initial_safe;
  return record;
}

RunRecord run_region_algorithm(const CampaignConfig& config, const PreparedTarget& target,
                               int function_id, int rep, std::uint64_t run_seed) {
  RunRecord record;
  record.function_id = function_id;
  record.rep = rep;
  record.algorithm = config.algorithm;
  record.seed = run_seed;

  auto rng = make_rng(run_seed);
  auto metric_rng = make_rng(derive_seed(run_seed, kMetricStream));

  const int init_points = config.initial_safe_points > 0 ? config.initial_safe_points
                          : config.benchmark.empty()     ? 2
                                                         : 1;
  SafeRegion region(target.domain);
  for (int k = 0; k < init_points; ++k) region.add_ball(target.initial_point(rng), 0.0);

  GpPosterior posterior(target.gp);
  std::vector<Vector> inputs;
  std::vector<double> values;
  MultistartOptions metric_options;
  metric_options.starts_per_ball = config.starts_per_ball;
  const double fd_step = 1e-6 * target.gp.kernel.length_scale;

  for (int t = 1; t <= config.iterations; ++t) {
    StepTrace trace;
    trace.t = t;

    Vector x;
    if (config.algorithm == AlgorithmId::LoSGpUcb) {
      const double b = beta(config.bound, posterior);
      const RegionOptimum opt =
          select_next(region, posterior, b, config.starts_per_ball, rng);
      x = opt.x;
      trace.beta = b;
      trace.best_acquisition = opt.value;
    } else {
      x = sample_uniform_from_region(region, rng);
    }
    if (!region.contains(x))
      throw std::logic_error("query left the certified safe region");

    const double f_true = target.f(x);
    const double y = f_true + config.noise.sample(rng);
    trace.queried = true;
    trace.x = x;
    trace.y = y;
    trace.violation = f_true < target.threshold;
    if (trace.violation) ++record.safety_violation_count;
    if (std::isnan(record.best_observed) || y > record.best_observed)
      record.best_observed = y;

    if (config.algorithm == AlgorithmId::LoSGpUcb) {
      inputs.push_back(x);
      values.push_back(y);
      posterior = GpPosterior(
          target.gp, inputs,
          Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
    }
    region.add_observation(x, y, target.lipschitz, target.noise_margin, target.threshold);
    trace.safe_size = static_cast<int>(positive_ball_count(region));

    if (config.compute_metric && config.algorithm == AlgorithmId::LoSGpUcb) {
      auto mean_objective = [&](const Vector& p) { return posterior.mean(p); };
      const RegionOptimum rec =
          maximize_over_region(region, mean_objective, fd_step, metric_options, metric_rng);
      trace.metric = normalized_metric(target.f(rec.x), target.threshold, target.f_star);
      record.final_metric = trace.metric;
    }
    record.steps.push_back(std::move(trace));
  }
  record.not_started = positive_ball_count(region) == 0;
  return record;
}

}  // namespace

PreparedTarget prepare_rkhs_target(const CampaignConfig& config, int function_id) {
  const FunctionGenSpec& gen = config.functions;
  for (int attempt = 0; attempt < 50; ++attempt) {
    const std::uint64_t fn_seed =
        derive_seed(config.seed, kFunctionStream, static_cast<std::uint64_t>(function_id) * 64 +
                                                      static_cast<std::uint64_t>(attempt));
    RkhsFunction sampled;
    if (gen.method == "files") {
      if (function_id >= static_cast<int>(gen.files.size()))
        throw std::invalid_argument("function file index out of range");
      sampled = load_rkhs_function(gen.files[static_cast<std::size_t>(function_id)]);
      if (attempt > 0)
        throw std::runtime_error("pinned function file " +
                                 gen.files[static_cast<std::size_t>(function_id)] +
                                 " fails instance preconditions (no safe start)");
    } else if (gen.method == "se_onb") {
      sampled = sample_se_onb(gen.kernel.length_scale, gen.domain, gen.num_terms,
                              gen.target_norm, fn_seed);
    } else if (gen.method == "pre_rkhs") {
      auto size_rng = make_rng(derive_seed(fn_seed, 0xCC));
      std::uniform_int_distribution<int> centers(gen.num_centers_min, gen.num_centers_max);
      sampled = sample_pre_rkhs(gen.kernel, gen.domain, centers(size_rng), gen.target_norm,
                                fn_seed);
    } else {
      throw std::invalid_argument("unknown function generation method: " + gen.method);
    }

    auto fn = std::make_shared<RkhsFunction>(std::move(sampled));
    PreparedTarget target;
    target.rkhs = fn;
    target.f = [fn](const Vector& x) { return fn->value(x); };
    target.domain = fn->domain;
    target.lipschitz = estimate_lipschitz(target.f, target.domain, config.prep_grid_size);
    if (!(target.lipschitz > 0.0)) continue;  // constant target: resample
    target.threshold = compute_threshold(target.f, target.domain, config.prep_grid_size);
    target.noise_margin = config.noise_margin_factor * config.noise.bound();
    if (!std::isfinite(target.noise_margin))
      throw std::invalid_argument("Lipschitz safe sets need bounded noise (uniform or none)");
    target.f_star = max_on_grid(target.f, target.domain, config.prep_grid_size);
    if (!(target.f_star > target.threshold)) continue;  // degenerate: resample

    const auto interval = pick_initial_safe_interval(
        target.f, target.domain, target.threshold, target.noise_margin, config.prep_grid_size);
    if (!interval) continue;  // no safe start with margin: resample
    target.safe_interval = *interval;
    target.initial_point = [interval = *interval](std::mt19937_64& rng) {
      Vector v(1);
      v[0] = sample_initial_point(interval, rng);
      return v;
    };
    target.gp = config.gp_given ? config.gp : default_rkhs_gp(config);
    return target;
  }
  throw std::runtime_error("could not generate an admissible target function after 50 attempts");
}

PreparedTarget prepare_benchmark_target(const CampaignConfig& config) {
  const Benchmark bench = make_benchmark(config.benchmark);
  PreparedTarget target;
  target.f = [bench](const Vector& x) { return bench.value(x); };
  target.domain = bench.domain;
  target.lipschitz = estimate_lipschitz(target.f, target.domain, config.prep_grid_size);
  target.threshold = std::isnan(config.benchmark_threshold)
                         ? compute_threshold(target.f, target.domain, config.prep_grid_size)
                         : config.benchmark_threshold;
  target.noise_margin = config.noise_margin_factor * config.noise.bound();
  if (!std::isfinite(target.noise_margin))
    throw std::invalid_argument("Lipschitz safe sets need bounded noise (uniform or none)");
  target.f_star = max_on_grid(target.f, target.domain, config.prep_grid_size);

  if (!std::isnan(config.benchmark_initial_level)) {
    // start on the level set f = level; for gaussian10 that is the sphere of
    // radius sqrt(ln(1/level)/4)
    if (config.benchmark != "gaussian10")
      throw std::invalid_argument("benchmark_initial_level is defined for gaussian10 only");
    const double radius = std::sqrt(std::log(1.0 / config.benchmark_initial_level) / 4.0);
    const int dim = target.domain.dimension();
    target.initial_point = [radius, dim](std::mt19937_64& rng) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      Vector dir(dim);
      double norm = 0.0;
      do {
        for (int i = 0; i < dim; ++i) dir[i] = gauss(rng);
        norm = dir.norm();
      } while (norm == 0.0);
      return Vector(dir * (radius / norm));
    };
  } else {
    const double level = target.threshold + target.noise_margin;
    const Domain domain = target.domain;
    const TargetFn f = target.f;
    target.initial_point = [f, domain, level](std::mt19937_64& rng) {
      for (int attempt = 0; attempt < 100000; ++attempt) {
        Vector x(domain.dimension());
        for (int d = 0; d < domain.dimension(); ++d) {
          std::uniform_real_distribution<double> dist(domain.lower[d], domain.upper[d]);
          x[d] = dist(rng);
        }
        if (f(x) >= level) return x;
      }
      throw std::runtime_error("could not sample a safe initial point for the benchmark");
    };
  }

  if (config.gp_given) {
    target.gp = config.gp;
  } else {
    // benchmark protocol: unit-variance SE kernel, length scale 1/L, prior
    // mean 0.5 (values lie in [0,1]), nominal noise variance = noise level
    const double r = config.noise.subgaussian_constant();
    target.gp = GpConfig(
        Kernel(KernelFamily::SquaredExponential, 1.0 / target.lipschitz, 1.0),
        r > 0.0 ? r : 1e-6, 0.5);
  }
  return target;
}

RunRecord run_one(const CampaignConfig& config, const PreparedTarget& target,
                  int function_id, int rep) {
  const std::uint64_t run_seed =
      derive_seed(config.seed, kRunStream,
                  static_cast<std::uint64_t>(function_id) * 1000003ULL +
                      static_cast<std::uint64_t>(rep));
  try {
    switch (config.algorithm) {
      case AlgorithmId::SafeOpt:
      case AlgorithmId::LoSBO:
        return run_grid_algorithm(config, target, function_id, rep, run_seed);
      case AlgorithmId::LoSGpUcb:
      case AlgorithmId::RandomSearch:
        return run_region_algorithm(config, target, function_id, rep, run_seed);
    }
    throw std::logic_error("unreachable");
  } catch (const std::exception& e) {
    RunRecord record;
    record.function_id = function_id;
    record.rep = rep;
    record.algorithm = config.algorithm;
    record.seed = run_seed;
    record.failed = true;
    record.error = e.what();
    return record;
  }
}

CampaignResult run_campaign(const CampaignConfig& config) {
  if (config.repetitions < 0 || config.num_functions < 0 || config.iterations < 0)
    throw std::invalid_argument("campaign counts must be nonnegative");
  config.bound.validate();

  const bool benchmark_mode = !config.benchmark.empty();
  if (benchmark_mode &&
      (config.algorithm == AlgorithmId::SafeOpt || config.algorithm == AlgorithmId::LoSBO))
    throw std::invalid_argument(
        "grid algorithms are 1d/discrete; benchmarks run with los_gp_ucb or random_search");

  int num_functions = benchmark_mode ? 1 : config.num_functions;
  if (config.functions.method == "files" && !benchmark_mode)
    num_functions = static_cast<int>(config.functions.files.size());

  std::vector<PreparedTarget> targets;
  targets.reserve(static_cast<std::size_t>(num_functions));
  for (int fid = 0; fid < num_functions; ++fid)
    targets.push_back(benchmark_mode ? prepare_benchmark_target(config)
                                     : prepare_rkhs_target(config, fid));

  const int total_runs = num_functions * config.repetitions;
  std::vector<RunRecord> records(static_cast<std::size_t>(total_runs));
  const int workers = resolve_workers(config.workers);
  parallel_for(total_runs, workers, [&](int i) {
    const int fid = i / std::max(1, config.repetitions);
    const int rep = i % std::max(1, config.repetitions);
    records[static_cast<std::size_t>(i)] =
        run_one(config, targets[static_cast<std::size_t>(fid)], fid, rep);
  });

  CampaignResult result;
  result.records = std::move(records);
  result.summary = aggregate(result.records);

  if (!config.output_prefix.empty()) {
    write_runs_csv(config.output_prefix + "_runs.csv", result.records);
    write_summary_csv(config.output_prefix + "_summary.csv", result.summary);
    write_steps_csv(config.output_prefix + "_steps.csv", result.summary);
  }
  return result;
}

CampaignSummary aggregate(const std::vector<RunRecord>& records) {
  CampaignSummary s;
  s.runs = static_cast<int>(records.size());
  if (records.empty()) return s;
  s.algorithm = to_string(records.front().algorithm);

  int max_fid = 0;
  int iterations = 0;
  for (const RunRecord& r : records) {
    max_fid = std::max(max_fid, r.function_id);
    for (const StepTrace& st : r.steps) iterations = std::max(iterations, st.t);
  }
  const int num_functions = max_fid + 1;
  s.num_functions = num_functions;
  s.iterations = iterations;

  std::vector<int> fn_runs(num_functions, 0), fn_violating(num_functions, 0);
  std::vector<double> fn_final_sum(num_functions, 0.0);
  std::vector<int> fn_final_count(num_functions, 0);

  // per-step metric matrix with carry-forward for runs that stall early
  std::vector<std::vector<double>> metric_rows;
  int valid = 0, not_started = 0, violating = 0;
  double final_sum = 0.0;
  int final_count = 0;
  double best_sum = 0.0;
  int best_count = 0;

  for (const RunRecord& r : records) {
    if (r.failed) {
      ++s.failed_runs;
      continue;
    }
    ++valid;
    ++fn_runs[r.function_id];
    s.total_violation_steps += r.safety_violation_count;
    if (r.safety_violation_count > 0) {
      ++violating;
      ++fn_violating[r.function_id];
    }
    if (r.not_started) ++not_started;
    if (!std::isnan(r.final_metric)) {
      final_sum += r.final_metric;
      ++final_count;
      fn_final_sum[r.function_id] += r.final_metric;
      ++fn_final_count[r.function_id];
    }
    if (!std::isnan(r.best_observed)) {
      best_sum += r.best_observed;
      ++best_count;
    }

    std::vector<double> row(static_cast<std::size_t>(iterations),
                            std::numeric_limits<double>::quiet_NaN());
    double carry = std::numeric_limits<double>::quiet_NaN();
    std::size_t step_idx = 0;
    for (int t = 1; t <= iterations; ++t) {
      if (step_idx < r.steps.size() && r.steps[step_idx].t == t) {
        if (!std::isnan(r.steps[step_idx].metric)) carry = r.steps[step_idx].metric;
        ++step_idx;
      }
      row[static_cast<std::size_t>(t - 1)] = carry;
    }
    bool any = false;
    for (double v : row)
      if (!std::isnan(v)) any = true;
    if (any) metric_rows.push_back(std::move(row));
  }

  if (valid > 0) {
    s.not_started_pct = 100.0 * not_started / valid;
    s.violation_runs_pct = 100.0 * violating / valid;
  }
  if (final_count > 0) s.mean_final_metric = final_sum / final_count;
  if (best_count > 0) s.mean_best_observed = best_sum / best_count;

  double worst = 0.0;
  double perf_sum = 0.0;
  int perf_count = 0;
  for (int f = 0; f < num_functions; ++f) {
    const double viol_pct = fn_runs[f] > 0 ? 100.0 * fn_violating[f] / fn_runs[f] : 0.0;
    s.per_function_violation_pct.push_back(viol_pct);
    worst = std::max(worst, viol_pct);
    if (fn_final_count[f] > 0) {
      const double mean_final = fn_final_sum[f] / fn_final_count[f];
      s.per_function_final_mean.push_back(mean_final);
      perf_sum += mean_final;
      ++perf_count;
    } else {
      s.per_function_final_mean.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  s.worst_function_violation_pct = worst;
  if (perf_count > 0) s.final_performance_pct = 100.0 * perf_sum / perf_count;

  s.step_metric_mean.assign(static_cast<std::size_t>(iterations),
                            std::numeric_limits<double>::quiet_NaN());
  s.step_metric_sd.assign(static_cast<std::size_t>(iterations),
                          std::numeric_limits<double>::quiet_NaN());
  for (int t = 0; t < iterations; ++t) {
    double sum = 0.0;
    int n = 0;
    for (const auto& row : metric_rows) {
      const double v = row[static_cast<std::size_t>(t)];
      if (!std::isnan(v)) {
        sum += v;
        ++n;
      }
    }
    if (n == 0) continue;
    const double mean = sum / n;
    double var = 0.0;
    for (const auto& row : metric_rows) {
      const double v = row[static_cast<std::size_t>(t)];
      if (!std::isnan(v)) var += (v - mean) * (v - mean);
    }
    s.step_metric_mean[static_cast<std::size_t>(t)] = mean;
    s.step_metric_sd[static_cast<std::size_t>(t)] = std::sqrt(var / n);
  }
  return s;
}

namespace {

std::string join_vector(const Vector& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out += ';';
    out += format_double(x[i]);
  }
  return out;
}

std::string opt_double(double v) { return std::isnan(v) ? std::string() : format_double(v); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_opt_double(const std::string& s) {
  return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::strtod(s.c_str(), nullptr);
}

}  // namespace

void write_runs_csv(const std::string& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "function_id,rep,step,algorithm,x,y,metric,safe_set_size,beta,violation,status\n";
  for (const RunRecord& r : records) {
    const std::string alg = to_string(r.algorithm);
    if (r.failed) {
      out << r.function_id << ',' << r.rep << ",0," << alg << ",,,,,,,failed\n";
      continue;
    }
    for (const StepTrace& st : r.steps) {
      out << r.function_id << ',' << r.rep << ',' << st.t << ',' << alg << ','
          << (st.queried ? join_vector(st.x) : std::string()) << ','
          << (st.queried ? format_double(st.y) : std::string()) << ','
          << opt_double(st.metric) << ',' << st.safe_size << ',' << opt_double(st.beta) << ','
          << (st.violation ? 1 : 0) << ',' << st.status << '\n';
    }
  }
}

std::vector<RunRecord> read_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty runs csv: " + path);

  std::vector<RunRecord> records;
  RunRecord* current = nullptr;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 11) throw std::runtime_error("malformed runs csv row: " + line);
    const int fid = std::atoi(fields[0].c_str());
    const int rep = std::atoi(fields[1].c_str());
    if (current == nullptr || current->function_id != fid || current->rep != rep) {
      records.emplace_back();
      current = &records.back();
      current->function_id = fid;
      current->rep = rep;
      current->algorithm = algorithm_from_string(fields[3]);
    }
    if (fields[10] == "failed") {
      current->failed = true;
      continue;
    }
    StepTrace st;
    st.t = std::atoi(fields[2].c_str());
    if (!fields[4].empty()) {
      const auto coords = split(fields[4], ';');
      st.x.resize(static_cast<Eigen::Index>(coords.size()));
      for (std::size_t i = 0; i < coords.size(); ++i)
        st.x[static_cast<Eigen::Index>(i)] = std::strtod(coords[i].c_str(), nullptr);
      st.queried = true;
    }
    st.y = parse_opt_double(fields[5]);
    st.metric = parse_opt_double(fields[6]);
    st.safe_size = std::atoi(fields[7].c_str());
    st.beta = parse_opt_double(fields[8]);
    st.violation = fields[9] == "1";
    st.status = fields[10];
    if (st.violation) ++current->safety_violation_count;
    if (st.status == "stuck") current->stuck = true;
    if (!std::isnan(st.metric)) current->final_metric = st.metric;
    if (st.queried && (std::isnan(current->best_observed) || st.y > current->best_observed))
      current->best_observed = st.y;
    current->steps.push_back(std::move(st));
  }

  for (RunRecord& r : records) {
    if (r.failed || r.steps.empty()) continue;
    if (r.algorithm == AlgorithmId::SafeOpt || r.algorithm == AlgorithmId::LoSBO)
      r.not_started = r.steps.back().safe_size == r.steps.front().safe_size;
    else
      r.not_started = r.steps.back().safe_size == 0;
  }
  return records;
}

void write_summary_csv(const std::string& path, const CampaignSummary& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "algorithm,runs,failed_runs,iterations,num_functions,not_started_pct,"
         "violation_runs_pct,worst_function_violation_pct,final_performance_pct,"
         "mean_final_metric,mean_best_observed,total_violation_steps\n";
  out << s.algorithm << ',' << s.runs << ',' << s.failed_runs << ',' << s.iterations << ','
      << s.num_functions << ',' << format_double(s.not_started_pct) << ','
      << format_double(s.violation_runs_pct) << ','
      << format_double(s.worst_function_violation_pct) << ','
      << format_double(s.final_performance_pct) << ',' << format_double(s.mean_final_metric)
      << ',' << format_double(s.mean_best_observed) << ',' << s.total_violation_steps << '\n';
}

void write_steps_csv(const std::string& path, const CampaignSummary& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "step,metric_mean,metric_sd\n";
  for (std::size_t t = 0; t < s.step_metric_mean.size(); ++t)
    out << (t + 1) << ',' << opt_double(s.step_metric_mean[t]) << ','
        << opt_double(s.step_metric_sd[t]) << '\n';
}

}  // namespace losbo
