#include "losbo/safe_grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace losbo {

std::vector<char> update_safe_set_safeopt(const std::vector<char>& prev_safe,
                                          const Vector& lower, const Matrix& dist,
                                          double h, double lipschitz) {
  const auto n = static_cast<int>(prev_safe.size());
  std::vector<char> safe = prev_safe;
  for (int x = 0; x < n; ++x) {
    if (safe[x]) continue;
    for (int s = 0; s < n; ++s) {
      if (!prev_safe[s]) continue;
      if (lower[s] - lipschitz * dist(s, x) >= h) {
        safe[x] = 1;
        break;
      }
    }
  }
  return safe;
}

std::vector<char> update_safe_set_losbo(const std::vector<char>& prev_safe,
                                        const Matrix& dist, int last_index,
                                        double last_y, double h, double lipschitz,
                                        double noise_margin) {
  const auto n = static_cast<int>(prev_safe.size());
  std::vector<char> safe = prev_safe;
  for (int x = 0; x < n; ++x) {
    if (safe[x]) continue;
    if (last_y - noise_margin - lipschitz * dist(last_index, x) >= h) safe[x] = 1;
  }
  return safe;
}

std::vector<int> compute_expanders(const std::vector<char>& safe, const Vector& upper,
                                   const Matrix& dist, double h, double lipschitz) {
  const auto n = static_cast<int>(safe.size());
  std::vector<int> expanders;
  for (int s = 0; s < n; ++s) {
    if (!safe[s]) continue;
    // u - L d is decreasing in d, so the nearest outside point decides
    double min_dist = std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x)
      if (!safe[x] && dist(s, x) < min_dist) min_dist = dist(s, x);
    if (std::isinf(min_dist)) continue;  // whole grid safe: no expanders
    if (upper[s] - lipschitz * min_dist >= h) expanders.push_back(s);
  }
  return expanders;
}

std::vector<int> compute_maximizers(const std::vector<char>& safe, const Vector& lower,
                                    const Vector& upper) {
  const auto n = static_cast<int>(safe.size());
  double max_lower = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s)
    if (safe[s] && lower[s] > max_lower) max_lower = lower[s];
  std::vector<int> maximizers;
  for (int s = 0; s < n; ++s)
    if (safe[s] && upper[s] >= max_lower) maximizers.push_back(s);
  return maximizers;
}

GridSafeBo::GridSafeBo(GridProblem problem, GridVariant variant, BoundSpec bound_spec,
                       GpConfig gp_config)
    : problem_(std::move(problem)),
      variant_(variant),
      bound_spec_(std::move(bound_spec)),
      gp_config_(std::move(gp_config)),
      posterior_(gp_config_) {
  const auto n = static_cast<int>(problem_.grid.size());
  if (n == 0) throw std::invalid_argument("grid must be nonempty");
  if (problem_.initial_safe_indices.empty())
    throw std::invalid_argument("initial safe set S0 must be nonempty");
  for (int idx : problem_.initial_safe_indices)
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("initial safe index out of range");
  bound_spec_.validate();

  dist_.resize(n, n);
  for (int j = 0; j < n; ++j) {
    dist_(j, j) = 0.0;
    for (int i = j + 1; i < n; ++i) {
      const double d = metric(problem_.grid[i], problem_.grid[j]);
      dist_(i, j) = d;
      dist_(j, i) = d;
    }
  }

  c_lower_ = Vector::Constant(n, -kGridHuge);
  c_upper_ = Vector::Constant(n, kGridHuge);
  q_lower_ = Vector::Constant(n, -kGridHuge);
  q_upper_ = Vector::Constant(n, kGridHuge);
  safe_.assign(n, 0);
  for (int idx : problem_.initial_safe_indices) {
    safe_[idx] = 1;
    c_lower_[idx] = problem_.safety_threshold;  // C0 = [h, inf) on S0
  }
  mean_grid_ = Vector::Constant(n, gp_config_.prior_mean);
}

int GridSafeBo::safe_count() const {
  int count = 0;
  for (char s : safe_) count += s;
  return count;
}

void GridSafeBo::refit_and_update_q() {
  std::vector<Vector> inputs;
  inputs.reserve(query_indices_.size());
  for (int idx : query_indices_) inputs.push_back(problem_.grid[idx]);
  Vector targets = Eigen::Map<const Vector>(query_values_.data(),
                                            static_cast<Eigen::Index>(query_values_.size()));
  posterior_ = GpPosterior(gp_config_, std::move(inputs), std::move(targets));
  last_beta_ = beta(bound_spec_, posterior_);

  Vector variances;
  posterior_.predict(problem_.grid, mean_grid_, variances);
  const Vector sigma = variances.cwiseSqrt();
  q_lower_ = mean_grid_ - last_beta_ * sigma;
  q_upper_ = mean_grid_ + last_beta_ * sigma;
}

GridStepRecord GridSafeBo::step() {
  if (status_ != GridStatus::Running)
    throw std::logic_error("GridSafeBo::step called on a stuck run");

  const int t = ++iteration_;

  // C_t = C_{t-1} intersect Q_{t-1}  (Alg. 2 line 5; prose writes Q_t)
  c_lower_ = c_lower_.cwiseMax(q_lower_);
  c_upper_ = c_upper_.cwiseMin(q_upper_);

  if (t > 1) {
    if (variant_ == GridVariant::SafeOpt) {
      safe_ = update_safe_set_safeopt(safe_, c_lower_, dist_, problem_.safety_threshold,
                                      problem_.lipschitz_bound);
    } else {
      safe_ = update_safe_set_losbo(safe_, dist_, query_indices_.back(),
                                    query_values_.back(), problem_.safety_threshold,
                                    problem_.lipschitz_bound, problem_.noise_margin);
    }
  }  // t == 1: S_1 = S_0

  expanders_ = compute_expanders(safe_, c_upper_, dist_, problem_.safety_threshold,
                                 problem_.lipschitz_bound);
  maximizers_ = compute_maximizers(safe_, c_lower_, c_upper_);

  const auto n = static_cast<int>(safe_.size());
  std::vector<char> candidate(n, 0);
  for (int idx : expanders_) candidate[idx] = 1;
  for (int idx : maximizers_) candidate[idx] = 1;

  int chosen = -1;
  double best_width = -std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < n; ++idx) {
    if (!candidate[idx]) continue;
    const double width = c_upper_[idx] - c_lower_[idx];
    if (width > best_width) {  // strict: ties go to the lowest grid index
      best_width = width;
      chosen = idx;
    }
  }

  GridStepRecord record;
  record.t = t;
  record.safe_count = safe_count();
  record.expander_count = static_cast<int>(expanders_.size());
  record.maximizer_count = static_cast<int>(maximizers_.size());

  if (chosen < 0) {
    status_ = GridStatus::Stuck;
    record.status = GridStatus::Stuck;
    record.beta = std::numeric_limits<double>::quiet_NaN();
    record.y = std::numeric_limits<double>::quiet_NaN();
    return record;
  }

  const double y = problem_.oracle(problem_.grid[chosen]);
  query_indices_.push_back(chosen);
  query_values_.push_back(y);
  refit_and_update_q();

  record.chosen_index = chosen;
  record.y = y;
  record.beta = last_beta_;
  record.status = GridStatus::Running;
  return record;
}

int GridSafeBo::recommend() const {
  int best = -1;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < static_cast<int>(safe_.size()); ++idx) {
    if (!safe_[idx]) continue;
    if (mean_grid_[idx] > best_mean) {
      best_mean = mean_grid_[idx];
      best = idx;
    }
  }
  return best;
}

}  // namespace losbo
