#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "losbo/bounds.hpp"
#include "losbo/gp.hpp"

namespace losbo {

enum class GridVariant { SafeOpt, LoSBO };
enum class GridStatus { Running, Stuck };

/// Interval endpoints standing in for +-infinity. Q replaces the sentinels
/// after the first posterior update, so sentinel arithmetic never mixes with
/// GP outputs.
inline constexpr double kGridHuge = 1e12;

struct GridProblem {
  std::vector<Vector> grid;
  std::function<double(const Vector&)> oracle;  // returns y = f(x) + noise
  double safety_threshold = 0.0;                // h
  double lipschitz_bound = 1.0;                 // L
  double noise_margin = 0.0;                    // E, LoSBO safe-set updates only
  std::vector<int> initial_safe_indices;        // S0
};

struct GridStepRecord {
  int t = 0;
  int chosen_index = -1;  // -1 when stuck (no query performed)
  double y = 0.0;
  int safe_count = 0;
  int expander_count = 0;
  int maximizer_count = 0;
  double beta = 0.0;
  GridStatus status = GridStatus::Running;
};

// Set updates, written so each pairwise check evaluates the defining
// inequality verbatim; a literal-enumeration oracle therefore agrees exactly.

/// S_t = S_{t-1} union {x : exists x_s in S_{t-1}, l(x_s) - L d(x_s,x) >= h}
std::vector<char> update_safe_set_safeopt(const std::vector<char>& prev_safe,
                                          const Vector& lower, const Matrix& dist,
                                          double h, double lipschitz);

/// S_t = S_{t-1} union {x : y_last - E - L d(x_last,x) >= h}
std::vector<char> update_safe_set_losbo(const std::vector<char>& prev_safe,
                                        const Matrix& dist, int last_index,
                                        double last_y, double h, double lipschitz,
                                        double noise_margin);

/// G_t = {x_s in S_t : exists x outside S_t, u(x_s) - L d(x_s,x) >= h}
std::vector<int> compute_expanders(const std::vector<char>& safe, const Vector& upper,
                                   const Matrix& dist, double h, double lipschitz);

/// M_t = {x in S_t : u(x) >= max_{x_s in S_t} l(x_s)}
std::vector<int> compute_maximizers(const std::vector<char>& safe, const Vector& lower,
                                    const Vector& upper);

/// Discrete-domain safe BO. SafeOpt grows the safe set from GP lower bounds,
/// LoSBO from the most recent observation's Lipschitz cone; everything else
/// (intervals, expanders, maximizers, width acquisition) is shared.
/// Real-beta-SafeOpt is the SafeOpt variant with an AbbasiYadkori BoundSpec.
class GridSafeBo {
 public:
  GridSafeBo(GridProblem problem, GridVariant variant, BoundSpec bound_spec,
             GpConfig gp_config);

  GridStepRecord step();
  bool running() const { return status_ == GridStatus::Running; }
  GridStatus status() const { return status_; }
  int iteration() const { return iteration_; }

  /// argmax of the posterior mean over the current safe set (lowest index
  /// wins ties); the recommended point for performance metrics.
  int recommend() const;

  const Vector& lower() const { return c_lower_; }
  const Vector& upper() const { return c_upper_; }
  const Vector& q_lower() const { return q_lower_; }
  const Vector& q_upper() const { return q_upper_; }
  const std::vector<char>& safe_mask() const { return safe_; }
  const std::vector<int>& expanders() const { return expanders_; }
  const std::vector<int>& maximizers() const { return maximizers_; }
  const GridProblem& problem() const { return problem_; }
  const GpPosterior& posterior() const { return posterior_; }
  const std::vector<int>& query_indices() const { return query_indices_; }
  const std::vector<double>& query_values() const { return query_values_; }
  int safe_count() const;
  const Matrix& distances() const { return dist_; }

 private:
  void refit_and_update_q();

  GridProblem problem_;
  GridVariant variant_;
  BoundSpec bound_spec_;
  GpConfig gp_config_;

  Matrix dist_;  // pairwise grid distances, fixed for the run
  Vector c_lower_, c_upper_;  // C_t
  Vector q_lower_, q_upper_;  // Q_t
  Vector mean_grid_;          // posterior mean over grid, after last refit
  std::vector<char> safe_;
  std::vector<int> expanders_, maximizers_;
  std::vector<int> query_indices_;
  std::vector<double> query_values_;
  GpPosterior posterior_;
  GridStatus status_ = GridStatus::Running;
  int iteration_ = 0;
  double last_beta_ = 0.0;
};

}  // namespace losbo
