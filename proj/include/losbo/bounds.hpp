#pragma once

#include <string>

#include "losbo/gp.hpp"

namespace losbo {

enum class BoundStrategy { FixedHeuristic, AbbasiYadkori, Fiedler };

BoundStrategy bound_strategy_from_string(const std::string& name);
std::string to_string(BoundStrategy strategy);

/// Confidence scaling factor beta_t. The convention throughout: beta computed
/// from a posterior with n observations scales sigma_n, the width used to pick
/// query n+1.
struct BoundSpec {
  BoundStrategy strategy = BoundStrategy::FixedHeuristic;
  double fixed_value = 2.0;        // FixedHeuristic only
  double rkhs_norm_bound = 0.0;    // B, rigorous strategies
  double subgaussian_constant = 0.0;  // R, rigorous strategies
  double confidence = 0.0;         // delta in (0,1), rigorous strategies

  static BoundSpec fixed(double value);
  static BoundSpec abbasi_yadkori(double norm_bound, double subgaussian, double delta);
  static BoundSpec fiedler(double norm_bound, double subgaussian, double delta);

  void validate() const;
};

double beta(const BoundSpec& spec, const GpPosterior& posterior);

}  // namespace losbo
