#include "losbo/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace losbo {

BoundStrategy bound_strategy_from_string(const std::string& name) {
  if (name == "fixed" || name == "fixed_heuristic") return BoundStrategy::FixedHeuristic;
  if (name == "abbasi_yadkori" || name == "ay") return BoundStrategy::AbbasiYadkori;
  if (name == "fiedler") return BoundStrategy::Fiedler;
  if (name == "chowdhury" || name == "srinivas")
    throw std::invalid_argument(
        "bound strategy '" + name +
        "' needs the maximum information gain, which has no computable general form; "
        "use abbasi_yadkori or fiedler (see README, confidence bounds)");
  throw std::invalid_argument("unknown bound strategy: " + name);
}

std::string to_string(BoundStrategy strategy) {
  switch (strategy) {
    case BoundStrategy::FixedHeuristic: return "fixed";
    case BoundStrategy::AbbasiYadkori: return "abbasi_yadkori";
    case BoundStrategy::Fiedler: return "fiedler";
  }
  return "?";
}

BoundSpec BoundSpec::fixed(double value) {
  BoundSpec s;
  s.strategy = BoundStrategy::FixedHeuristic;
  s.fixed_value = value;
  s.validate();
  return s;
}

BoundSpec BoundSpec::abbasi_yadkori(double norm_bound, double subgaussian, double delta) {
  BoundSpec s;
  s.strategy = BoundStrategy::AbbasiYadkori;
  s.rkhs_norm_bound = norm_bound;
  s.subgaussian_constant = subgaussian;
  s.confidence = delta;
  s.validate();
  return s;
}

BoundSpec BoundSpec::fiedler(double norm_bound, double subgaussian, double delta) {
  BoundSpec s = abbasi_yadkori(norm_bound, subgaussian, delta);
  s.strategy = BoundStrategy::Fiedler;
  return s;
}

void BoundSpec::validate() const {
  if (strategy == BoundStrategy::FixedHeuristic) {
    if (!(fixed_value > 0.0))
      throw std::invalid_argument("fixed bound requires fixed_value > 0");
    return;
  }
  if (!(rkhs_norm_bound > 0.0))
    throw std::invalid_argument("rigorous bound requires rkhs_norm_bound B > 0");
  if (!(subgaussian_constant > 0.0))
    throw std::invalid_argument("rigorous bound requires subgaussian_constant R > 0");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("rigorous bound requires confidence delta in (0,1)");
}

double beta(const BoundSpec& spec, const GpPosterior& posterior) {
  spec.validate();
  if (spec.strategy == BoundStrategy::FixedHeuristic) return spec.fixed_value;

  const double lambda = posterior.config().noise_variance;
  const double log_det = posterior.log_det_scaled();
  const double two_log_inv_delta = -2.0 * std::log(spec.confidence);

  // AbbasiYadkori: B + (R/sqrt(l)) sqrt(ln det(I + K/l) + 2 ln(1/d)).
  // Fiedler:      B + (R/sqrt(l)) sqrt(ln det(lbar/l K + lbar I) - 2 ln d)
  //   with lbar = max{1, l}; the determinant term rewrites as
  //   ln det(I + K/l) + t ln(lbar), so for l <= 1 the two coincide exactly.
  double radicand = log_det + two_log_inv_delta;
  if (spec.strategy == BoundStrategy::Fiedler && lambda > 1.0)
    radicand += static_cast<double>(posterior.size()) * std::log(lambda);

  return spec.rkhs_norm_bound +
         spec.subgaussian_constant / std::sqrt(lambda) * std::sqrt(radicand);
}

}  // namespace losbo
