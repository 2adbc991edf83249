#include "losbo/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace losbo {

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "none") return NoiseKind::None;
  if (name == "uniform" || name == "uniform_bounded") return NoiseKind::UniformBounded;
  if (name == "normal" || name == "gaussian") return NoiseKind::Normal;
  throw std::invalid_argument("unknown noise kind: " + name);
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::UniformBounded: return "uniform";
    case NoiseKind::Normal: return "normal";
  }
  return "?";
}

double NoiseSpec::sample(std::mt19937_64& rng) const {
  switch (kind) {
    case NoiseKind::None: return 0.0;
    case NoiseKind::UniformBounded: {
      std::uniform_real_distribution<double> dist(-magnitude, magnitude);
      return dist(rng);
    }
    case NoiseKind::Normal: {
      std::normal_distribution<double> dist(0.0, std::sqrt(magnitude));
      return dist(rng);
    }
  }
  return 0.0;
}

double NoiseSpec::bound() const {
  switch (kind) {
    case NoiseKind::None: return 0.0;
    case NoiseKind::UniformBounded: return magnitude;
    case NoiseKind::Normal: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double NoiseSpec::subgaussian_constant() const {
  switch (kind) {
    case NoiseKind::None: return 0.0;
    case NoiseKind::UniformBounded: return magnitude;
    case NoiseKind::Normal: return std::sqrt(magnitude);
  }
  return 0.0;
}

}  // namespace losbo
