#pragma once

#include <random>
#include <string>

namespace losbo {

enum class NoiseKind { None, UniformBounded, Normal };

NoiseKind noise_kind_from_string(const std::string& name);
std::string to_string(NoiseKind kind);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double magnitude = 0.0;  // B_eps (uniform) or variance (normal)

  double sample(std::mt19937_64& rng) const;

  /// Hard magnitude bound; infinity for normal noise.
  double bound() const;

  /// Subgaussian constant R: B_eps for uniform (bounded variables are
  /// subgaussian), the standard deviation for normal, 0 for none.
  double subgaussian_constant() const;
};

}  // namespace losbo
