#pragma once

#include <string>

#include "losbo/kernel.hpp"

namespace losbo {

/// Synthetic benchmark targets, all rescaled so values lie in [0,1] and the
/// optimum is a maximum at value 1 (camelback and hartmann6 are negated and
/// affinely rescaled over their boxes; gaussian10 is used as published).
struct Benchmark {
  std::string name;
  Domain domain;

  double value(const Vector& x) const;
};

Benchmark make_benchmark(const std::string& name);

}  // namespace losbo
