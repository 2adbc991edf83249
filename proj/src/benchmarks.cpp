#include "losbo/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace losbo {
namespace {

// Six-hump camelback on [-2,2] x [-1,1].
double camelback_raw(double x, double y) {
  const double x2 = x * x;
  const double y2 = y * y;
  return (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x * y + (-4.0 + 4.0 * y2) * y2;
}

// Extremes over the box: minimum is the global optimum (refined numerically
// from the published minimizer (+-0.08984, -+0.71266)); maximum 86/15 is the
// exact corner value at (+-2, +-1).
constexpr double kCamelMin = -1.0316284534898774;
constexpr double kCamelMax = 86.0 / 15.0;

// Hartmann 6d, standard parameters on [0,1]^6.
constexpr double kHartAlpha[4] = {1.0, 1.2, 3.0, 3.2};
constexpr double kHartA[4][6] = {
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
constexpr double kHartP[4][6] = {
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

double hartmann6_raw(const Vector& x) {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double d = x[j] - kHartP[i][j];
      inner += kHartA[i][j] * d * d;
    }
    acc -= kHartAlpha[i] * std::exp(-inner);
  }
  return acc;
}

// Extremes over [0,1]^6: minimum refined from the published optimizer
// (0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573); maximum found
// at the box corner (1,1,0,1,1,1) by corner scan plus local refinement.
constexpr double kHartMin = -3.3223680114155147;
constexpr double kHartMax = -2.8124505439686514e-08;

}  // namespace

double Benchmark::value(const Vector& x) const {
  if (!domain.contains(x))
    throw std::invalid_argument("benchmark '" + name + "': input outside the canonical box");
  if (name == "camelback2")
    return (kCamelMax - camelback_raw(x[0], x[1])) / (kCamelMax - kCamelMin);
  if (name == "hartmann6")
    return (kHartMax - hartmann6_raw(x)) / (kHartMax - kHartMin);
  // gaussian10
  return std::exp(-4.0 * x.squaredNorm());
}

Benchmark make_benchmark(const std::string& name) {
  if (name == "camelback2") {
    Vector lo(2), hi(2);
    lo << -2.0, -1.0;
    hi << 2.0, 1.0;
    return Benchmark{name, Domain(lo, hi)};
  }
  if (name == "hartmann6") return Benchmark{name, Domain::cube(6, 0.0, 1.0)};
  if (name == "gaussian10") return Benchmark{name, Domain::cube(10, -1.0, 1.0)};
  throw std::invalid_argument("unknown benchmark: " + name);
}

}  // namespace losbo
