#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace losbo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class KernelFamily { SquaredExponential, Matern32 };

KernelFamily kernel_family_from_string(const std::string& name);
std::string to_string(KernelFamily family);

/// Stationary covariance function on R^d.
///
/// SquaredExponential uses the exp(-r^2 / (2 l^2)) parameterization, so a
/// length scale of 0.2/sqrt(2) matches generation setups written for the
/// exp(-sigma^2 r^2) convention with sigma^2 = 25. The ONB weights in
/// rkhs.hpp depend on this convention.
struct Kernel {
  KernelFamily family = KernelFamily::SquaredExponential;
  double length_scale = 1.0;
  double output_variance = 1.0;

  Kernel() = default;
  Kernel(KernelFamily family, double length_scale, double output_variance = 1.0);

  double operator()(const Vector& x, const Vector& y) const;
  double from_distance(double r) const;

  Matrix gram(const std::vector<Vector>& points) const;
};

/// Euclidean distance; the metric used by all Lipschitz cones.
double metric(const Vector& x, const Vector& y);

/// Axis-aligned box in R^d.
struct Domain {
  Vector lower;
  Vector upper;

  Domain() = default;
  Domain(Vector lower, Vector upper);
  static Domain interval(double lo, double hi);
  static Domain cube(int dim, double lo, double hi);

  int dimension() const { return static_cast<int>(lower.size()); }
  bool contains(const Vector& x, double tol = 0.0) const;
  Vector clip(const Vector& x) const;
};

}  // namespace losbo
