#include "losbo/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace losbo {

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "squared_exponential" || name == "se" || name == "rbf")
    return KernelFamily::SquaredExponential;
  if (name == "matern32" || name == "matern_3_2")
    return KernelFamily::Matern32;
  throw std::invalid_argument("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::SquaredExponential: return "squared_exponential";
    case KernelFamily::Matern32: return "matern32";
  }
  return "?";
}

Kernel::Kernel(KernelFamily family, double length_scale, double output_variance)
    : family(family), length_scale(length_scale), output_variance(output_variance) {
  if (!(length_scale > 0.0))
    throw std::invalid_argument("kernel length_scale must be positive");
  if (!(output_variance > 0.0))
    throw std::invalid_argument("kernel output_variance must be positive");
}

double Kernel::from_distance(double r) const {
  switch (family) {
    case KernelFamily::SquaredExponential: {
      const double z = r / length_scale;
      return output_variance * std::exp(-0.5 * z * z);
    }
    case KernelFamily::Matern32: {
      const double z = std::sqrt(3.0) * r / length_scale;
      return output_variance * (1.0 + z) * std::exp(-z);
    }
  }
  return 0.0;
}

double Kernel::operator()(const Vector& x, const Vector& y) const {
  if (x.size() != y.size())
    throw std::invalid_argument("kernel eval: dimension mismatch");
  return from_distance((x - y).norm());
}

Matrix Kernel::gram(const std::vector<Vector>& points) const {
  const auto n = static_cast<Eigen::Index>(points.size());
  Matrix k(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    k(j, j) = output_variance;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = (*this)(points[i], points[j]);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

double metric(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("metric: dimension mismatch");
  return (x - y).norm();
}

Domain::Domain(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.size() == 0)
    throw std::invalid_argument("domain bounds must be nonempty and of equal size");
  for (Eigen::Index i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i]))
      throw std::invalid_argument("domain requires lower[i] < upper[i]");
}

Domain Domain::interval(double lo, double hi) {
  Vector l(1), u(1);
  l[0] = lo;
  u[0] = hi;
  return Domain(l, u);
}

Domain Domain::cube(int dim, double lo, double hi) {
  return Domain(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

bool Domain::contains(const Vector& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  return true;
}

Vector Domain::clip(const Vector& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

}  // namespace losbo
