#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "losbo/kernel.hpp"

namespace losbo {

enum class RkhsRepresentation { PreRkhs, SeOnb };

/// Synthetic target function with an exactly known RKHS norm.
///
/// PreRkhs: f = sum_i alpha_i k(., c_i), with ||f||^2 = alpha' K alpha.
/// SeOnb:   f = sum_n w_n e_n for the Gaussian-kernel orthonormal basis
///          e_n(x) = sqrt((2 s^2)^n / n!) x^n exp(-s^2 x^2), s^2 = 1/(2 l^2),
///          valid for the unit-variance squared-exponential kernel in 1d;
///          here ||f|| = ||w||_2.
struct RkhsFunction {
  RkhsRepresentation representation = RkhsRepresentation::PreRkhs;
  Kernel kernel;
  Domain domain;
  Vector coefficients;           // alpha (PreRkhs) or ONB weights (SeOnb)
  std::vector<Vector> centers;   // PreRkhs only
  double rkhs_norm = 0.0;

  double value(const Vector& x) const;
  double value(double x) const;  // 1d convenience
  double operator()(const Vector& x) const { return value(x); }
};

RkhsFunction sample_pre_rkhs(const Kernel& kernel, const Domain& domain,
                             int num_centers, double target_norm,
                             std::uint64_t seed);

RkhsFunction sample_se_onb(double length_scale, const Domain& domain,
                           int num_terms, double target_norm,
                           std::uint64_t seed);

/// Quadratic-form norm of a pre-RKHS expansion, recomputed from scratch.
double pre_rkhs_norm(const Kernel& kernel, const std::vector<Vector>& centers,
                     const Vector& coefficients);

void save_rkhs_function(const RkhsFunction& f, std::ostream& out);
void save_rkhs_function(const RkhsFunction& f, const std::string& path);
RkhsFunction load_rkhs_function(std::istream& in);
RkhsFunction load_rkhs_function(const std::string& path);

}  // namespace losbo
