#include "losbo/rkhs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "losbo/seeding.hpp"

namespace losbo {
namespace {

Vector uniform_in_box(const Domain& domain, std::mt19937_64& rng) {
  Vector x(domain.dimension());
  for (int i = 0; i < domain.dimension(); ++i) {
    std::uniform_real_distribution<double> dist(domain.lower[i], domain.upper[i]);
    x[i] = dist(rng);
  }
  return x;
}

// log of the largest value |e_n| attains on [-X, X], via the closed-form
// maximizer of n log u - s2 u^2.
double onb_term_log_sup(int n, double s2, double x_max) {
  if (n == 0) return 0.0;
  const double u_star = std::sqrt(n / (2.0 * s2));
  const double u = std::min(u_star, x_max);
  return 0.5 * (n * std::log(2.0 * s2) - std::lgamma(n + 1.0)) + n * std::log(u) - s2 * u * u;
}

void write_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

}  // namespace

double RkhsFunction::value(const Vector& x) const {
  if (representation == RkhsRepresentation::PreRkhs) {
    double acc = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
      acc += coefficients[static_cast<Eigen::Index>(i)] * kernel(x, centers[i]);
    return acc;
  }
  // SeOnb: forward recurrence e_{n+1} = x sqrt(2 s^2 / (n+1)) e_n starting
  // from e_0 = exp(-s^2 x^2). Avoids explicit factorials, stays bounded
  // (every |e_n| <= 1), so it is stable for any term count.
  const double s2 = 1.0 / (2.0 * kernel.length_scale * kernel.length_scale);
  const double xv = x[0];
  double basis = std::exp(-s2 * xv * xv);
  double acc = coefficients[0] * basis;
  for (Eigen::Index n = 1; n < coefficients.size(); ++n) {
    basis *= xv * std::sqrt(2.0 * s2 / static_cast<double>(n));
    acc += coefficients[n] * basis;
  }
  return acc;
}

double RkhsFunction::value(double x) const {
  Vector v(1);
  v[0] = x;
  return value(v);
}

double pre_rkhs_norm(const Kernel& kernel, const std::vector<Vector>& centers,
                     const Vector& coefficients) {
  const Matrix k = kernel.gram(centers);
  return std::sqrt(coefficients.dot(k * coefficients));
}

RkhsFunction sample_pre_rkhs(const Kernel& kernel, const Domain& domain,
                             int num_centers, double target_norm,
                             std::uint64_t seed) {
  if (num_centers < 1) throw std::invalid_argument("sample_pre_rkhs: num_centers must be >= 1");
  if (!(target_norm > 0.0)) throw std::invalid_argument("sample_pre_rkhs: target_norm must be positive");

  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> coeff_dist(-1.0, 1.0);

  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Vector> centers;
    centers.reserve(num_centers);
    for (int i = 0; i < num_centers; ++i) centers.push_back(uniform_in_box(domain, rng));

    Vector raw(num_centers);
    for (int i = 0; i < num_centers; ++i) raw[i] = coeff_dist(rng);

    const Matrix k = kernel.gram(centers);
    const double sq = raw.dot(k * raw);
    if (!(sq > 1e-12 * kernel.output_variance)) continue;  // degenerate draw; retry

    RkhsFunction f;
    f.representation = RkhsRepresentation::PreRkhs;
    f.kernel = kernel;
    f.domain = domain;
    f.centers = std::move(centers);
    f.coefficients = raw * (target_norm / std::sqrt(sq));
    f.rkhs_norm = target_norm;
    return f;
  }
  throw std::runtime_error("sample_pre_rkhs: degenerate Gram after 10 attempts (seed " +
                           std::to_string(seed) + ")");
}

RkhsFunction sample_se_onb(double length_scale, const Domain& domain,
                           int num_terms, double target_norm,
                           std::uint64_t seed) {
  if (domain.dimension() != 1)
    throw std::invalid_argument("sample_se_onb: domain must be 1-dimensional");
  if (num_terms < 1) throw std::invalid_argument("sample_se_onb: num_terms must be >= 1");
  if (!(target_norm > 0.0)) throw std::invalid_argument("sample_se_onb: target_norm must be positive");

  const double s2 = 1.0 / (2.0 * length_scale * length_scale);
  const double x_max = std::max(std::abs(domain.lower[0]), std::abs(domain.upper[0]));
  if (onb_term_log_sup(num_terms - 1, s2, x_max) < std::log(1e-300))
    throw std::invalid_argument(
        "sample_se_onb: num_terms so large that the last basis term underflows on the domain");

  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> weight_dist(-1.0, 1.0);
  Vector w(num_terms);
  for (int i = 0; i < num_terms; ++i) w[i] = weight_dist(rng);
  const double norm = w.norm();
  if (!(norm > 0.0)) w[0] = 1.0;  // all-zero draw has probability zero

  RkhsFunction f;
  f.representation = RkhsRepresentation::SeOnb;
  f.kernel = Kernel(KernelFamily::SquaredExponential, length_scale, 1.0);
  f.domain = domain;
  f.coefficients = w * (target_norm / w.norm());
  f.rkhs_norm = target_norm;
  return f;
}

void save_rkhs_function(const RkhsFunction& f, std::ostream& out) {
  out << "losbo-rkhs-v1 "
      << (f.representation == RkhsRepresentation::PreRkhs ? "pre_rkhs" : "se_onb") << ' '
      << to_string(f.kernel.family) << ' ';
  write_double(out, f.kernel.length_scale);
  out << ' ';
  write_double(out, f.kernel.output_variance);
  out << ' ' << f.domain.dimension();
  for (int i = 0; i < f.domain.dimension(); ++i) {
    out << ' ';
    write_double(out, f.domain.lower[i]);
  }
  for (int i = 0; i < f.domain.dimension(); ++i) {
    out << ' ';
    write_double(out, f.domain.upper[i]);
  }
  out << ' ';
  write_double(out, f.rkhs_norm);
  out << ' ' << f.coefficients.size() << '\n';

  for (Eigen::Index i = 0; i < f.coefficients.size(); ++i) {
    write_double(out, f.coefficients[i]);
    if (f.representation == RkhsRepresentation::PreRkhs) {
      const Vector& c = f.centers[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < c.size(); ++j) {
        out << ' ';
        write_double(out, c[j]);
      }
    }
    out << '\n';
  }
}

void save_rkhs_function(const RkhsFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  save_rkhs_function(f, out);
}

RkhsFunction load_rkhs_function(std::istream& in) {
  std::string magic, repr, family;
  double length_scale = 0, output_variance = 0, norm = 0;
  int dim = 0;
  Eigen::Index count = 0;
  in >> magic >> repr >> family >> length_scale >> output_variance >> dim;
  if (magic != "losbo-rkhs-v1") throw std::runtime_error("bad RKHS function file header");
  Vector lo(dim), hi(dim);
  for (int i = 0; i < dim; ++i) in >> lo[i];
  for (int i = 0; i < dim; ++i) in >> hi[i];
  in >> norm >> count;
  if (!in) throw std::runtime_error("truncated RKHS function file header");

  RkhsFunction f;
  f.representation = repr == "pre_rkhs" ? RkhsRepresentation::PreRkhs : RkhsRepresentation::SeOnb;
  f.kernel = Kernel(kernel_family_from_string(family), length_scale, output_variance);
  f.domain = Domain(lo, hi);
  f.rkhs_norm = norm;
  f.coefficients.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    in >> f.coefficients[i];
    if (f.representation == RkhsRepresentation::PreRkhs) {
      Vector c(dim);
      for (int j = 0; j < dim; ++j) in >> c[j];
      f.centers.push_back(std::move(c));
    }
  }
  if (!in) throw std::runtime_error("truncated RKHS function file body");
  return f;
}

RkhsFunction load_rkhs_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  return load_rkhs_function(in);
}

}  // namespace losbo
