#include "afsmc/sliding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace afsmc {

std::vector<std::int64_t> binomial_coeffs(int n) {
  if (n < 1) throw std::invalid_argument("binomial_coeffs: order must be >= 1");
  std::vector<std::int64_t> row(static_cast<std::size_t>(n));
  row[0] = 1;
  for (int i = 1; i < n; ++i) {
    // C(n-1, i) = C(n-1, i-1) * (n - i) / i
    row[static_cast<std::size_t>(i)] =
        row[static_cast<std::size_t>(i - 1)] * (n - i) / i;
  }
  return row;
}

SurfaceSpec::SurfaceSpec(int order, double lambda)
    : order_(order), lambda_(lambda) {
  if (order < 1) throw std::invalid_argument("SurfaceSpec: order must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("SurfaceSpec: lambda must be positive");
  const auto binom = binomial_coeffs(order);
  const auto n = static_cast<std::size_t>(order);
  c_.resize(n);
  c_bar_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    c_[i] = static_cast<double>(binom[i]) *
            std::pow(lambda, static_cast<double>(n - 1 - i));
  }
  for (std::size_t j = 1; j < n; ++j) {
    // d/dt shifts each term one derivative up; the top one leaves c_bar.
    c_bar_[j] = static_cast<double>(binom[j - 1]) *
                std::pow(lambda, static_cast<double>(n - j));
  }
}

namespace {

double checked_dot(const std::vector<double>& coeffs,
                   std::span<const double> err, const char* what) {
  if (err.size() != coeffs.size())
    throw std::invalid_argument(std::string(what) +
                                ": error vector dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * err[i];
  return acc;
}

}  // namespace

double sliding_variable(const SurfaceSpec& spec, std::span<const double> err) {
  return checked_dot(spec.coeffs(), err, "sliding_variable");
}

double sdot_feedback(const SurfaceSpec& spec, std::span<const double> err) {
  return checked_dot(spec.sdot_coeffs(), err, "sdot_feedback");
}

SwitchingFn::SwitchingFn(SwitchKind kind_, double phi_)
    : kind(kind_), phi(phi_) {
  if (kind != SwitchKind::sign && (!(phi > 0.0) || !std::isfinite(phi)))
    throw std::invalid_argument("SwitchingFn: phi must be positive");
}

double switch_value(const SwitchingFn& fn, double s) {
  switch (fn.kind) {
    case SwitchKind::sign:
      return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
    case SwitchKind::saturation:
      return std::clamp(s / fn.phi, -1.0, 1.0);
    case SwitchKind::hyperbolic_tangent:
      return std::tanh(s / fn.phi);
  }
  return 0.0;
}

std::vector<double> zeta_sequence(int n) {
  if (n < 1) throw std::invalid_argument("zeta_sequence: order must be >= 1");
  std::vector<double> zeta(static_cast<std::size_t>(n), 1.0);
  for (int i = 1; i < n; ++i) {
    double acc = 1.0;
    double binom = 1.0;  // C(i, 0)
    for (int j = 0; j < i; ++j) {
      acc += binom * zeta[static_cast<std::size_t>(j)];
      binom = binom * static_cast<double>(i - j) / static_cast<double>(j + 1);
    }
    zeta[static_cast<std::size_t>(i)] = acc;
  }
  return zeta;
}

std::vector<double> convergence_region(const SurfaceSpec& spec, double phi) {
  if (!(phi > 0.0) || !std::isfinite(phi))
    throw std::invalid_argument("convergence_region: phi must be positive");
  const int n = spec.order();
  auto bounds = zeta_sequence(n);
  for (int i = 0; i < n; ++i) {
    bounds[static_cast<std::size_t>(i)] *=
        std::pow(spec.lambda(), static_cast<double>(i - n + 1)) * phi;
  }
  return bounds;
}

}  // namespace afsmc
