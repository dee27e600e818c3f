#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace afsmc {

/// Sliding surface s = c'err for the error filter (d/dt + lambda)^(n-1),
/// with c precomputed at construction. coeffs()[i] multiplies the i-th
/// error derivative; the last entry is always 1.
class SurfaceSpec {
 public:
  SurfaceSpec(int order, double lambda);

  int order() const { return order_; }
  double lambda() const { return lambda_; }
  const std::vector<double>& coeffs() const { return c_; }
  const std::vector<double>& sdot_coeffs() const { return c_bar_; }

 private:
  int order_;
  double lambda_;
  std::vector<double> c_;      // C(n-1,i) * lambda^(n-1-i)
  std::vector<double> c_bar_;  // ds/dt = err[n-1]' + c_bar'err
};

enum class SwitchKind { sign, saturation, hyperbolic_tangent };

/// Switching-term shape: ideal relay or a continuous interpolation inside
/// the boundary layer |s| <= phi.
struct SwitchingFn {
  SwitchKind kind;
  double phi;  // boundary layer thickness (> 0 for the smooth kinds)

  SwitchingFn(SwitchKind kind, double phi);
};

/// Binomial row [C(n-1,0), ..., C(n-1,n-1)]. Throws for n < 1.
std::vector<std::int64_t> binomial_coeffs(int n);

/// s = c'err; err = [e, e', ..., e^(n-1)]. Throws on dimension mismatch.
double sliding_variable(const SurfaceSpec& spec, std::span<const double> err);

/// Error-feedback part of ds/dt, i.e. ds/dt = e^(n) + sdot_feedback(err).
double sdot_feedback(const SurfaceSpec& spec, std::span<const double> err);

/// Switching value in [-1, 1].
double switch_value(const SwitchingFn& fn, double s);

/// zeta recursion: zeta_0 = 1, zeta_i = 1 + sum_j C(i,j) zeta_j.
std::vector<double> zeta_sequence(int n);

/// Per-derivative residual-set bounds [zeta_i * lambda^(i-n+1) * phi]
/// reached by a boundary-layer controller once |s| <= phi.
std::vector<double> convergence_region(const SurfaceSpec& spec, double phi);

}  // namespace afsmc
