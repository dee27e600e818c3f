#pragma once

#include <functional>
#include <span>

#include "afsmc/fuzzy.hpp"
#include "afsmc/sliding.hpp"

namespace afsmc {

/// What the controller believes about the plant: a drift estimate f_hat, a
/// constant input-gain estimate bm_hat with coverage ratio beta
/// (1/beta <= bm_hat/bm <= beta), and a bound F(x) on the drift error.
struct ModelEstimate {
  std::function<double(std::span<const double>)> f_hat;
  double bm_hat = 1.0;
  std::function<double(std::span<const double>)> drift_error_bound;  // F(x) >= 0
  double beta = 1.0;

  void validate() const;
};

/// Derive (bm_hat, beta) from input-gain and slope bounds. bm_hat is the
/// geometric mean of the bm products; for an externally fixed bm_hat the
/// beta overload returns the smallest ratio covering both ends.
struct GainEstimate {
  double bm_hat;
  double beta;
};
GainEstimate derive_gain_estimate(double b_min, double b_max, double m_min,
                                  double m_max);
double coverage_beta(double bm_hat, double bm_min, double bm_max);

struct ControllerConfig {
  ModelEstimate model;
  SurfaceSpec surface;
  SwitchingFn switching;
  double eta;          // reaching-rate margin, > 0
  double delta_bound;  // bound on the dead-zone disturbance, >= 0
  bool compensator_on = true;
  double fixed_gain = 0.0;  // > 0: frozen K instead of the online law

  void validate() const;
};

struct ControlDiag {
  double u = 0.0;      // commanded input, V
  double s = 0.0;      // sliding variable
  double u_hat = 0.0;  // equivalent control
  double d_hat = 0.0;  // compensation term (0 when the compensator is off)
  double gain = 0.0;   // switching gain K
  bool finite = true;  // false when any intermediate is non-finite
};

/// u_hat = bm_hat^-1 * (-f_hat(x) + xd_n - c_bar'err).
/// ref holds the desired output derivatives 0..n (n+1 entries).
double equivalent_control(const ControllerConfig& cfg,
                          std::span<const double> x,
                          std::span<const double> ref);

/// Online switching gain
/// K = beta*bm_hat^-1*(eta + F(x)) + delta + |d_hat| + (beta-1)*|u_hat|.
double robust_gain(const ControllerConfig& cfg, std::span<const double> x,
                   double u_hat, double d_hat);

/// One control evaluation: u = u_hat + d_hat(u_hat) - K*switch(s).
/// Pure; diagnostics are always filled in.
ControlDiag control(const ControllerConfig& cfg, const FuzzyCompensator& comp,
                    std::span<const double> x, std::span<const double> ref);

/// One controller tick: the output is computed from the pre-update rule
/// outputs, then the adaptation law is applied (compute-then-adapt).
ControlDiag step(const ControllerConfig& cfg, FuzzyCompensator& comp,
                 std::span<const double> x, std::span<const double> ref,
                 double dt);

}  // namespace afsmc
