#include "afsmc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace afsmc {

void ModelEstimate::validate() const {
  if (!f_hat) throw std::invalid_argument("ModelEstimate: f_hat not set");
  if (!drift_error_bound)
    throw std::invalid_argument("ModelEstimate: drift_error_bound not set");
  if (!(bm_hat > 0.0) || !std::isfinite(bm_hat))
    throw std::invalid_argument("ModelEstimate: bm_hat must be positive");
  if (!(beta >= 1.0) || !std::isfinite(beta))
    throw std::invalid_argument("ModelEstimate: beta must be >= 1");
}

GainEstimate derive_gain_estimate(double b_min, double b_max, double m_min,
                                  double m_max) {
  if (!(0.0 < b_min && b_min <= b_max))
    throw std::invalid_argument("derive_gain_estimate: bad b bounds");
  if (!(0.0 < m_min && m_min <= m_max))
    throw std::invalid_argument("derive_gain_estimate: bad m bounds");
  const double bm_lo = b_min * m_min;
  const double bm_hi = b_max * m_max;
  const double bm_hat = std::sqrt(bm_hi * bm_lo);
  return {bm_hat, std::sqrt(bm_hi / bm_lo)};
}

double coverage_beta(double bm_hat, double bm_min, double bm_max) {
  if (!(0.0 < bm_min && bm_min <= bm_max) || !(bm_hat > 0.0))
    throw std::invalid_argument("coverage_beta: bad arguments");
  return std::max(bm_hat / bm_min, bm_max / bm_hat);
}

void ControllerConfig::validate() const {
  model.validate();
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("ControllerConfig: eta must be positive");
  if (!(delta_bound >= 0.0) || !std::isfinite(delta_bound))
    throw std::invalid_argument("ControllerConfig: delta_bound must be >= 0");
  if (fixed_gain < 0.0 || !std::isfinite(fixed_gain))
    throw std::invalid_argument("ControllerConfig: fixed_gain must be >= 0");
}

namespace {

std::vector<double> error_vector(const ControllerConfig& cfg,
                                 std::span<const double> x,
                                 std::span<const double> ref) {
  const auto n = static_cast<std::size_t>(cfg.surface.order());
  if (x.size() != n)
    throw std::invalid_argument("controller: state dimension mismatch");
  if (ref.size() != n + 1)
    throw std::invalid_argument(
        "controller: reference must carry derivatives 0..n");
  std::vector<double> err(n);
  for (std::size_t i = 0; i < n; ++i) err[i] = x[i] - ref[i];
  return err;
}

}  // namespace

double equivalent_control(const ControllerConfig& cfg,
                          std::span<const double> x,
                          std::span<const double> ref) {
  const auto err = error_vector(cfg, x, ref);
  const double xd_n = ref[ref.size() - 1];
  const double fb = sdot_feedback(cfg.surface, err);
  return (-cfg.model.f_hat(x) + xd_n - fb) / cfg.model.bm_hat;
}

double robust_gain(const ControllerConfig& cfg, std::span<const double> x,
                   double u_hat, double d_hat) {
  const double beta = cfg.model.beta;
  return beta / cfg.model.bm_hat * (cfg.eta + cfg.model.drift_error_bound(x)) +
         cfg.delta_bound + std::abs(d_hat) + (beta - 1.0) * std::abs(u_hat);
}

ControlDiag control(const ControllerConfig& cfg, const FuzzyCompensator& comp,
                    std::span<const double> x, std::span<const double> ref) {
  const auto err = error_vector(cfg, x, ref);

  ControlDiag diag;
  diag.s = sliding_variable(cfg.surface, err);
  diag.u_hat = equivalent_control(cfg, x, ref);
  diag.d_hat = cfg.compensator_on ? comp.estimate(diag.u_hat) : 0.0;
  diag.gain = cfg.fixed_gain > 0.0
                  ? cfg.fixed_gain
                  : robust_gain(cfg, x, diag.u_hat, diag.d_hat);
  diag.u = diag.u_hat + diag.d_hat -
           diag.gain * switch_value(cfg.switching, diag.s);
  diag.finite = std::isfinite(diag.s) && std::isfinite(diag.u_hat) &&
                std::isfinite(diag.d_hat) && std::isfinite(diag.gain) &&
                std::isfinite(diag.u);
  return diag;
}

ControlDiag step(const ControllerConfig& cfg, FuzzyCompensator& comp,
                 std::span<const double> x, std::span<const double> ref,
                 double dt) {
  ControlDiag diag = control(cfg, comp, x, ref);
  if (cfg.compensator_on && !comp.adapt(diag.s, diag.u_hat, dt))
    diag.finite = false;
  return diag;
}

}  // namespace afsmc
