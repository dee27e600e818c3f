#include "afsmc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afsmc {

void reference(const ReferenceSpec& spec, double t, std::span<double> out) {
  // k-th derivative of A sin(wt): A w^k sin(wt + k pi/2)
  const double phase = spec.frequency_rad_s * t;
  const double sin_p = std::sin(phase);
  const double cos_p = std::cos(phase);
  double scale = spec.amplitude_m;
  for (std::size_t k = 0; k < out.size(); ++k) {
    switch (k % 4) {
      case 0: out[k] = scale * sin_p; break;
      case 1: out[k] = scale * cos_p; break;
      case 2: out[k] = -scale * sin_p; break;
      default: out[k] = -scale * cos_p; break;
    }
    scale *= spec.frequency_rad_s;
  }
}

void Scenario::validate() const {
  plant.validate();
  auto bad = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(controller.lambda > 0.0)) bad("Scenario: controller.lambda must be positive");
  if (!(controller.eta > 0.0)) bad("Scenario: controller.eta must be positive");
  if (!(controller.phi > 0.0)) bad("Scenario: controller.phi must be positive");
  if (!(controller.bm_hat > 0.0)) bad("Scenario: controller.bm_hat must be positive");
  if (!(controller.beta >= 1.0)) bad("Scenario: controller.beta must be >= 1");
  if (!(controller.drift_error_bound >= 0.0))
    bad("Scenario: controller.drift_error_bound must be >= 0");
  if (!(controller.fixed_gain >= 0.0))
    bad("Scenario: controller.fixed_gain must be >= 0");
  if (fuzzy.centers.empty()) bad("Scenario: fuzzy.centers must be non-empty");
  if (!(fuzzy.gamma >= 0.0)) bad("Scenario: fuzzy.gamma must be >= 0");
  if (!std::isfinite(fuzzy.initial_output))
    bad("Scenario: fuzzy.initial_output must be finite");
  if (!(reference.amplitude_m >= 0.0))
    bad("Scenario: reference.amplitude_m must be >= 0");
  if (!(reference.frequency_rad_s >= 0.0))
    bad("Scenario: reference.frequency_rad_s must be >= 0");
  if (!(duration_s > 0.0)) bad("Scenario: duration_s must be positive");
  if (!(controller_rate_hz > 0.0))
    bad("Scenario: controller_rate_hz must be positive");
  if (!(plant_rate_hz > 0.0)) bad("Scenario: plant_rate_hz must be positive");
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
    bad("Scenario: transient_fraction must lie in [0, 1)");
  for (double v : initial_state)
    if (!std::isfinite(v)) bad("Scenario: initial_state must be finite");
  const double ratio = plant_rate_hz / controller_rate_hz;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || ratio < 1.0 - 1e-9)
    bad("Scenario: plant_rate_hz must be an integer multiple of controller_rate_hz");
}

int Scenario::steps_per_tick() const {
  return static_cast<int>(std::lround(plant_rate_hz / controller_rate_hz));
}

bool rk4_substep(const HydraulicParams& p, std::array<double, 3>& state,
                 double u, double h) {
  auto eval = [&](const std::array<double, 3>& y, bool& cav) {
    const HydraulicDeriv d = derivative(p, PlantState{y[0], y[1], y[2]}, u);
    cav = cav || d.cavitated;
    return d.dx;
  };
  bool cavitated = false;
  const auto k1 = eval(state, cavitated);
  std::array<double, 3> y2;
  for (int i = 0; i < 3; ++i) y2[i] = state[i] + 0.5 * h * k1[i];
  const auto k2 = eval(y2, cavitated);
  std::array<double, 3> y3;
  for (int i = 0; i < 3; ++i) y3[i] = state[i] + 0.5 * h * k2[i];
  const auto k3 = eval(y3, cavitated);
  std::array<double, 3> y4;
  for (int i = 0; i < 3; ++i) y4[i] = state[i] + h * k3[i];
  const auto k4 = eval(y4, cavitated);
  for (int i = 0; i < 3; ++i)
    state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return cavitated;
}

namespace {

ControllerConfig make_controller_config(const Scenario& sc) {
  const auto a = a_coeffs(sc.plant);
  ModelEstimate model;
  model.f_hat = [a](std::span<const double> x) {
    return -(a[0] * x[0] + a[1] * x[1] + a[2] * x[2]);
  };
  model.bm_hat = sc.controller.bm_hat;
  model.beta = sc.controller.beta;
  const double f_bound = sc.controller.drift_error_bound;
  model.drift_error_bound = [f_bound](std::span<const double>) {
    return f_bound;
  };
  ControllerConfig cfg{
      std::move(model),
      SurfaceSpec(3, sc.controller.lambda),
      SwitchingFn(sc.controller.switching, sc.controller.phi),
      sc.controller.eta,
      disturbance_bound(sc.deadzone_bounds),
      sc.controller.compensator_on,
      sc.controller.fixed_gain};
  cfg.validate();
  return cfg;
}

double reference_bm(const HydraulicParams& p) {
  // True gain at rest with the geometric-mean slope: the constant weight of
  // the V diagnostic.
  const double prefactor = 4.0 * p.bulk_modulus_pa * p.ram_area_m2 /
                           p.volume_m3 / p.mass_kg;
  return prefactor * p.discharge_coeff * p.orifice_gradient_m *
         std::sqrt(p.valve.m_l * p.valve.m_r) *
         std::sqrt(p.supply.base_pa / p.density_kgm3);
}

void fill_v_surrogate(SimTrace& trace, double gamma) {
  const std::size_t n = trace.size();
  trace.v_surrogate.assign(n, 0.0);
  if (n == 0) return;
  const auto d_star = trace.rules_at(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    double v = 0.5 * trace.s[k] * trace.s[k];
    if (gamma > 0.0) {
      const auto d_k = trace.rules_at(k);
      double dist2 = 0.0;
      for (std::size_t r = 0; r < trace.rule_count; ++r) {
        const double diff = d_k[r] - d_star[r];
        dist2 += diff * diff;
      }
      v += trace.bm_reference / (2.0 * gamma) * dist2;
    }
    trace.v_surrogate[k] = v;
  }
}

Metrics compute_metrics(const SimTrace& trace, const Scenario& sc,
                        const SurfaceSpec& surface) {
  Metrics m;
  m.diverged = trace.diverged;
  const std::size_t n = trace.size();
  if (n == 0) return m;

  const double t_post = sc.transient_fraction * sc.duration_s;
  std::size_t post_begin = 0;
  while (post_begin < n && trace.t[post_begin] < t_post) ++post_begin;
  if (post_begin >= n) post_begin = n - 1;

  const auto region = convergence_region(surface, sc.controller.phi);
  for (int i = 0; i < 3; ++i)
    m.region_bounds[static_cast<std::size_t>(i)] =
        region[static_cast<std::size_t>(i)];

  double err_sq = 0.0;
  double comp_sq_post = 0.0;
  std::size_t in_layer = 0;
  for (std::size_t k = post_begin; k < n; ++k) {
    const double e = trace.error(k, 0);
    err_sq += e * e;
    m.max_abs_error_post = std::max(m.max_abs_error_post, std::abs(e));
    const double ce = trace.d_hat[k] - trace.d_true[k];
    comp_sq_post += ce * ce;
    if (std::abs(trace.s[k]) <= sc.controller.phi) ++in_layer;
    for (std::size_t i = 0; i < 3; ++i) {
      const double mag = std::abs(trace.error(k, i));
      m.error_envelope_post[i] = std::max(m.error_envelope_post[i], mag);
      if (mag > m.region_bounds[i]) ++m.region_violations_post[i];
    }
  }
  const auto post_count = static_cast<double>(n - post_begin);
  m.post_sample_count = static_cast<long>(n - post_begin);
  m.rms_error_post = std::sqrt(err_sq / post_count);
  m.comp_error_rms_post = std::sqrt(comp_sq_post / post_count);
  m.s_in_layer_fraction_post = static_cast<double>(in_layer) / post_count;

  for (std::size_t k = 0; k + 1 < n; ++k)
    m.control_total_variation += std::abs(trace.u[k + 1] - trace.u[k]);

  const std::size_t quarter = n / 4;
  auto comp_rms = [&](std::size_t begin, std::size_t end) {
    if (end <= begin) return 0.0;
    double acc = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const double ce = trace.d_hat[k] - trace.d_true[k];
      acc += ce * ce;
    }
    return std::sqrt(acc / static_cast<double>(end - begin));
  };
  m.comp_error_rms_first_quarter = comp_rms(0, quarter);
  m.comp_error_rms_last_quarter = comp_rms(n - quarter, n);

  for (std::size_t k = 0; k < n; ++k) {
    if (trace.fault[k] & kFaultCavitation) ++m.cavitation_faults;
    if (trace.fault[k] & kFaultAdaptRejected) ++m.adapt_faults;
  }
  return m;
}

}  // namespace

RunResult run(const Scenario& scenario) {
  scenario.validate();
  const ControllerConfig cfg = make_controller_config(scenario);
  FuzzyCompensator comp(
      MembershipFamily(scenario.fuzzy.centers), scenario.fuzzy.gamma,
      std::vector<double>(scenario.fuzzy.centers.size(),
                          scenario.fuzzy.initial_output));

  const double dt_c = 1.0 / scenario.controller_rate_hz;
  const double h = 1.0 / scenario.plant_rate_hz;
  const int substeps = scenario.steps_per_tick();
  const auto ticks = static_cast<std::size_t>(
      std::lround(scenario.duration_s * scenario.controller_rate_hz));

  SimTrace trace;
  trace.controller_dt = dt_c;
  trace.rule_count = comp.outputs().size();
  trace.bm_reference = reference_bm(scenario.plant);
  const std::size_t samples = ticks + 1;
  trace.t.reserve(samples);
  trace.state.reserve(samples);
  trace.ref.reserve(samples);
  trace.s.reserve(samples);
  trace.u.reserve(samples);
  trace.upsilon.reserve(samples);
  trace.d_hat.reserve(samples);
  trace.d_true.reserve(samples);
  trace.gain.reserve(samples);
  trace.u_hat.reserve(samples);
  trace.rule_outputs.reserve(samples * trace.rule_count);
  trace.fault.reserve(samples);

  std::array<double, 3> state = scenario.initial_state;
  std::array<double, 4> ref{};
  std::uint8_t pending_fault = 0;  // faults raised while propagating to this tick

  for (std::size_t k = 0; k <= ticks; ++k) {
    const double t = static_cast<double>(k) * dt_c;
    reference(scenario.reference, t, ref);

    const bool state_finite = std::isfinite(state[0]) &&
                              std::isfinite(state[1]) &&
                              std::isfinite(state[2]);
    ControlDiag diag;
    if (state_finite) diag = control(cfg, comp, state, ref);

    std::uint8_t fault = pending_fault;
    pending_fault = 0;
    if (!state_finite || !diag.finite) fault |= kFaultNonFinite;

    trace.t.push_back(t);
    trace.state.push_back(state);
    trace.ref.push_back(ref);
    trace.s.push_back(diag.s);
    trace.u.push_back(diag.u);
    trace.upsilon.push_back(apply(scenario.plant.valve, diag.u));
    trace.d_hat.push_back(diag.d_hat);
    trace.d_true.push_back(disturbance(scenario.plant.valve, diag.u));
    trace.gain.push_back(diag.gain);
    trace.u_hat.push_back(diag.u_hat);
    trace.rule_outputs.insert(trace.rule_outputs.end(), comp.outputs().begin(),
                              comp.outputs().end());
    trace.fault.push_back(fault);

    if (fault & kFaultNonFinite) {
      trace.diverged = true;
      break;
    }
    if (k == ticks) break;

    if (cfg.compensator_on && !comp.adapt(diag.s, diag.u_hat, dt_c))
      trace.fault.back() |= kFaultAdaptRejected;
    for (int j = 0; j < substeps; ++j) {
      if (rk4_substep(scenario.plant, state, diag.u, h))
        pending_fault |= kFaultCavitation;
    }
  }

  fill_v_surrogate(trace, scenario.fuzzy.gamma);
  Metrics metrics = compute_metrics(trace, scenario, cfg.surface);
  return {std::move(trace), std::move(metrics)};
}

MonitorReport monitors(const SimTrace& trace, const Scenario& scenario) {
  MonitorReport report;
  const std::size_t n = trace.size();
  if (n < 2) return report;
  report.empty = false;

  // Between-tick V decrease, with the discretization slack of a zero-order
  // hold worked out explicitly:
  //  - a sampled relay overshoots the surface within one period, worth at
  //    most the post-crossing energy 0.5 s1^2 on sign-flip ticks;
  //  - the adaptation cross term -bm s Delta'Psi dt cancels against part of
  //    the s dynamics only at matched instants; holding u and D over the
  //    tick leaves a residual bounded by |Delta'Psi| bm dt (|s1-s0| + c|s0|),
  //    c covering the spread of the true gain around the reference bm.
  const double gamma = scenario.fuzzy.gamma;
  const MembershipFamily family(scenario.fuzzy.centers);
  std::vector<double> d_star(trace.rules_at(n - 1).begin(),
                             trace.rules_at(n - 1).end());
  const FuzzyCompensator optimal(family, 0.0, std::move(d_star));
  const double dt = trace.controller_dt;

  long events = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dv = trace.v_surrogate[k + 1] - trace.v_surrogate[k];
    const double s0 = trace.s[k];
    const double s1 = trace.s[k + 1];
    const bool flip = (s1 > 0.0 && s0 <= 0.0) || (s1 < 0.0 && s0 >= 0.0);
    double tol = 1e-9 + 1e-6 * std::abs(trace.v_surrogate[k]);
    if (flip) tol += 0.5 * s1 * s1;
    if (gamma > 0.0) {
      const double mismatch =
          std::abs(trace.d_hat[k] - optimal.estimate(trace.u_hat[k]));
      tol += mismatch * trace.bm_reference * dt *
                 (std::abs(s1 - s0) + 0.2 * std::abs(s0)) +
             0.5 * trace.bm_reference * gamma * s0 * s0 * dt * dt;
    }
    if (dv > tol) {
      ++events;
      worst = std::max(worst, dv - tol);
    }
  }
  report.v_increase_events = events;
  report.v_worst_increase = worst;

  const double t_post = scenario.transient_fraction * scenario.duration_s;
  std::size_t post_begin = 0;
  while (post_begin < n && trace.t[post_begin] < t_post) ++post_begin;
  if (post_begin >= n) post_begin = n - 1;
  const auto post_count = static_cast<double>(n - post_begin);

  const SurfaceSpec surface(3, scenario.controller.lambda);
  const auto region = convergence_region(surface, scenario.controller.phi);
  std::size_t in_layer = 0;
  std::array<std::size_t, 3> in_region{};
  for (std::size_t k = post_begin; k < n; ++k) {
    if (std::abs(trace.s[k]) <= scenario.controller.phi) ++in_layer;
    for (std::size_t i = 0; i < 3; ++i)
      if (std::abs(trace.error(k, i)) <= region[i]) ++in_region[i];
  }
  report.s_in_layer_fraction_post = static_cast<double>(in_layer) / post_count;
  for (std::size_t i = 0; i < 3; ++i)
    report.region_occupancy_post[i] =
        static_cast<double>(in_region[i]) / post_count;
  return report;
}

std::vector<std::pair<std::string, double>> metrics_items(const Metrics& m) {
  std::vector<std::pair<std::string, double>> items;
  items.emplace_back("post_sample_count",
                     static_cast<double>(m.post_sample_count));
  items.emplace_back("rms_error_post", m.rms_error_post);
  items.emplace_back("max_abs_error_post", m.max_abs_error_post);
  items.emplace_back("control_total_variation", m.control_total_variation);
  items.emplace_back("comp_error_rms_post", m.comp_error_rms_post);
  items.emplace_back("comp_error_rms_first_quarter",
                     m.comp_error_rms_first_quarter);
  items.emplace_back("comp_error_rms_last_quarter",
                     m.comp_error_rms_last_quarter);
  items.emplace_back("s_in_layer_fraction_post", m.s_in_layer_fraction_post);
  for (int i = 0; i < 3; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::string suffix = std::to_string(i);
    items.emplace_back("region_bound_" + suffix, m.region_bounds[idx]);
    items.emplace_back("error_envelope_post_" + suffix,
                       m.error_envelope_post[idx]);
    items.emplace_back("region_violations_post_" + suffix,
                       static_cast<double>(m.region_violations_post[idx]));
  }
  items.emplace_back("cavitation_faults",
                     static_cast<double>(m.cavitation_faults));
  items.emplace_back("adapt_faults", static_cast<double>(m.adapt_faults));
  items.emplace_back("diverged", m.diverged ? 1.0 : 0.0);
  return items;
}

}  // namespace afsmc
