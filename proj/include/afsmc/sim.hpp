#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "afsmc/controller.hpp"
#include "afsmc/deadzone.hpp"
#include "afsmc/plant.hpp"

namespace afsmc {

struct ReferenceSpec {
  double amplitude_m = 0.0;
  double frequency_rad_s = 0.0;
};

/// Analytic derivatives 0..out.size()-1 of x_d = A sin(w t).
void reference(const ReferenceSpec& spec, double t, std::span<double> out);

/// Scalar controller knobs of a scenario; the ModelEstimate functions are
/// assembled by run() from the plant truth structure (a known, gains
/// bounded).
struct ControllerParams {
  double lambda = 8.0;
  double eta = 0.1;
  double phi = 1.0;
  SwitchKind switching = SwitchKind::saturation;
  double bm_hat = 0.0;
  double beta = 1.0;
  double drift_error_bound = 0.0;  // constant F
  bool compensator_on = true;
  double fixed_gain = 0.0;
};

struct FuzzyParams {
  std::vector<double> centers;
  double gamma = 0.0;
  double initial_output = 0.0;  // every rule starts here
};

struct Scenario {
  HydraulicParams plant;
  DeadZoneBounds deadzone_bounds;
  ControllerParams controller;
  FuzzyParams fuzzy;
  ReferenceSpec reference;
  double duration_s = 120.0;
  double controller_rate_hz = 400.0;
  double plant_rate_hz = 800.0;
  double transient_fraction = 0.1;
  std::array<double, 3> initial_state{0.0, 0.0, 0.0};

  void validate() const;
  int steps_per_tick() const;  // plant steps per controller tick
};

enum FaultBits : std::uint8_t {
  kFaultCavitation = 1,
  kFaultAdaptRejected = 2,
  kFaultNonFinite = 4,
};

/// Controller-rate record of a closed-loop run. The true dead-zone output
/// and disturbance columns come from the simulator's privileged access to
/// the plant truth; the V column is filled in after the run (it needs the
/// final rule outputs).
struct SimTrace {
  double controller_dt = 0.0;
  std::size_t rule_count = 0;

  std::vector<double> t;
  std::vector<std::array<double, 3>> state;  // x, x', x''
  std::vector<std::array<double, 4>> ref;    // x_d .. x_d'''
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> upsilon;      // true dead-zone output
  std::vector<double> d_hat;        // compensator estimate
  std::vector<double> d_true;       // true d(u)
  std::vector<double> gain;         // K
  std::vector<double> u_hat;        // equivalent control
  std::vector<double> v_surrogate;  // Lyapunov-style diagnostic
  std::vector<double> rule_outputs; // flattened, rule_count per sample
  std::vector<std::uint8_t> fault;

  bool diverged = false;
  double bm_reference = 0.0;  // constant bm used by the V diagnostic

  std::size_t size() const { return t.size(); }
  double error(std::size_t k, std::size_t deriv) const {
    return state[k][deriv] - ref[k][deriv];
  }
  std::span<const double> rules_at(std::size_t k) const {
    return {rule_outputs.data() + k * rule_count, rule_count};
  }
};

struct Metrics {
  long post_sample_count = 0;
  double rms_error_post = 0.0;
  double max_abs_error_post = 0.0;
  double control_total_variation = 0.0;
  double comp_error_rms_post = 0.0;
  double comp_error_rms_first_quarter = 0.0;
  double comp_error_rms_last_quarter = 0.0;
  double s_in_layer_fraction_post = 0.0;
  std::array<double, 3> region_bounds{};        // zeta_i lambda^(i-n+1) phi
  std::array<double, 3> error_envelope_post{};  // max |err^(i)| post-transient
  std::array<long, 3> region_violations_post{};
  long cavitation_faults = 0;
  long adapt_faults = 0;
  bool diverged = false;
};

struct RunResult {
  SimTrace trace;
  Metrics metrics;
};

/// Fixed-step multirate closed loop: classical 4th-order integration of the
/// plant at plant_rate, control held zero-order between controller ticks,
/// adaptation after each tick's output (compute-then-adapt).
RunResult run(const Scenario& scenario);

/// Single plant substep (classical 4th order) with the input held constant.
/// Exposed so tests can drive the same arithmetic in a flat loop.
bool rk4_substep(const HydraulicParams& p, std::array<double, 3>& state,
                 double u, double h);

struct MonitorReport {
  bool empty = true;
  long v_increase_events = 0;
  double v_worst_increase = 0.0;
  double s_in_layer_fraction_post = 0.0;
  std::array<double, 3> region_occupancy_post{1.0, 1.0, 1.0};
};

/// Post-hoc convergence monitors: V-surrogate decrease between ticks
/// (discontinuous-law runs), boundary-layer occupancy and residual-set
/// occupancy after the transient window.
MonitorReport monitors(const SimTrace& trace, const Scenario& scenario);

/// Flat key=value rendering of the metrics.
std::vector<std::pair<std::string, double>> metrics_items(const Metrics& m);

}  // namespace afsmc
