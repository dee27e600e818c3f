#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "afsmc/scenario_io.hpp"
#include "afsmc/sim.hpp"

using namespace afsmc;

namespace {

Scenario desk_scenario(double duration_s = 30.0) {
  const auto gain =
      derive_gain_estimate(7.6229e7, 7.6229e7, 1.8e-6, 2.2e-6);
  Scenario sc{
      HydraulicParams{SupplyPressure{7.0e6, 0.0}, 850.0, 0.6, 2.5e-2, 3.0e-4,
                      2.0e-12, 7.0e8, 6.0e-5, 250.0, 100.0, 75.0,
                      DeadZoneSpec{-1.1, 0.9, 1.8e-6, 2.2e-6}},
      DeadZoneBounds{-1.1, -0.9, 0.7, 0.9, 1.8e-6, 2.2e-6, 1.8e-6, 2.2e-6},
      ControllerParams{8.0, 0.1, 1.0, SwitchKind::saturation, gain.bm_hat,
                       gain.beta, 0.0, true, 0.0},
      FuzzyParams{{-0.5, -0.1, -0.05, 0.0, 0.05, 0.1, 0.5}, 1.2, 0.0},
      ReferenceSpec{0.5, 0.1},
      duration_s,
      400.0,
      800.0,
      0.1,
      {0.0, 0.0, 0.0}};
  return sc;
}

}  // namespace

TEST_CASE("reference derivatives of the sinusoid") {
  const ReferenceSpec spec{0.5, 0.1};
  std::array<double, 4> out{};
  reference(spec, 0.0, out);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(out[2] == doctest::Approx(0.0));
  CHECK(out[3] == doctest::Approx(-0.5 * 1e-3).epsilon(1e-12));

  for (double t = 0.0; t < 100.0; t += 3.7) {
    reference(spec, t, out);
    const double w = spec.frequency_rad_s;
    CHECK(out[0] == doctest::Approx(0.5 * std::sin(w * t)).epsilon(1e-13));
    CHECK(out[1] ==
          doctest::Approx(0.5 * w * std::cos(w * t)).epsilon(1e-13));
    CHECK(out[2] ==
          doctest::Approx(-0.5 * w * w * std::sin(w * t)).epsilon(1e-13));
    CHECK(out[3] ==
          doctest::Approx(-0.5 * w * w * w * std::cos(w * t)).epsilon(1e-13));
  }

  const ReferenceSpec still{0.0, 0.1};
  reference(still, 12.3, out);
  for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("scenario validation catches rate mismatches") {
  auto sc = desk_scenario();
  CHECK_NOTHROW(sc.validate());
  CHECK(sc.steps_per_tick() == 2);
  sc.plant_rate_hz = 600.0;  // 1.5x controller rate
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc.plant_rate_hz = 200.0;  // slower than the controller
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc = desk_scenario();
  sc.duration_s = 0.0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc = desk_scenario();
  sc.transient_fraction = 1.0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
}

TEST_CASE("equilibrium stays at the origin") {
  auto sc = desk_scenario(5.0);
  sc.reference.amplitude_m = 0.0;
  sc.fuzzy.gamma = 0.0;
  const auto result = run(sc);
  CHECK_FALSE(result.trace.diverged);
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    CHECK(result.trace.state[k][0] == 0.0);
    CHECK(result.trace.u[k] == 0.0);
  }
}

TEST_CASE("multirate engine matches a flat single-rate loop bit for bit") {
  auto sc = desk_scenario(2.0);
  sc.plant_rate_hz = 400.0;  // single-rate configuration
  const auto result = run(sc);
  REQUIRE_FALSE(result.trace.diverged);

  // independent flat loop over the same public pieces
  const auto a = a_coeffs(sc.plant);
  ModelEstimate model;
  model.f_hat = [a](std::span<const double> x) {
    return -(a[0] * x[0] + a[1] * x[1] + a[2] * x[2]);
  };
  model.bm_hat = sc.controller.bm_hat;
  model.beta = sc.controller.beta;
  model.drift_error_bound = [](std::span<const double>) { return 0.0; };
  ControllerConfig cfg{std::move(model),
                       SurfaceSpec(3, sc.controller.lambda),
                       SwitchingFn(sc.controller.switching, sc.controller.phi),
                       sc.controller.eta,
                       disturbance_bound(sc.deadzone_bounds),
                       true,
                       0.0};
  FuzzyCompensator comp(MembershipFamily(sc.fuzzy.centers), sc.fuzzy.gamma);

  const double dt = 1.0 / sc.controller_rate_hz;
  std::array<double, 3> state{0.0, 0.0, 0.0};
  std::array<double, 4> ref{};
  const std::size_t ticks = 800;  // 2 s at 400 Hz
  for (std::size_t k = 0; k <= ticks; ++k) {
    reference(sc.reference, static_cast<double>(k) * dt, ref);
    const auto diag = step(cfg, comp, state, ref, dt);
    REQUIRE(result.trace.u[k] == diag.u);
    REQUIRE(result.trace.s[k] == diag.s);
    REQUIRE(result.trace.state[k] == state);
    if (k < ticks) rk4_substep(sc.plant, state, diag.u, dt);
  }
}

TEST_CASE("identical scenarios give bit-identical traces") {
  const auto sc = desk_scenario(6.0);
  const auto r1 = run(sc);
  const auto r2 = run(sc);
  REQUIRE(r1.trace.size() == r2.trace.size());
  CHECK(r1.trace.u == r2.trace.u);
  CHECK(r1.trace.s == r2.trace.s);
  CHECK(r1.trace.state == r2.trace.state);
  CHECK(r1.trace.v_surrogate == r2.trace.v_surrogate);
  CHECK(r1.metrics.rms_error_post == r2.metrics.rms_error_post);
}

TEST_CASE("adaptation beats the frozen compensator on tracking error") {
  auto adaptive = desk_scenario(30.0);
  auto frozen = desk_scenario(30.0);
  frozen.fuzzy.gamma = 0.0;
  const auto ra = run(adaptive);
  const auto rf = run(frozen);
  REQUIRE_FALSE(ra.trace.diverged);
  REQUIRE_FALSE(rf.trace.diverged);
  CHECK(ra.metrics.rms_error_post < rf.metrics.rms_error_post);
  // the estimate moves toward the true disturbance as the run progresses
  CHECK(ra.metrics.comp_error_rms_last_quarter <
        ra.metrics.comp_error_rms_first_quarter);
  // frozen run keeps its estimate at the initial value
  for (std::size_t k = 0; k < rf.trace.size(); ++k)
    CHECK(rf.trace.d_hat[k] == 0.0);
}

TEST_CASE("halving the plant step barely moves the endpoint") {
  auto coarse = desk_scenario(12.0);
  auto fine = desk_scenario(12.0);
  fine.plant_rate_hz = 1600.0;
  const auto rc = run(coarse);
  const auto rf = run(fine);
  REQUIRE(rc.trace.size() == rf.trace.size());
  const double dx = std::abs(rc.trace.state.back()[0] -
                             rf.trace.state.back()[0]);
  CHECK(dx < 1e-6);
}

TEST_CASE("monitors on a trivially short trace are empty") {
  auto sc = desk_scenario(0.001);
  const auto result = run(sc);
  CHECK(result.trace.size() == 1);
  const auto report = monitors(result.trace, sc);
  CHECK(report.empty);
}

TEST_CASE("monitor occupancies on a healthy run") {
  const auto sc = desk_scenario(20.0);
  const auto result = run(sc);
  const auto report = monitors(result.trace, sc);
  REQUIRE_FALSE(report.empty);
  CHECK(report.s_in_layer_fraction_post >= 0.99);
  for (double occ : report.region_occupancy_post) CHECK(occ >= 0.99);
}

TEST_CASE("relay law enforces the reaching condition between ticks") {
  auto sc = desk_scenario(20.0);
  sc.controller.switching = SwitchKind::sign;
  const auto result = run(sc);
  REQUIRE_FALSE(result.trace.diverged);
  const double dt = result.trace.controller_dt;

  // The instantaneous condition holds with near-equality where the gain
  // law parks u at the dead-band edge, so a 2.5 ms hold lets the stiff
  // drift reverse s-dot within a tick there. Sampled rendering: the strict
  // bound holds at almost every held-sign tick and every exception is a
  // small-excess hold artifact, never a sustained escape.
  long checked = 0;
  long strict = 0;
  double worst_excess = 0.0;
  double max_abs_s = 0.0;
  for (std::size_t k = 0; k + 1 < result.trace.size(); ++k) {
    const double s0 = result.trace.s[k];
    const double s1 = result.trace.s[k + 1];
    max_abs_s = std::max(max_abs_s, std::abs(s0));
    if (s0 == 0.0 || (s0 > 0.0) != (s1 > 0.0)) continue;
    ++checked;
    const double half_ds2 = 0.5 * (s1 * s1 - s0 * s0) / dt;
    const double bound = -sc.controller.eta * std::abs(s0) + 1e-9;
    if (half_ds2 <= bound)
      ++strict;
    else
      worst_excess = std::max(worst_excess, half_ds2 - bound);
  }
  REQUIRE(checked > 1000);  // must not pass vacuously
  CHECK(static_cast<double>(strict) / static_cast<double>(checked) >= 0.95);
  CHECK(worst_excess < 0.05);
  CHECK(max_abs_s < 2.0);  // chattering band, never a runaway
}

TEST_CASE("an under-gained relay is flagged by the V monitor") {
  auto sc = desk_scenario(30.0);
  sc.controller.switching = SwitchKind::sign;
  sc.controller.fixed_gain = 0.6;  // below the disturbance bound 1.1
  const auto result = run(sc);
  REQUIRE_FALSE(result.trace.diverged);
  const auto report = monitors(result.trace, sc);
  CHECK(report.v_increase_events > 100);
  CHECK(result.metrics.rms_error_post > 0.01);
}

TEST_CASE("non-finite controller output diverges with a partial trace") {
  auto sc = desk_scenario(10.0);
  sc.initial_state = {1e308, 0.0, 0.0};  // drift estimate overflows
  const auto result = run(sc);
  CHECK(result.trace.diverged);
  CHECK(result.metrics.diverged);
  CHECK(result.trace.size() == 1);
  CHECK((result.trace.fault.back() & kFaultNonFinite) != 0);
}

TEST_CASE("cavitation faults are counted, not fatal") {
  auto sc = desk_scenario(2.0);
  // huge fixed gain saturates the supply immediately but stays finite
  sc.controller.fixed_gain = 5.0e3;
  const auto result = run(sc);
  CHECK(result.metrics.cavitation_faults > 0);
}
