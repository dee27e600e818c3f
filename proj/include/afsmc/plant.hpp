#pragma once

#include <array>
#include <functional>
#include <span>

#include "afsmc/deadzone.hpp"

namespace afsmc {

/// Supply pressure, optionally modulated by the piston position:
/// P_s(x) = base * (1 + modulation * sin(x)).
struct SupplyPressure {
  double base_pa = 0.0;
  double modulation = 0.0;  // fraction, 0 for a constant supply

  double at(double x) const;
};

/// Valve + symmetric cylinder + mass-spring-damper load. The valve
/// nonlinearity is the dead-zone of `valve`; its slopes are the valve gains
/// (m/V) and its breaks come from the spool overlap.
struct HydraulicParams {
  SupplyPressure supply;
  double density_kgm3;
  double discharge_coeff;
  double orifice_gradient_m;
  double ram_area_m2;
  double leakage_m3_per_spa;
  double bulk_modulus_pa;
  double volume_m3;
  double mass_kg;
  double damping_nspm;
  double spring_npm;
  DeadZoneSpec valve;

  void validate() const;
};

struct PlantState {
  double x = 0.0;       // piston displacement, m
  double x_dot = 0.0;   // m/s
  double x_ddot = 0.0;  // m/s^2
};

/// Linear-part coefficients [a0, a1, a2] of x''' = -a'x + b(x,u)(u - d(u)).
std::array<double, 3> a_coeffs(const HydraulicParams& p);

struct InputGain {
  double value = 0.0;
  bool cavitated = false;  // radicand clamped at zero
};

/// State- and sign-dependent input gain b(x,u). A negative radicand
/// (load pressure beyond supply) is clamped to zero and flagged.
InputGain input_gain(const HydraulicParams& p, const PlantState& state,
                     double u);

struct HydraulicDeriv {
  std::array<double, 3> dx{};  // (x', x'', x''')
  bool cavitated = false;
};

HydraulicDeriv derivative(const HydraulicParams& p, const PlantState& state,
                          double u);

/// Chain-of-integrators truth model x^(n) = f(x) + b(x) * dead_zone(u),
/// for analytically tractable test cases. Order = state dimension.
class GenericPlant {
 public:
  GenericPlant(std::function<double(std::span<const double>)> f,
               std::function<double(std::span<const double>)> b,
               DeadZoneSpec dead_zone);

  void derivative(std::span<const double> x, double u,
                  std::span<double> dx) const;

 private:
  std::function<double(std::span<const double>)> f_;
  std::function<double(std::span<const double>)> b_;
  DeadZoneSpec dead_zone_;
};

}  // namespace afsmc
