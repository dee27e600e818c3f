#include "afsmc/plant.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace afsmc {

double SupplyPressure::at(double x) const {
  return base_pa * (1.0 + modulation * std::sin(x));
}

void HydraulicParams::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("HydraulicParams: ") + what +
                                  " must be positive");
  };
  positive(supply.base_pa, "supply.base_pa");
  if (std::abs(supply.modulation) >= 1.0 || !std::isfinite(supply.modulation))
    throw std::invalid_argument(
        "HydraulicParams: supply.modulation must lie in (-1, 1)");
  positive(density_kgm3, "density_kgm3");
  positive(discharge_coeff, "discharge_coeff");
  positive(orifice_gradient_m, "orifice_gradient_m");
  positive(ram_area_m2, "ram_area_m2");
  positive(leakage_m3_per_spa, "leakage_m3_per_spa");
  positive(bulk_modulus_pa, "bulk_modulus_pa");
  positive(volume_m3, "volume_m3");
  positive(mass_kg, "mass_kg");
  positive(damping_nspm, "damping_nspm");
  positive(spring_npm, "spring_npm");
  // valve validated at construction
}

std::array<double, 3> a_coeffs(const HydraulicParams& p) {
  // Sequential division keeps a0 exact for round parameter sets.
  const double a0 =
      4.0 * p.bulk_modulus_pa * p.leakage_m3_per_spa * p.spring_npm /
      p.volume_m3 / p.mass_kg;
  const double a1 =
      p.spring_npm / p.mass_kg +
      4.0 * p.bulk_modulus_pa * p.ram_area_m2 * p.ram_area_m2 / p.volume_m3 /
          p.mass_kg +
      4.0 * p.bulk_modulus_pa * p.leakage_m3_per_spa * p.damping_nspm /
          p.volume_m3 / p.mass_kg;
  const double a2 = p.damping_nspm / p.mass_kg +
                    4.0 * p.bulk_modulus_pa * p.leakage_m3_per_spa / p.volume_m3;
  return {a0, a1, a2};
}

InputGain input_gain(const HydraulicParams& p, const PlantState& state,
                     double u) {
  const double sgn_u = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
  const double load_force = p.mass_kg * state.x_ddot +
                            p.damping_nspm * state.x_dot +
                            p.spring_npm * state.x;
  double radicand =
      (p.supply.at(state.x) - sgn_u * load_force / p.ram_area_m2) /
      p.density_kgm3;
  InputGain out;
  if (radicand < 0.0) {
    radicand = 0.0;
    out.cavitated = true;
  }
  const double prefactor = 4.0 * p.bulk_modulus_pa * p.ram_area_m2 /
                           p.volume_m3 / p.mass_kg;
  out.value = prefactor * p.discharge_coeff * p.orifice_gradient_m *
              slope(p.valve, u) * std::sqrt(radicand);
  return out;
}

HydraulicDeriv derivative(const HydraulicParams& p, const PlantState& state,
                          double u) {
  const auto a = a_coeffs(p);
  const auto gain = input_gain(p, state, u);
  HydraulicDeriv out;
  out.cavitated = gain.cavitated;
  out.dx[0] = state.x_dot;
  out.dx[1] = state.x_ddot;
  out.dx[2] = -(a[0] * state.x + a[1] * state.x_dot + a[2] * state.x_ddot) +
              gain.value * u - gain.value * disturbance(p.valve, u);
  return out;
}

GenericPlant::GenericPlant(std::function<double(std::span<const double>)> f,
                           std::function<double(std::span<const double>)> b,
                           DeadZoneSpec dead_zone)
    : f_(std::move(f)), b_(std::move(b)), dead_zone_(dead_zone) {
  if (!f_ || !b_)
    throw std::invalid_argument("GenericPlant: f and b must be set");
}

void GenericPlant::derivative(std::span<const double> x, double u,
                              std::span<double> dx) const {
  if (x.empty() || dx.size() != x.size())
    throw std::invalid_argument("GenericPlant: bad state dimensions");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) dx[i] = x[i + 1];
  dx[x.size() - 1] = f_(x) + b_(x) * apply(dead_zone_, u);
}

}  // namespace afsmc
