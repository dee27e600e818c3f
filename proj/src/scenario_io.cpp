#include "afsmc/scenario_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace afsmc {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Raw section.key -> value store with consume-or-complain semantics.
class ConfigMap {
 public:
  void parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          fail_line(line_no, "malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty()) fail_line(line_no, "empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        fail_line(line_no, "expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail_line(line_no, "empty key");
      if (section.empty()) fail_line(line_no, "key outside any section");
      const std::string path = section + "." + key;
      if (values_.count(path))
        throw ScenarioError("duplicate key: " + path);
      values_[path] = value;
    }
  }

  void set(const std::string& path, const std::string& value) {
    values_[path] = value;
  }

  std::optional<std::string> take(const std::string& path) {
    auto it = values_.find(path);
    if (it == values_.end()) return std::nullopt;
    std::string v = it->second;
    values_.erase(it);
    return v;
  }

  std::string require(const std::string& path) {
    auto v = take(path);
    if (!v) throw ScenarioError("missing key: " + path);
    return *v;
  }

  void reject_leftovers() const {
    if (!values_.empty())
      throw ScenarioError("unknown key: " + values_.begin()->first);
  }

 private:
  [[noreturn]] static void fail_line(int line_no, const std::string& what) {
    throw ScenarioError("parse error at line " + std::to_string(line_no) +
                        ": " + what);
  }

  std::map<std::string, std::string> values_;
};

double parse_number(const std::string& path, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ScenarioError("bad number for " + path + ": '" + text + "'");
  }
}

bool parse_bool(const std::string& path, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ScenarioError("bad boolean for " + path + " (use true/false): '" +
                      text + "'");
}

std::vector<double> parse_list(const std::string& path,
                               const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ScenarioError("empty list element in " + path);
    out.push_back(parse_number(path, item));
  }
  if (out.empty()) throw ScenarioError("empty list for " + path);
  return out;
}

SwitchKind parse_switching(const std::string& path, const std::string& text) {
  if (text == "sign") return SwitchKind::sign;
  if (text == "saturation") return SwitchKind::saturation;
  if (text == "tanh") return SwitchKind::hyperbolic_tangent;
  throw ScenarioError("bad value for " + path +
                      " (sign|saturation|tanh): '" + text + "'");
}

const char* switching_name(SwitchKind kind) {
  switch (kind) {
    case SwitchKind::sign: return "sign";
    case SwitchKind::saturation: return "saturation";
    case SwitchKind::hyperbolic_tangent: return "tanh";
  }
  return "?";
}

double num(ConfigMap& cfg, const std::string& path) {
  return parse_number(path, cfg.require(path));
}

std::optional<double> opt_num(ConfigMap& cfg, const std::string& path) {
  auto v = cfg.take(path);
  if (!v) return std::nullopt;
  return parse_number(path, *v);
}

Scenario from_map(ConfigMap& cfg) {
  HydraulicParams plant{
      SupplyPressure{num(cfg, "plant.supply_pressure_pa"),
                     opt_num(cfg, "plant.supply_modulation").value_or(0.0)},
      num(cfg, "plant.density_kgm3"),
      num(cfg, "plant.discharge_coeff"),
      num(cfg, "plant.orifice_gradient_m"),
      num(cfg, "plant.ram_area_m2"),
      num(cfg, "plant.leakage_m3_per_spa"),
      num(cfg, "plant.bulk_modulus_pa"),
      num(cfg, "plant.volume_m3"),
      num(cfg, "plant.mass_kg"),
      num(cfg, "plant.damping_nspm"),
      num(cfg, "plant.spring_npm"),
      [&]() -> DeadZoneSpec {
        try {
          return DeadZoneSpec(num(cfg, "deadzone.delta_l_v"),
                              num(cfg, "deadzone.delta_r_v"),
                              num(cfg, "deadzone.slope_l"),
                              num(cfg, "deadzone.slope_r"));
        } catch (const std::invalid_argument& e) {
          throw ScenarioError(std::string("[deadzone] ") + e.what());
        }
      }()};

  auto bounds = [&]() -> DeadZoneBounds {
    try {
      return DeadZoneBounds(num(cfg, "deadzone_bounds.delta_l_min"),
                            num(cfg, "deadzone_bounds.delta_l_max"),
                            num(cfg, "deadzone_bounds.delta_r_min"),
                            num(cfg, "deadzone_bounds.delta_r_max"),
                            num(cfg, "deadzone_bounds.slope_l_min"),
                            num(cfg, "deadzone_bounds.slope_l_max"),
                            num(cfg, "deadzone_bounds.slope_r_min"),
                            num(cfg, "deadzone_bounds.slope_r_max"));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("[deadzone_bounds] ") + e.what());
    }
  }();

  ControllerParams ctrl;
  ctrl.lambda = num(cfg, "controller.lambda");
  ctrl.eta = num(cfg, "controller.eta");
  ctrl.phi = num(cfg, "controller.phi");
  ctrl.switching =
      parse_switching("controller.switching", cfg.require("controller.switching"));
  ctrl.drift_error_bound =
      opt_num(cfg, "controller.drift_error_bound").value_or(0.0);
  if (auto v = cfg.take("controller.compensator_on"))
    ctrl.compensator_on = parse_bool("controller.compensator_on", *v);
  ctrl.fixed_gain = opt_num(cfg, "controller.fixed_gain").value_or(0.0);

  const auto b_min = opt_num(cfg, "controller.b_min");
  const auto b_max = opt_num(cfg, "controller.b_max");
  const auto bm_hat = opt_num(cfg, "controller.bm_hat");
  const auto beta = opt_num(cfg, "controller.beta");
  if (bm_hat) {
    ctrl.bm_hat = *bm_hat;
  } else {
    if (!b_min || !b_max)
      throw ScenarioError(
          "controller.bm_hat or controller.b_min/b_max required");
    ctrl.bm_hat =
        derive_gain_estimate(*b_min, *b_max, bounds.m_min(), bounds.m_max())
            .bm_hat;
  }
  if (beta) {
    ctrl.beta = *beta;
  } else {
    if (!b_min || !b_max)
      throw ScenarioError(
          "controller.beta or controller.b_min/b_max required");
    ctrl.beta = coverage_beta(ctrl.bm_hat, *b_min * bounds.m_min(),
                              *b_max * bounds.m_max());
  }

  FuzzyParams fuzzy;
  if (auto v = cfg.take("fuzzy.centers"))
    fuzzy.centers = parse_list("fuzzy.centers", *v);
  else
    fuzzy.centers = {-0.5, -0.1, -0.05, 0.0, 0.05, 0.1, 0.5};
  fuzzy.gamma = num(cfg, "fuzzy.gamma");
  fuzzy.initial_output = opt_num(cfg, "fuzzy.initial_output").value_or(0.0);

  ReferenceSpec ref{num(cfg, "reference.amplitude_m"),
                    num(cfg, "reference.frequency_rad_s")};

  Scenario sc{plant,
              bounds,
              ctrl,
              fuzzy,
              ref,
              opt_num(cfg, "sim.duration_s").value_or(120.0),
              opt_num(cfg, "sim.controller_rate_hz").value_or(400.0),
              opt_num(cfg, "sim.plant_rate_hz").value_or(800.0),
              opt_num(cfg, "sim.transient_fraction").value_or(0.1),
              {0.0, 0.0, 0.0}};
  if (auto v = cfg.take("sim.initial_state")) {
    const auto list = parse_list("sim.initial_state", *v);
    if (list.size() != 3)
      throw ScenarioError("sim.initial_state needs exactly 3 values");
    sc.initial_state = {list[0], list[1], list[2]};
  }

  cfg.reject_leftovers();
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  return sc;
}

}  // namespace

Scenario load_scenario_text(const std::string& text,
                            const KeyOverrides& overrides) {
  ConfigMap cfg;
  cfg.parse(text);
  for (const auto& [path, value] : overrides) cfg.set(path, value);
  return from_map(cfg);
}

Scenario load_scenario(const std::filesystem::path& path,
                       const KeyOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str(), overrides);
}

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  char line[160];
  auto kv = [&](const char* key, double value) {
    std::snprintf(line, sizeof(line), "%s = %.17g\n", key, value);
    out += line;
  };
  auto kv_list = [&](const char* key, std::span<const double> values) {
    out += key;
    out += " =";
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(line, sizeof(line), "%s %.17g", i ? "," : "", values[i]);
      out += line;
    }
    out += "\n";
  };

  out += "[plant]\n";
  kv("supply_pressure_pa", s.plant.supply.base_pa);
  kv("supply_modulation", s.plant.supply.modulation);
  kv("density_kgm3", s.plant.density_kgm3);
  kv("discharge_coeff", s.plant.discharge_coeff);
  kv("orifice_gradient_m", s.plant.orifice_gradient_m);
  kv("ram_area_m2", s.plant.ram_area_m2);
  kv("leakage_m3_per_spa", s.plant.leakage_m3_per_spa);
  kv("bulk_modulus_pa", s.plant.bulk_modulus_pa);
  kv("volume_m3", s.plant.volume_m3);
  kv("mass_kg", s.plant.mass_kg);
  kv("damping_nspm", s.plant.damping_nspm);
  kv("spring_npm", s.plant.spring_npm);

  out += "\n[deadzone]\n";
  kv("delta_l_v", s.plant.valve.delta_l);
  kv("delta_r_v", s.plant.valve.delta_r);
  kv("slope_l", s.plant.valve.m_l);
  kv("slope_r", s.plant.valve.m_r);

  out += "\n[deadzone_bounds]\n";
  kv("delta_l_min", s.deadzone_bounds.delta_l_min);
  kv("delta_l_max", s.deadzone_bounds.delta_l_max);
  kv("delta_r_min", s.deadzone_bounds.delta_r_min);
  kv("delta_r_max", s.deadzone_bounds.delta_r_max);
  kv("slope_l_min", s.deadzone_bounds.m_l_min);
  kv("slope_l_max", s.deadzone_bounds.m_l_max);
  kv("slope_r_min", s.deadzone_bounds.m_r_min);
  kv("slope_r_max", s.deadzone_bounds.m_r_max);

  out += "\n[controller]\n";
  kv("lambda", s.controller.lambda);
  kv("eta", s.controller.eta);
  kv("phi", s.controller.phi);
  out += "switching = ";
  out += switching_name(s.controller.switching);
  out += "\n";
  kv("bm_hat", s.controller.bm_hat);
  kv("beta", s.controller.beta);
  kv("drift_error_bound", s.controller.drift_error_bound);
  out += s.controller.compensator_on ? "compensator_on = true\n"
                                     : "compensator_on = false\n";
  kv("fixed_gain", s.controller.fixed_gain);

  out += "\n[fuzzy]\n";
  kv_list("centers", s.fuzzy.centers);
  kv("gamma", s.fuzzy.gamma);
  kv("initial_output", s.fuzzy.initial_output);

  out += "\n[reference]\n";
  kv("amplitude_m", s.reference.amplitude_m);
  kv("frequency_rad_s", s.reference.frequency_rad_s);

  out += "\n[sim]\n";
  kv("duration_s", s.duration_s);
  kv("controller_rate_hz", s.controller_rate_hz);
  kv("plant_rate_hz", s.plant_rate_hz);
  kv("transient_fraction", s.transient_fraction);
  kv_list("initial_state", s.initial_state);
  return out;
}

bool operator==(const Scenario& a, const Scenario& b) {
  const auto& pa = a.plant;
  const auto& pb = b.plant;
  const auto& ba = a.deadzone_bounds;
  const auto& bb = b.deadzone_bounds;
  return pa.supply.base_pa == pb.supply.base_pa &&
         pa.supply.modulation == pb.supply.modulation &&
         pa.density_kgm3 == pb.density_kgm3 &&
         pa.discharge_coeff == pb.discharge_coeff &&
         pa.orifice_gradient_m == pb.orifice_gradient_m &&
         pa.ram_area_m2 == pb.ram_area_m2 &&
         pa.leakage_m3_per_spa == pb.leakage_m3_per_spa &&
         pa.bulk_modulus_pa == pb.bulk_modulus_pa &&
         pa.volume_m3 == pb.volume_m3 && pa.mass_kg == pb.mass_kg &&
         pa.damping_nspm == pb.damping_nspm &&
         pa.spring_npm == pb.spring_npm &&
         pa.valve.delta_l == pb.valve.delta_l &&
         pa.valve.delta_r == pb.valve.delta_r &&
         pa.valve.m_l == pb.valve.m_l && pa.valve.m_r == pb.valve.m_r &&
         ba.delta_l_min == bb.delta_l_min && ba.delta_l_max == bb.delta_l_max &&
         ba.delta_r_min == bb.delta_r_min && ba.delta_r_max == bb.delta_r_max &&
         ba.m_l_min == bb.m_l_min && ba.m_l_max == bb.m_l_max &&
         ba.m_r_min == bb.m_r_min && ba.m_r_max == bb.m_r_max &&
         a.controller.lambda == b.controller.lambda &&
         a.controller.eta == b.controller.eta &&
         a.controller.phi == b.controller.phi &&
         a.controller.switching == b.controller.switching &&
         a.controller.bm_hat == b.controller.bm_hat &&
         a.controller.beta == b.controller.beta &&
         a.controller.drift_error_bound == b.controller.drift_error_bound &&
         a.controller.compensator_on == b.controller.compensator_on &&
         a.controller.fixed_gain == b.controller.fixed_gain &&
         a.fuzzy.centers == b.fuzzy.centers &&
         a.fuzzy.gamma == b.fuzzy.gamma &&
         a.fuzzy.initial_output == b.fuzzy.initial_output &&
         a.reference.amplitude_m == b.reference.amplitude_m &&
         a.reference.frequency_rad_s == b.reference.frequency_rad_s &&
         a.duration_s == b.duration_s &&
         a.controller_rate_hz == b.controller_rate_hz &&
         a.plant_rate_hz == b.plant_rate_hz &&
         a.transient_fraction == b.transient_fraction &&
         a.initial_state == b.initial_state;
}

}  // namespace afsmc
