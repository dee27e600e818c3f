#include "afsmc/deadzone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afsmc {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

DeadZoneSpec::DeadZoneSpec(double delta_l_, double delta_r_, double m_l_,
                           double m_r_)
    : delta_l(delta_l_), delta_r(delta_r_), m_l(m_l_), m_r(m_r_) {
  require(std::isfinite(delta_l) && std::isfinite(delta_r) &&
              std::isfinite(m_l) && std::isfinite(m_r),
          "DeadZoneSpec: parameters must be finite");
  require(delta_l < 0.0, "DeadZoneSpec: delta_l must be negative");
  require(delta_r > 0.0, "DeadZoneSpec: delta_r must be positive");
  require(m_l > 0.0, "DeadZoneSpec: m_l must be positive");
  require(m_r > 0.0, "DeadZoneSpec: m_r must be positive");
}

DeadZoneBounds::DeadZoneBounds(double delta_l_min_, double delta_l_max_,
                               double delta_r_min_, double delta_r_max_,
                               double m_l_min_, double m_l_max_,
                               double m_r_min_, double m_r_max_)
    : delta_l_min(delta_l_min_),
      delta_l_max(delta_l_max_),
      delta_r_min(delta_r_min_),
      delta_r_max(delta_r_max_),
      m_l_min(m_l_min_),
      m_l_max(m_l_max_),
      m_r_min(m_r_min_),
      m_r_max(m_r_max_) {
  require(delta_l_min <= delta_l_max && delta_l_max < 0.0,
          "DeadZoneBounds: need delta_l_min <= delta_l_max < 0");
  require(0.0 < delta_r_min && delta_r_min <= delta_r_max,
          "DeadZoneBounds: need 0 < delta_r_min <= delta_r_max");
  require(0.0 < m_l_min && m_l_min <= m_l_max,
          "DeadZoneBounds: need 0 < m_l_min <= m_l_max");
  require(0.0 < m_r_min && m_r_min <= m_r_max,
          "DeadZoneBounds: need 0 < m_r_min <= m_r_max");
}

double DeadZoneBounds::m_min() const { return std::min(m_l_min, m_r_min); }

double DeadZoneBounds::m_max() const { return std::max(m_l_max, m_r_max); }

bool DeadZoneBounds::contains(const DeadZoneSpec& spec) const {
  return delta_l_min <= spec.delta_l && spec.delta_l <= delta_l_max &&
         delta_r_min <= spec.delta_r && spec.delta_r <= delta_r_max &&
         m_l_min <= spec.m_l && spec.m_l <= m_l_max && m_r_min <= spec.m_r &&
         spec.m_r <= m_r_max;
}

double apply(const DeadZoneSpec& spec, double u) {
  if (u <= spec.delta_l) return spec.m_l * (u - spec.delta_l);
  if (u >= spec.delta_r) return spec.m_r * (u - spec.delta_r);
  return 0.0;
}

double slope(const DeadZoneSpec& spec, double u) {
  return u <= 0.0 ? spec.m_l : spec.m_r;
}

double disturbance(const DeadZoneSpec& spec, double u) {
  if (u <= spec.delta_l) return spec.delta_l;
  if (u >= spec.delta_r) return spec.delta_r;
  return u;
}

double disturbance_bound(const DeadZoneBounds& bounds) {
  return std::max(-bounds.delta_l_min, bounds.delta_r_max);
}

}  // namespace afsmc
