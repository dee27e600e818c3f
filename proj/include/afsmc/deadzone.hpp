#pragma once

namespace afsmc {

/// Non-symmetric dead-zone: zero output inside (delta_l, delta_r), linear
/// with slope m_l / m_r outside. Validation is eager; invalid parameters
/// throw std::invalid_argument instead of being clamped.
struct DeadZoneSpec {
  double delta_l;  // left break point, V (< 0)
  double delta_r;  // right break point, V (> 0)
  double m_l;      // left slope, output units per V (> 0)
  double m_r;      // right slope, output units per V (> 0)

  DeadZoneSpec(double delta_l, double delta_r, double m_l, double m_r);
};

/// Admissible ranges for an unknown dead-zone: break points bounded with
/// known signs, slopes positive and bounded.
struct DeadZoneBounds {
  double delta_l_min, delta_l_max;  // delta_l_min <= delta_l_max < 0
  double delta_r_min, delta_r_max;  // 0 < delta_r_min <= delta_r_max
  double m_l_min, m_l_max;          // 0 < min <= max
  double m_r_min, m_r_max;

  DeadZoneBounds(double delta_l_min, double delta_l_max, double delta_r_min,
                 double delta_r_max, double m_l_min, double m_l_max,
                 double m_r_min, double m_r_max);

  double m_min() const;  // min over both sides
  double m_max() const;  // max over both sides
  bool contains(const DeadZoneSpec& spec) const;
};

/// Dead-zone output for input u.
double apply(const DeadZoneSpec& spec, double u);

/// Active slope m(u): m_l for u <= 0, m_r for u > 0.
double slope(const DeadZoneSpec& spec, double u);

/// Bounded disturbance d(u) of the decomposition
/// apply(u) == slope(u) * (u - disturbance(u)).
double disturbance(const DeadZoneSpec& spec, double u);

/// Tight bound on |disturbance(u)| over all specs within the bounds:
/// max{-delta_l_min, delta_r_max}.
double disturbance_bound(const DeadZoneBounds& bounds);

}  // namespace afsmc
