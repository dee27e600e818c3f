#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace afsmc {

enum class RuleShape { triangular, trapezoidal_shoulder };

/// Strong fuzzy partition over a set of sorted centers: interior rules are
/// triangular with feet at the adjacent centers, the two extreme rules are
/// trapezoidal shoulders saturating outward. Exactly one or two rules fire
/// at any input and the normalized firing strengths sum to 1.
class MembershipFamily {
 public:
  explicit MembershipFamily(std::vector<double> centers);

  std::size_t size() const { return centers_.size(); }
  const std::vector<double>& centers() const { return centers_; }
  RuleShape shape(std::size_t rule) const;

  /// Normalized firing strengths; psi.size() must equal size().
  void firing_weights(double u_hat, std::span<double> psi) const;
  std::vector<double> firing_weights(double u_hat) const;

 private:
  std::vector<double> centers_;
};

/// Zero-order TSK estimator d_hat(u_hat) = D'Psi(u_hat) with the
/// gradient-style update D <- D - gamma*s*Psi*dt. One simulation owns one
/// instance (single writer); instances are cheap to copy.
class FuzzyCompensator {
 public:
  FuzzyCompensator(MembershipFamily family, double gamma);
  FuzzyCompensator(MembershipFamily family, double gamma,
                   std::vector<double> initial_outputs);

  double estimate(double u_hat) const;

  /// Explicit-Euler step of the adaptation law at the controller period.
  /// Rejected (returns false, state untouched) if s or u_hat is non-finite.
  bool adapt(double s, double u_hat, double dt);

  const MembershipFamily& family() const { return family_; }
  const std::vector<double>& outputs() const { return d_hat_; }
  double gamma() const { return gamma_; }

 private:
  MembershipFamily family_;
  double gamma_;
  std::vector<double> d_hat_;
  mutable std::vector<double> psi_;  // scratch; fine under the single-writer contract
};

}  // namespace afsmc
