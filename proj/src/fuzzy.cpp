#include "afsmc/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afsmc {

MembershipFamily::MembershipFamily(std::vector<double> centers)
    : centers_(std::move(centers)) {
  if (centers_.empty())
    throw std::invalid_argument("MembershipFamily: need at least one center");
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (!std::isfinite(centers_[i]))
      throw std::invalid_argument("MembershipFamily: centers must be finite");
    if (i > 0 && !(centers_[i - 1] < centers_[i]))
      throw std::invalid_argument(
          "MembershipFamily: centers must be strictly increasing");
  }
}

RuleShape MembershipFamily::shape(std::size_t rule) const {
  if (rule >= centers_.size())
    throw std::out_of_range("MembershipFamily: rule index out of range");
  if (rule == 0 || rule + 1 == centers_.size())
    return RuleShape::trapezoidal_shoulder;
  return RuleShape::triangular;
}

void MembershipFamily::firing_weights(double u_hat,
                                      std::span<double> psi) const {
  if (psi.size() != centers_.size())
    throw std::invalid_argument("firing_weights: output size mismatch");
  std::fill(psi.begin(), psi.end(), 0.0);

  const std::size_t n = centers_.size();
  if (u_hat <= centers_.front()) {
    psi[0] = 1.0;
    return;
  }
  if (u_hat >= centers_.back()) {
    psi[n - 1] = 1.0;
    return;
  }
  const auto hi = std::upper_bound(centers_.begin(), centers_.end(), u_hat);
  const auto k = static_cast<std::size_t>(hi - centers_.begin());  // 1..n-1
  const double lo_c = centers_[k - 1];
  const double hi_c = centers_[k];
  const double w_hi = (u_hat - lo_c) / (hi_c - lo_c);
  psi[k - 1] = 1.0 - w_hi;
  psi[k] = w_hi;

  double total = psi[k - 1] + psi[k];
  if (!(total > 0.0))
    throw std::runtime_error("firing_weights: degenerate partition");
  psi[k - 1] /= total;
  psi[k] /= total;
}

std::vector<double> MembershipFamily::firing_weights(double u_hat) const {
  std::vector<double> psi(centers_.size());
  firing_weights(u_hat, psi);
  return psi;
}

FuzzyCompensator::FuzzyCompensator(MembershipFamily family, double gamma)
    : FuzzyCompensator(std::move(family), gamma, {}) {}

FuzzyCompensator::FuzzyCompensator(MembershipFamily family, double gamma,
                                   std::vector<double> initial_outputs)
    : family_(std::move(family)),
      gamma_(gamma),
      d_hat_(std::move(initial_outputs)),
      psi_(family_.size(), 0.0) {
  if (!(gamma_ >= 0.0) || !std::isfinite(gamma_))
    throw std::invalid_argument("FuzzyCompensator: gamma must be >= 0");
  if (d_hat_.empty()) d_hat_.assign(family_.size(), 0.0);
  if (d_hat_.size() != family_.size())
    throw std::invalid_argument(
        "FuzzyCompensator: initial outputs must match rule count");
  for (double v : d_hat_)
    if (!std::isfinite(v))
      throw std::invalid_argument(
          "FuzzyCompensator: initial outputs must be finite");
}

double FuzzyCompensator::estimate(double u_hat) const {
  family_.firing_weights(u_hat, psi_);
  double acc = 0.0;
  for (std::size_t r = 0; r < d_hat_.size(); ++r) acc += d_hat_[r] * psi_[r];
  return acc;
}

bool FuzzyCompensator::adapt(double s, double u_hat, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("adapt: dt must be positive");
  if (!std::isfinite(s) || !std::isfinite(u_hat)) return false;
  if (gamma_ == 0.0 || s == 0.0) return true;  // nothing to update
  family_.firing_weights(u_hat, psi_);
  const double step = gamma_ * s * dt;
  for (std::size_t r = 0; r < d_hat_.size(); ++r) {
    if (psi_[r] != 0.0) d_hat_[r] -= step * psi_[r];
  }
  return true;
}

}  // namespace afsmc
