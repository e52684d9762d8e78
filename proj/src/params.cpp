#include "gaussent/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gaussent {

namespace {

void require_non_negative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string("PhysicalParams: ") + name + " must be finite and >= 0, got " +
                                std::to_string(v));
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require_non_negative(alpha0, "alpha0");
  require_non_negative(eta, "eta");
  require_non_negative(kappa_sq_rate, "kappa_sq_rate");
  require_non_negative(omega, "omega");
  require_non_negative(gamma_over_detuning, "gamma_over_detuning");
  if (!std::isfinite(tau) || tau <= 0.0) throw std::invalid_argument("PhysicalParams: tau must be > 0");
  if (epsilon() >= 1.0) throw std::invalid_argument("PhysicalParams: epsilon = alpha0 (Gamma/Delta)^2 must be < 1");
  if (eta_tau() >= 1.0) throw std::invalid_argument("PhysicalParams: eta*tau must be < 1");
  if (eta > 0.0 && alpha0 > 0.0) {
    const double expected = eta * alpha0;
    if (std::abs(kappa_sq_rate - expected) > 1e-12 * std::max(1.0, expected)) {
      throw std::invalid_argument("PhysicalParams: kappa_sq_rate must equal eta*alpha0 when both are set");
    }
  }
}

PhysicalParams PhysicalParams::lossless(double kappa_sq_rate, double omega, double tau) {
  PhysicalParams p;
  p.kappa_sq_rate = kappa_sq_rate;
  p.omega = omega;
  p.tau = tau;
  p.validate();
  return p;
}

PhysicalParams PhysicalParams::from_optical_depth(double alpha0, double eta, double omega,
                                                  double gamma_over_detuning, double tau) {
  PhysicalParams p;
  p.alpha0 = alpha0;
  p.eta = eta;
  p.kappa_sq_rate = eta * alpha0;
  p.omega = omega;
  p.gamma_over_detuning = gamma_over_detuning;
  p.tau = tau;
  p.validate();
  return p;
}

double recommended_tau(const PhysicalParams& p, double t_end) {
  double tau = t_end > 0.0 ? t_end / 100.0 : 1.0;
  if (p.kappa_sq_rate > 0.0) tau = std::min(tau, 1e-3 / p.kappa_sq_rate);
  if (p.eta > 0.0) tau = std::min(tau, 1e-4 / p.eta);
  if (p.omega > 0.0) tau = std::min(tau, 1e-2 / p.omega);
  return tau;
}

}  // namespace gaussent
