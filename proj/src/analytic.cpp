#include "gaussent/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaussent::analytic {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0)) throw std::domain_error(std::string(what) + " must be >= 0");
}

}  // namespace

std::pair<double, double> a_plus_minus(double kappa_sq_t, double theta) {
  require_non_negative(kappa_sq_t, "a_plus_minus: kappa_sq_t");
  require_non_negative(theta, "a_plus_minus: theta");
  const double mod = kappa_sq_t * sinc(theta);
  return {1.0 + kappa_sq_t + mod, 1.0 + kappa_sq_t - mod};
}

double delta_sq(double kappa_sq_t, double theta) {
  require_non_negative(kappa_sq_t, "delta_sq: kappa_sq_t");
  require_non_negative(theta, "delta_sq: theta");
  const double s = kappa_sq_t * sinc(theta);
  const double base = 1.0 + kappa_sq_t;
  return 1.0 / ((base - s) * (base + s));
}

SumDiffDiagonal lossy_norot_covariances(double alpha0, double eta_t) {
  require_non_negative(alpha0, "lossy_norot_covariances: alpha0");
  require_non_negative(eta_t, "lossy_norot_covariances: eta_t");
  SumDiffDiagonal d;
  const double grow = std::exp(eta_t);
  d.g11 = std::exp(-eta_t) * (std::exp(2.0 * eta_t) + 2.0 * alpha0 * eta_t);
  d.g22 = grow;
  d.g44 = grow;
  const double delta = std::sqrt(1.0 + 4.0 * alpha0);
  const double x = delta * eta_t;
  if (eta_t < 1e-12) {
    // first order: g33 ~ 1 + (1 - 2 alpha0) eta t
    d.g33 = 1.0 + (1.0 - 2.0 * alpha0) * eta_t;
  } else {
    // divide through by cosh to stay finite for large arguments
    const double th = std::tanh(x);
    d.g33 = grow * (delta + th) / (delta + (1.0 + 2.0 * alpha0) * th);
  }
  return d;
}

double lossy_norot_delta(double alpha0, double eta_t) {
  const SumDiffDiagonal d = lossy_norot_covariances(alpha0, eta_t);
  return std::sqrt(d.g22 * d.g33);
}

double t_crit(double alpha0, double eta) {
  if (!(alpha0 > 0.0)) throw std::domain_error("t_crit: alpha0 must be > 0");
  if (!(eta > 0.0)) throw std::domain_error("t_crit: eta must be > 0");
  // below alpha0 = 1 the stationary point is a maximum of delta, not of entanglement
  if (alpha0 < 1.0) throw std::domain_error("t_crit: alpha0 must be >= 1 for an entanglement maximum");
  const double a = alpha0;
  const double a3 = a * a * a;
  const double inner = (-2.0 * a * a - 4.0 * a3 + (1.0 + 5.0 * a + 4.0 * a * a) * std::sqrt(a3)) / a3;
  if (!(inner >= 0.0)) throw std::domain_error("t_crit: no interior maximum (negative radicand)");
  double arg = 0.5 * std::sqrt(inner);
  if (arg < 1.0 && arg > 1.0 - 1e-12) arg = 1.0;
  if (arg < 1.0) throw std::domain_error("t_crit: no interior maximum (arccosh argument < 1)");
  return std::acosh(arg) / (std::sqrt(1.0 + 4.0 * a) * eta);
}

double death_eta_t(double alpha0) {
  double peak = 0.0;
  try {
    peak = t_crit(alpha0, 1.0);
  } catch (const std::domain_error&) {
    throw std::domain_error("death_eta_t: state never becomes entangled");
  }
  auto f = [alpha0](double s) { return lossy_norot_delta(alpha0, s) - 1.0; };
  if (!(f(peak) < 0.0)) throw std::domain_error("death_eta_t: state never becomes entangled");
  double lo = peak;
  double hi = std::max(2.0 * peak, 0.5);
  while (f(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double depump_variance(double gamma0_ii, double eta_t) {
  require_non_negative(gamma0_ii, "depump_variance: gamma0");
  require_non_negative(eta_t, "depump_variance: eta_t");
  return std::exp(-eta_t) * gamma0_ii + std::sinh(eta_t);
}

double depump_recursive(double gamma0_ii, double eta_tau, long long n) {
  if (!(eta_tau >= 0.0 && eta_tau < 1.0)) throw std::domain_error("depump_recursive: eta_tau must lie in [0,1)");
  const double keep = 1.0 - eta_tau;
  double g = gamma0_ii;
  double inv_spin = 1.0;  // (1 - eta_tau)^{-(k+1)} = N_a / (2 J_x(t + tau))
  for (long long k = 0; k < n; ++k) {
    inv_spin /= keep;
    g = keep * g + eta_tau * inv_spin;
  }
  return g;
}

double depump_sum(double gamma0_ii, double eta_tau, long long n) {
  if (!(eta_tau >= 0.0 && eta_tau < 1.0)) throw std::domain_error("depump_sum: eta_tau must lie in [0,1)");
  const double keep = 1.0 - eta_tau;
  double s = 0.0;
  for (long long j = 1; j <= n; ++j) s += std::pow(keep, static_cast<double>(n - 2 * j));
  return std::pow(keep, static_cast<double>(n)) * gamma0_ii + eta_tau * s;
}

std::pair<double, double> rotated_lossy_covariances(double alpha0, double eta_t) {
  require_non_negative(alpha0, "rotated_lossy_covariances: alpha0");
  require_non_negative(eta_t, "rotated_lossy_covariances: eta_t");
  const double beta = std::sqrt(1.0 + 16.0 * alpha0);
  const double g11 = std::exp(-eta_t) * ((alpha0 + 4.0) * std::expm1(eta_t) + 1.0);
  // (E - 1) and (E + 1) with E = exp(beta eta t); scaled by 1/(E + 1)
  const double th = std::tanh(0.5 * beta * eta_t);
  const double g22 = (7.0 * th + beta) / ((1.0 + 2.0 * alpha0) * th + beta);
  return {g11, g22};
}

std::pair<double, double> rotated_lossy_expansion(double alpha0, double eta_t) {
  require_non_negative(alpha0, "rotated_lossy_expansion: alpha0");
  require_non_negative(eta_t, "rotated_lossy_expansion: eta_t");
  const double beta = std::sqrt(1.0 + 16.0 * alpha0);
  const double g11 = (1.0 - eta_t) * (1.0 + (alpha0 + 4.0) * eta_t);
  const double g22 = (2.0 + eta_t * (7.0 + beta)) / (2.0 + eta_t * (1.0 + 2.0 * alpha0 + beta));
  return {g11, g22};
}

}  // namespace gaussent::analytic
