#pragma once

#include <utility>

namespace gaussent::analytic {

/// Accumulated quantities at time t.
struct AnalyticInputs {
  double kappa_sq_t = 0.0;  // kappa~^2 t
  double theta = 0.0;       // omega t
  double alpha0 = 0.0;
  double eta_t = 0.0;
};

/// Lossless squeezing factors a+- = 1 + k2 +- (k2/theta) sin(theta).
/// Below theta = 1e-8 the series limit sin(theta)/theta -> 1 - theta^2/6 is used.
std::pair<double, double> a_plus_minus(double kappa_sq_t, double theta);

/// EPR product Delta^2 = 1 / ((1+k2)^2 - (k2^2/theta^2) sin^2 theta) = 1/(a+ a-).
double delta_sq(double kappa_sq_t, double theta);

/// Sum/difference diagonal (Var(x1+x2), Var(x1-x2), Var(p1+p2), Var(p1-p2))
/// with depumping and no rotation, photon absorption neglected.
struct SumDiffDiagonal {
  double g11 = 1.0, g22 = 1.0, g33 = 1.0, g44 = 1.0;
};
SumDiffDiagonal lossy_norot_covariances(double alpha0, double eta_t);

/// sqrt(g22 * g33) of lossy_norot_covariances.
double lossy_norot_delta(double alpha0, double eta_t);

/// Time of maximal entanglement without rotation. Throws std::domain_error
/// when the arccosh argument is below 1 or alpha0 <= 0 (no interior maximum).
double t_crit(double alpha0, double eta);

/// Smallest eta*t > eta_t_peak at which lossy_norot_delta reaches 1 again.
/// Throws std::domain_error if the state never becomes entangled.
double death_eta_t(double alpha0);

/// e^{-eta t} gamma0 + sinh(eta t).
double depump_variance(double gamma0_ii, double eta_t);

/// n iterations of gamma <- (1 - eta_tau) gamma + eta_tau (1 - eta_tau)^{-(k+1)}.
double depump_recursive(double gamma0_ii, double eta_tau, long long n);

/// Closed sum (1-eta_tau)^n gamma0 + eta_tau sum_{j=1..n} (1-eta_tau)^{n-2j}.
double depump_sum(double gamma0_ii, double eta_tau, long long n);

/// Strongly rotated collective pair (x_A, p_A) with depumping, constant
/// coefficients (small eta t). beta = sqrt(1 + 16 alpha0).
std::pair<double, double> rotated_lossy_covariances(double alpha0, double eta_t);

/// First-order expansions in eta t:
/// g11 ~ (1 - eta t)(1 + (alpha0 + 4) eta t),
/// g22 ~ (2 + eta t (7 + beta)) / (2 + eta t (1 + 2 alpha0 + beta)).
std::pair<double, double> rotated_lossy_expansion(double alpha0, double eta_t);

}  // namespace gaussent::analytic
