#pragma once

namespace gaussent {

/// Rates and dimensionless couplings of the probing scheme.
///
/// Time units are arbitrary but shared: eta, kappa_sq_rate and omega are
/// rates in 1/time, tau is a duration. With depumping present the coupling is
/// tied to the optical density through kappa_sq_rate = eta * alpha0.
struct PhysicalParams {
  double alpha0 = 0.0;               // resonant optical density
  double eta = 0.0;                  // depumping rate
  double kappa_sq_rate = 0.0;        // interaction rate kappa~^2
  double omega = 0.0;                // Larmor angular frequency
  double gamma_over_detuning = 0.0;  // Gamma / Delta_det
  double tau = 1e-3;                 // light slice duration

  /// Photon absorption probability per sample traversal, alpha0 (Gamma/Delta)^2.
  double epsilon() const { return alpha0 * gamma_over_detuning * gamma_over_detuning; }

  /// kappa_tau^2 at t = 0.
  double kappa_sq_tau0() const { return kappa_sq_rate * tau; }
  double eta_tau() const { return eta * tau; }

  /// Throws std::invalid_argument on negative or non-finite entries,
  /// epsilon outside [0,1), eta*tau outside [0,1), tau <= 0, or
  /// kappa_sq_rate inconsistent with eta*alpha0 when both are set.
  void validate() const;

  /// Lossless probing with a free interaction rate.
  static PhysicalParams lossless(double kappa_sq_rate, double omega, double tau);

  /// Depumping-limited probing: kappa_sq_rate = eta * alpha0.
  static PhysicalParams from_optical_depth(double alpha0, double eta, double omega,
                                           double gamma_over_detuning, double tau);
};

/// Gamma = 5 MHz and Delta_det = 1000 MHz.
inline constexpr double kDefaultGammaOverDetuning = 0.005;

/// Largest slice duration keeping kappa_tau^2 <= 1e-3, eta_tau <= 1e-4 and
/// omega*tau <= 1e-2, and never longer than t_end / 100.
double recommended_tau(const PhysicalParams& p, double t_end);

}  // namespace gaussent
