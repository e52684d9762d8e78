#pragma once

#include <cstddef>
#include <span>

#include "gaussent/gaussian_core.hpp"
#include "gaussent/params.hpp"
#include "gaussent/rng.hpp"

namespace gaussent {

enum class Sample : int { One = 1, Two = 2 };

/// Per-slice couplings seen by one light segment.
struct SliceCoupling {
  double kappa_tau = 0.0;  // sqrt(kappa~^2 tau exp(-eta t))
  double eta_tau = 0.0;    // depumping probability eta*tau
  double epsilon = 0.0;    // photon absorption probability per sample

  /// Throws std::invalid_argument if kappa_tau < 0 or eta_tau, epsilon are
  /// outside [0, 1).
  void validate() const;

  /// Coupling for the slice starting at accumulated depumping `elapsed_eta_t`.
  static SliceCoupling at(const PhysicalParams& p, double elapsed_eta_t);
};

/// Diagonals of the loss matrix D_i and the noise covariance gamma_noise,i
/// injected when a light segment traverses sample i.
struct NoiseInjection {
  Vec6 loss = Vec6::Zero();
  Vec6 noise = Vec6::Zero();

  static NoiseInjection for_sample(Sample sample, const SliceCoupling& slice, double xi);
};

/// Noise factor xi(t) = N_at / <J_x(t)> = 2 exp(eta t).
double noise_factor(double elapsed_eta_t);

/// Faraday interaction of the light segment with one sample:
/// x_Ai += kappa p_L and x_L += kappa p_Ai.
Mat6 interaction_matrix(Sample sample, double kappa_tau);
/// Same, with the sample given as 1 or 2; other values throw std::invalid_argument.
Mat6 interaction_matrix(int sample, double kappa_tau);

/// Block-diagonal rotation: sample 1 by +omega_tau, sample 2 by -omega_tau,
/// light untouched.
Mat6 rotation_matrix(double omega_tau);

/// gamma -> Dbar S gamma S^T Dbar + D gamma_noise with Dbar = sqrt(1 - D).
/// Means follow Dbar S <y>.
CanonicalState apply_decoherence(const CanonicalState& state, const SliceCoupling& slice, double xi,
                                 Sample sample);

/// Perfect homodyne detection of x_L followed by discarding the light.
///
/// The atomic block is replaced by its Schur complement with respect to the
/// measured quadrature; means shift by gamma_c (pi gamma_b pi)^- (chi, 0)^T.
/// When gamma_b(x_L, x_L) <= pinv_tol the pseudo-inverse is zero and the
/// state is returned unchanged. A NaN outcome throws std::invalid_argument.
AtomicState homodyne_condition(const CanonicalState& state, double outcome_deviation,
                               double elapsed_eta_t = 0.0, double pinv_tol = 1e-14);

/// Source of homodyne outcome deviations chi = x_L - <x_L>.
class OutcomeSource {
 public:
  virtual ~OutcomeSource() = default;
  /// `light_variance` is gamma_55 of the segment just before detection.
  virtual double next(double light_variance) = 0;
};

/// How the simulated deviation chi is distributed.
enum class OutcomeModel {
  HalfVariance,  // N(0, 1/2), the gamma_55 ~ 1 approximation
  Exact,         // N(0, gamma_55 / 2)
};

class GaussianOutcomes final : public OutcomeSource {
 public:
  explicit GaussianOutcomes(std::uint64_t seed, OutcomeModel model = OutcomeModel::HalfVariance)
      : rng_(seed), model_(model) {}
  double next(double light_variance) override;

 private:
  CounterRng rng_;
  OutcomeModel model_;
};

/// Replays a recorded deviation stream; throws std::out_of_range when exhausted.
class RecordedOutcomes final : public OutcomeSource {
 public:
  explicit RecordedOutcomes(std::span<const double> deviations) : deviations_(deviations) {}
  double next(double light_variance) override;
  std::size_t consumed() const { return index_; }

 private:
  std::span<const double> deviations_;
  std::size_t index_ = 0;
};

/// Always returns chi = 0: covariance-only propagation.
class NullOutcomes final : public OutcomeSource {
 public:
  double next(double) override { return 0.0; }
};

/// Kalman gain gamma_c (pi gamma_b pi)^- applied to chi, zero when
/// gamma_b(x_L, x_L) <= pinv_tol.
Vec4 homodyne_gain(const Mat6& cov, double pinv_tol = 1e-14);

struct StepResult {
  AtomicState state;
  Vec4 gain = Vec4::Zero();
  double deviation = 0.0;      // chi
  double reading = 0.0;        // actual detector read chi~ = chi + <x_L>
  double light_variance = 0.0; // gamma_55 before detection
};

/// One light slice: loss+interaction with sample 1, then sample 2, then the
/// Larmor rotation, then detection of x_L. Advances elapsed_eta_t by eta*tau.
StepResult step(const AtomicState& state, const PhysicalParams& params, OutcomeSource& outcomes);

/// Mean-vector part of `step` for a given slice, before detection.
/// Returns the 6-vector (atoms, light) after interaction, loss and rotation.
Vec6 propagate_mean(const Vec4& atomic_mean, const SliceCoupling& slice, double omega_tau);

}  // namespace gaussent
