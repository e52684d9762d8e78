#include "gaussent/propagator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace gaussent {

void SliceCoupling::validate() const {
  if (!std::isfinite(kappa_tau) || kappa_tau < 0.0) {
    throw std::invalid_argument("SliceCoupling: kappa_tau must be finite and >= 0");
  }
  if (!(eta_tau >= 0.0 && eta_tau < 1.0)) {
    throw std::invalid_argument("SliceCoupling: eta_tau must lie in [0,1), got " + std::to_string(eta_tau));
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("SliceCoupling: epsilon must lie in [0,1), got " + std::to_string(epsilon));
  }
}

SliceCoupling SliceCoupling::at(const PhysicalParams& p, double elapsed_eta_t) {
  SliceCoupling s;
  s.kappa_tau = std::sqrt(p.kappa_sq_tau0() * std::exp(-elapsed_eta_t));
  s.eta_tau = p.eta_tau();
  s.epsilon = p.epsilon();
  return s;
}

double noise_factor(double elapsed_eta_t) { return 2.0 * std::exp(elapsed_eta_t); }

NoiseInjection NoiseInjection::for_sample(Sample sample, const SliceCoupling& slice, double xi) {
  NoiseInjection n;
  const int x = sample == Sample::One ? kX1 : kX2;
  const int p = sample == Sample::One ? kP1 : kP2;
  n.loss(x) = slice.eta_tau;
  n.loss(p) = slice.eta_tau;
  n.loss(kXL) = slice.epsilon;
  n.loss(kPL) = slice.epsilon;
  n.noise(x) = xi;
  n.noise(p) = xi;
  n.noise(kXL) = 1.0;
  n.noise(kPL) = 1.0;
  return n;
}

Mat6 interaction_matrix(Sample sample, double kappa_tau) {
  if (!std::isfinite(kappa_tau) || kappa_tau < 0.0) {
    throw std::invalid_argument("interaction_matrix: kappa_tau must be finite and >= 0");
  }
  Mat6 s = Mat6::Identity();
  if (sample == Sample::One) {
    s(kX1, kPL) = kappa_tau;
    s(kXL, kP1) = kappa_tau;
  } else {
    s(kX2, kPL) = kappa_tau;
    s(kXL, kP2) = kappa_tau;
  }
  return s;
}

Mat6 interaction_matrix(int sample, double kappa_tau) {
  if (sample != 1 && sample != 2) {
    throw std::invalid_argument("interaction_matrix: sample index must be 1 or 2, got " + std::to_string(sample));
  }
  return interaction_matrix(static_cast<Sample>(sample), kappa_tau);
}

Mat6 rotation_matrix(double omega_tau) {
  Mat6 r = Mat6::Identity();
  r.topLeftCorner<4, 4>() = atomic_rotation(omega_tau);
  return r;
}

namespace {

Vec6 attenuation(const NoiseInjection& n) { return (Vec6::Ones() - n.loss).cwiseSqrt(); }

Vec6 decohere_mean(const Vec6& mean, const SliceCoupling& slice, Sample sample) {
  const NoiseInjection n = NoiseInjection::for_sample(sample, slice, 2.0);
  return attenuation(n).cwiseProduct(interaction_matrix(sample, slice.kappa_tau) * mean);
}

}  // namespace

Vec4 homodyne_gain(const Mat6& cov, double pinv_tol) {
  const double g = cov(kXL, kXL);
  if (!(g > pinv_tol)) return Vec4::Zero();
  return cov.block<4, 1>(0, kXL) / g;
}

CanonicalState apply_decoherence(const CanonicalState& state, const SliceCoupling& slice, double xi,
                                 Sample sample) {
  slice.validate();
  if (!(xi >= 2.0)) throw std::invalid_argument("apply_decoherence: xi must be >= 2");
  const NoiseInjection n = NoiseInjection::for_sample(sample, slice, xi);
  const Mat6 s = interaction_matrix(sample, slice.kappa_tau);
  const Vec6 dbar = attenuation(n);

  CanonicalState out;
  out.cov = dbar.asDiagonal() * (s * state.cov * s.transpose()) * dbar.asDiagonal();
  out.cov.diagonal() += n.loss.cwiseProduct(n.noise);
  out.mean = decohere_mean(state.mean, slice, sample);
  return out;
}

AtomicState homodyne_condition(const CanonicalState& state, double outcome_deviation, double elapsed_eta_t,
                               double pinv_tol) {
  if (std::isnan(outcome_deviation)) throw std::invalid_argument("homodyne_condition: outcome is NaN");
  AtomicState out;
  out.elapsed_eta_t = elapsed_eta_t;
  out.cov = state.atomic_cov();
  out.mean = state.atomic_mean();
  const Vec4 gain = homodyne_gain(state.cov, pinv_tol);
  out.cov -= gain * state.cov.block<1, 4>(kXL, 0);
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  out.mean += gain * outcome_deviation;
  return out;
}

double GaussianOutcomes::next(double light_variance) {
  const double var = model_ == OutcomeModel::Exact ? 0.5 * light_variance : 0.5;
  std::normal_distribution<double> normal(0.0, std::sqrt(var));
  return normal(rng_);
}

double RecordedOutcomes::next(double) {
  if (index_ >= deviations_.size()) throw std::out_of_range("RecordedOutcomes: record exhausted");
  return deviations_[index_++];
}

Vec6 propagate_mean(const Vec4& atomic_mean, const SliceCoupling& slice, double omega_tau) {
  Vec6 m = Vec6::Zero();
  m.head<4>() = atomic_mean;
  m = decohere_mean(m, slice, Sample::One);
  m = decohere_mean(m, slice, Sample::Two);
  return rotation_matrix(omega_tau) * m;
}

StepResult step(const AtomicState& state, const PhysicalParams& params, OutcomeSource& outcomes) {
  const SliceCoupling slice = SliceCoupling::at(params, state.elapsed_eta_t);
  const double xi = noise_factor(state.elapsed_eta_t);

  CanonicalState s = CanonicalState::with_fresh_light(state);
  s = apply_decoherence(s, slice, xi, Sample::One);
  s = apply_decoherence(s, slice, xi, Sample::Two);
  const Mat6 r = rotation_matrix(params.omega * params.tau);
  s.cov = r * s.cov * r.transpose();
  s.mean = r * s.mean;

  StepResult result;
  result.light_variance = s.cov(kXL, kXL);
  result.gain = homodyne_gain(s.cov);
  result.deviation = outcomes.next(result.light_variance);
  result.reading = result.deviation + s.mean(kXL);
  result.state = homodyne_condition(s, result.deviation, state.elapsed_eta_t + params.eta_tau());
  return result;
}

}  // namespace gaussent
