#pragma once

#include <functional>
#include <optional>
#include <type_traits>
#include <vector>

#include "gaussent/params.hpp"
#include "gaussent/types.hpp"

namespace gaussent {

/// Coefficients of dgamma/dt = r gamma + gamma r^T + a - gamma b gamma.
/// `a` and `b` already carry the interaction rate (and any loss factors).
template <int N>
struct RiccatiCoefficients {
  using Mat = Eigen::Matrix<double, N, N>;
  Mat r = Mat::Zero();
  Mat a = Mat::Zero();
  Mat b = Mat::Zero();
};

/// A matrix Riccati problem with constant or time-dependent coefficients.
template <int N>
class RiccatiProblem {
 public:
  using Coefficients = RiccatiCoefficients<N>;
  using Mat = typename Coefficients::Mat;

  static RiccatiProblem constant(const Coefficients& c, double scale) {
    RiccatiProblem p;
    p.constant_ = c;
    p.scale_ = scale;
    return p;
  }

  static RiccatiProblem time_varying(std::function<Coefficients(double)> at, double scale) {
    RiccatiProblem p;
    p.varying_ = std::move(at);
    p.scale_ = scale;
    return p;
  }

  Coefficients at(double t) const { return varying_ ? varying_(t) : *constant_; }
  bool time_dependent() const { return static_cast<bool>(varying_); }
  /// Interaction rate kappa~^2, used to pick default step sizes.
  double scale() const { return scale_; }

  /// Optional fastest non-interaction rate (max of omega, eta).
  double other_rate = 0.0;

 private:
  std::optional<Coefficients> constant_;
  std::function<Coefficients(double)> varying_;
  double scale_ = 0.0;
};

using AtomicRiccati = RiccatiProblem<4>;
using ReducedRiccati = RiccatiProblem<2>;

template <int N>
struct RiccatiSample {
  double t = 0.0;
  Eigen::Matrix<double, N, N> gamma;
};

template <int N>
using RiccatiSeries = std::vector<RiccatiSample<N>>;

/// Rotation generator r for opposite Larmor precession of the two samples.
Mat4 rotation_generator(double omega);

/// Lossless continuous-measurement problem: a = kappa~^2 A, b = kappa~^2 B.
AtomicRiccati lossless_problem(double kappa_sq_rate, double omega);

/// Depumping and absorption: drift r - (eta/2) I, kappa^2(t) = kappa~^2 exp(-eta t),
/// xi(t) = 2 exp(eta t). Constant coefficients when eta = 0.
AtomicRiccati lossy_problem(const PhysicalParams& p);

/// Rotating-frame collective pair (x_A, p_A) in the strongly rotated regime,
/// small eta t: drift -(eta/2) I, source kappa~^2 diag(1,0) + 2 xi eta I with
/// xi = 2, kernel kappa~^2 diag(0,1). Constant coefficients.
ReducedRiccati reduced_rotating_problem(const PhysicalParams& p);

/// Step size used when the caller passes none: min(1e-3/kappa~^2, 1e-2/max(omega, eta)).
template <int N>
double default_dt(const RiccatiProblem<N>& problem, double t_end);

/// Entries beyond this magnitude abort integrate_ode.
inline constexpr double kOverflowGuard = 1e12;

/// Fixed-step classical RK4 from gamma0 to t_end. Coefficients are evaluated
/// at each stage time; gamma is symmetrized after every step. Samples are
/// kept every `record_every` steps plus the final time. dt <= 0 selects
/// default_dt. Throws NumericalError when an entry exceeds kOverflowGuard.
template <int N>
RiccatiSeries<N> integrate_ode(const RiccatiProblem<N>& problem, const std::type_identity_t<Eigen::Matrix<double, N, N>>& gamma0,
                               double t_end, double dt = 0.0, int record_every = 1);

/// Exact solution through the linear system d(W,U)/dt = [[r, a],[b, -r^T]] (W,U)
/// with (W,U)(0) = (gamma0, I): gamma(t) = W(t) U(t)^{-1}.
/// Throws std::invalid_argument for time-dependent problems and
/// NumericalError when U(t) is numerically singular.
template <int N>
Eigen::Matrix<double, N, N> solve_doubling(const RiccatiProblem<N>& problem,
                                           const std::type_identity_t<Eigen::Matrix<double, N, N>>& gamma0, double t);

/// Integrates reduced_rotating_problem(p) from the identity.
RiccatiSeries<2> solve_reduced_rotating(const PhysicalParams& p, double t_end, double dt = 0.0,
                                        int record_every = 1);

}  // namespace gaussent
