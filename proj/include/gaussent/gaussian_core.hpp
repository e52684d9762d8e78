#pragma once

#include <vector>

#include "gaussent/types.hpp"

namespace gaussent {

/// Absolute eigenvalue tolerance used by check_physical unless overridden.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Mean atomic quadratures and their covariance after a light segment has
/// been measured and discarded.
///
/// The covariance uses gamma_ij = 2 Re<dy_i dy_j>, so a coherent state has
/// the identity covariance. `elapsed_eta_t` is the accumulated depumping
/// eta*t that sets the mean-spin decay exp(-eta t) and the noise factor xi.
struct AtomicState {
  Vec4 mean = Vec4::Zero();
  Mat4 cov = Mat4::Identity();
  double elapsed_eta_t = 0.0;

  static AtomicState coherent() { return {}; }
};

/// Two atomic ensembles plus one light segment.
struct CanonicalState {
  Vec6 mean = Vec6::Zero();
  Mat6 cov = Mat6::Identity();

  static CanonicalState vacuum() { return {}; }

  /// Embeds `atoms` next to a fresh coherent light segment (identity
  /// covariance, zero mean, no atom-light correlation).
  static CanonicalState with_fresh_light(const AtomicState& atoms);

  Mat4 atomic_cov() const { return cov.topLeftCorner<4, 4>(); }
  Vec4 atomic_mean() const { return mean.head<4>(); }
};

/// Block-diagonal symplectic form with [[0,1],[-1,0]] per mode.
Eigen::MatrixXd symplectic_form(int modes);

/// Orthonormal map from (x1, p1, x2, p2) to (x+, x-, p+, p-) with
/// x+- = (x1 +- x2)/sqrt2 and p+- = (p1 +- p2)/sqrt2.
Mat4 sum_diff_transform();

/// Commutator matrix of the (x+, x-, p+, p-) ordering, i.e. T sigma T^T.
Mat4 sum_diff_symplectic_form();

/// T cov T^T. Entries equal the unnormalized variances, e.g. entry (0,0) is
/// Var(x1 + x2) in the 2*Var convention.
Mat4 to_sum_diff_basis(const Mat4& cov);
Mat4 from_sum_diff_basis(const Mat4& cov_sd);

/// True iff every eigenvalue of cov + i*sigma is >= -tol.
/// Throws std::invalid_argument for non-square, odd-sized or non-symmetric input.
bool check_physical(const Eigen::Ref<const Eigen::MatrixXd>& cov,
                    double tol = kPhysicalityTolerance);

/// Moduli of the eigenvalue pairs +-i*nu of sigma^{-1} cov / 2, one per mode,
/// sorted ascending. The 1/2 makes the vacuum value 1/2 per mode, matching
/// the 2*Var covariance convention.
std::vector<double> symplectic_spectrum(const Eigen::Ref<const Eigen::MatrixXd>& cov);

/// Larmor rotation of the two atomic (x, p) pairs: sample 1 by +angle,
/// sample 2 by -angle. Equals exp(r t) with r the rotation generator and
/// angle = omega t.
Mat4 atomic_rotation(double angle);

/// Undoes half of the accumulated opposite rotation (angle theta/2 per
/// sample). In this frame a lossless state is diagonal in the sum/difference
/// basis.
Mat4 to_corotating_frame(const Mat4& cov, double theta);

}  // namespace gaussent
