#pragma once

#include <vector>

#include "gaussent/types.hpp"

namespace gaussent {

/// Gaussian entanglement of formation of a symmetric two-mode state with EPR
/// product `delta`, in ebits. Zero for delta >= 1. Throws std::domain_error
/// for delta <= 0.
double geof(double delta);

/// Small-delta form log2(1/delta) + 1/ln2 - 2.
double geof_small_delta(double delta);

/// EPR product Delta = sqrt(Var(x1 - x2) Var(p1 + p2)) of a 4x4 atomic
/// covariance in the frame where the (x-, p+) pair is uncorrelated, i.e.
/// sqrt(det) of that 2x2 block. Equals sqrt(g22_sd * g33_sd) whenever the
/// sum/difference block is diagonal and is unchanged by opposite Larmor
/// rotations. A slightly negative determinant is clamped to zero with a
/// warning on stderr.
double epr_delta(const Mat4& cov);

/// p2 -> -p2.
Mat4 partial_transpose(const Mat4& cov);

/// Logarithmic negativity -sum_k log2(min(1, 2|lambda_k|)) over the four
/// eigenvalues lambda of sigma^{-1} gamma^{T_A} / 2.
double log_negativity(const Mat4& cov);

/// Fast path for covariances diagonal in the sum/difference basis. Throws
/// std::domain_error for non-positive entries.
double log_neg_diagonal_sd(double g11, double g22, double g33, double g44);

/// Largest |off-diagonal| coupling between the (x-, p+) and (x+, p-) pairs,
/// relative to the largest diagonal sum/difference entry.
double sample_asymmetry(const Mat4& cov);

/// GEoF of `delta` is reported as a symmetric-state measure only below this asymmetry.
inline constexpr double kGeofSymmetryTolerance = 1e-6;

struct EntanglementReport {
  double epr_delta = 1.0;
  double geof = 0.0;
  double log_neg = 0.0;
  std::vector<double> symplectic_pt_spectrum;
  bool geof_applicable = true;  // sample_asymmetry <= kGeofSymmetryTolerance
};

EntanglementReport analyze_entanglement(const Mat4& cov);

}  // namespace gaussent
