#include "gaussent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gaussent/gaussian_core.hpp"

namespace gaussent {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

double geof(double delta) {
  if (!(delta > 0.0)) throw std::domain_error("geof: delta must be > 0");
  if (delta >= 1.0) return 0.0;
  const double s = std::sqrt(delta);
  const double c_plus = (1.0 / s + s) * (1.0 / s + s) / 4.0;
  const double c_minus = (1.0 / s - s) * (1.0 / s - s) / 4.0;
  return xlog2x(c_plus) - xlog2x(c_minus);
}

double geof_small_delta(double delta) {
  if (!(delta > 0.0)) throw std::domain_error("geof_small_delta: delta must be > 0");
  return std::log2(1.0 / delta) + 1.0 / std::numbers::ln2 - 2.0;
}

double epr_delta(const Mat4& cov) {
  const Mat4 sd = to_sum_diff_basis(cov);
  const double det = sd(kXMinus, kXMinus) * sd(kPPlus, kPPlus) - sd(kXMinus, kPPlus) * sd(kPPlus, kXMinus);
  if (det < 0.0) {
    std::cerr << "warning: epr_delta: negative EPR variance product " << det << " clamped to zero\n";
    return 0.0;
  }
  return std::sqrt(det);
}

Mat4 partial_transpose(const Mat4& cov) {
  Mat4 flip = Mat4::Identity();
  flip(kP2, kP2) = -1.0;
  return flip * cov * flip;
}

double log_negativity(const Mat4& cov) {
  double sum = 0.0;
  for (double nu : symplectic_spectrum(partial_transpose(cov))) {
    // each modulus belongs to a +-i pair
    sum -= 2.0 * std::log2(std::min(1.0, 2.0 * nu));
  }
  return sum;
}

double log_neg_diagonal_sd(double g11, double g22, double g33, double g44) {
  if (!(g11 > 0.0 && g22 > 0.0 && g33 > 0.0 && g44 > 0.0)) {
    throw std::domain_error("log_neg_diagonal_sd: entries must be > 0");
  }
  const double p = g11 * g44;
  const double q = g22 * g33;
  // (p + q +- |p - q|) / 8 without the cancellation
  const double lambda_hi = std::sqrt(std::max(p, q) / 4.0);
  const double lambda_lo = std::sqrt(std::min(p, q) / 4.0);
  return -2.0 * (std::log2(std::min(1.0, 2.0 * lambda_hi)) + std::log2(std::min(1.0, 2.0 * lambda_lo)));
}

double sample_asymmetry(const Mat4& cov) {
  const Mat4 sd = to_sum_diff_basis(cov);
  const double scale = sd.diagonal().cwiseAbs().maxCoeff();
  double cross = 0.0;
  for (int i : {kXMinus, kPPlus}) {
    for (int j : {kXPlus, kPMinus}) cross = std::max(cross, std::abs(sd(i, j)));
  }
  return scale > 0.0 ? cross / scale : cross;
}

EntanglementReport analyze_entanglement(const Mat4& cov) {
  EntanglementReport r;
  r.epr_delta = epr_delta(cov);
  r.geof = r.epr_delta > 0.0 ? geof(r.epr_delta) : std::numeric_limits<double>::infinity();
  r.symplectic_pt_spectrum = symplectic_spectrum(partial_transpose(cov));
  r.log_neg = 0.0;
  for (double nu : r.symplectic_pt_spectrum) r.log_neg -= 2.0 * std::log2(std::min(1.0, 2.0 * nu));
  r.geof_applicable = sample_asymmetry(cov) <= kGeofSymmetryTolerance;
  return r;
}

}  // namespace gaussent
