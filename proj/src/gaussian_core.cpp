#include "gaussent/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace gaussent {

CanonicalState CanonicalState::with_fresh_light(const AtomicState& atoms) {
  CanonicalState s;
  s.mean.head<4>() = atoms.mean;
  s.cov.topLeftCorner<4, 4>() = atoms.cov;
  return s;
}

Eigen::MatrixXd symplectic_form(int modes) {
  if (modes < 1) throw std::invalid_argument("symplectic_form: modes must be >= 1");
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    sigma(2 * k, 2 * k + 1) = 1.0;
    sigma(2 * k + 1, 2 * k) = -1.0;
  }
  return sigma;
}

Mat4 sum_diff_transform() {
  const double h = 1.0 / std::sqrt(2.0);
  Mat4 t;
  // rows: x+, x-, p+, p-   columns: x1, p1, x2, p2
  t << h, 0, h, 0,
       h, 0, -h, 0,
       0, h, 0, h,
       0, h, 0, -h;
  return t;
}

Mat4 sum_diff_symplectic_form() {
  const Mat4 t = sum_diff_transform();
  const Mat4 sigma = symplectic_form(2);
  return t * sigma * t.transpose();
}

namespace {

// unnormalized sum/difference matrix; the 1/2 factor is applied once so vacuum stays exact
Mat4 sum_diff_unscaled() {
  Mat4 u;
  u << 1, 0, 1, 0,
       1, 0, -1, 0,
       0, 1, 0, 1,
       0, 1, 0, -1;
  return u;
}

}  // namespace

Mat4 to_sum_diff_basis(const Mat4& cov) {
  const Mat4 u = sum_diff_unscaled();
  return 0.5 * (u * cov * u.transpose());
}

Mat4 from_sum_diff_basis(const Mat4& cov_sd) {
  const Mat4 u = sum_diff_unscaled();
  return 0.5 * (u.transpose() * cov_sd * u);
}

namespace {

void require_even_square(const Eigen::Ref<const Eigen::MatrixXd>& cov, const char* who) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": covariance must be a non-empty 2m x 2m matrix, got " +
                                std::to_string(cov.rows()) + "x" + std::to_string(cov.cols()));
  }
}

}  // namespace

bool check_physical(const Eigen::Ref<const Eigen::MatrixXd>& cov, double tol) {
  require_even_square(cov, "check_physical");
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= tol * scale)) {
    throw std::invalid_argument("check_physical: malformed state, covariance is not symmetric (max |g - g^T| = " +
                                std::to_string(asym) + ")");
  }
  const auto n = cov.rows();
  const Eigen::MatrixXd sigma = symplectic_form(static_cast<int>(n / 2));
  Eigen::MatrixXcd h(n, n);
  h.real() = 0.5 * (cov + cov.transpose());
  h.imag() = sigma;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("check_physical: eigen-solver did not converge");
  return es.eigenvalues().minCoeff() >= -tol;
}

std::vector<double> symplectic_spectrum(const Eigen::Ref<const Eigen::MatrixXd>& cov) {
  require_even_square(cov, "symplectic_spectrum");
  const auto n = cov.rows();
  const Eigen::MatrixXd sigma = symplectic_form(static_cast<int>(n / 2));
  // sigma^{-1} = -sigma = sigma^T
  const Eigen::MatrixXd m = 0.5 * sigma.transpose() * cov;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("symplectic_spectrum: eigen-solver did not converge");
  std::vector<double> moduli(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
  std::sort(moduli.begin(), moduli.end());
  std::vector<double> nu;
  nu.reserve(moduli.size() / 2);
  for (std::size_t k = 0; k + 1 < moduli.size(); k += 2) nu.push_back(0.5 * (moduli[k] + moduli[k + 1]));
  return nu;
}

Mat4 atomic_rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat4 r = Mat4::Zero();
  r(kX1, kX1) = c;
  r(kX1, kP1) = s;
  r(kP1, kX1) = -s;
  r(kP1, kP1) = c;
  r(kX2, kX2) = c;
  r(kX2, kP2) = -s;
  r(kP2, kX2) = s;
  r(kP2, kP2) = c;
  return r;
}

Mat4 to_corotating_frame(const Mat4& cov, double theta) {
  const Mat4 r = atomic_rotation(-0.5 * theta);
  return r * cov * r.transpose();
}

}  // namespace gaussent
