#pragma once

#include <Eigen/Dense>

namespace gaussent::linalg {

/// Matrix exponential by scaling and squaring with a degree-13 diagonal Pade
/// approximant (Higham 2005 parameters, theta_13 = 5.37).
Eigen::MatrixXd expm(const Eigen::Ref<const Eigen::MatrixXd>& a);

template <typename Derived>
auto symmetrized(const Eigen::MatrixBase<Derived>& m) {
  return (0.5 * (m + m.transpose())).eval();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace gaussent::linalg
