#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace gaussent {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

// Quadrature slots. Mode ordering is fixed as (atom1, atom2, light).
enum Slot : int { kX1 = 0, kP1 = 1, kX2 = 2, kP2 = 3, kXL = 4, kPL = 5 };

// Slots of the sum/difference basis (x+, x-, p+, p-).
enum SumDiffSlot : int { kXPlus = 0, kXMinus = 1, kPPlus = 2, kPMinus = 3 };

/// Raised when an eigen-solver, matrix inversion or integrator fails.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaussent
