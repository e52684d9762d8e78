#include "gaussent/linalg.hpp"

#include <array>
#include <cmath>

#include "gaussent/types.hpp"

namespace gaussent::linalg {

Eigen::MatrixXd expm(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const auto n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1)) throw NumericalError("expm: non-finite input");
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));

  const Eigen::MatrixXd x = a / std::ldexp(1.0, squarings);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd x2 = x * x;
  const Eigen::MatrixXd x4 = x2 * x2;
  const Eigen::MatrixXd x6 = x4 * x2;

  const Eigen::MatrixXd u =
      x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
  const Eigen::MatrixXd v =
      x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(v - u);
  Eigen::MatrixXd r = lu.solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  if (!r.allFinite()) throw NumericalError("expm: overflow during squaring");
  return r;
}

}  // namespace gaussent::linalg
