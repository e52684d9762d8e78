#include "gaussent/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gaussent/linalg.hpp"

namespace gaussent {

Mat4 rotation_generator(double omega) {
  Mat4 r = Mat4::Zero();
  r(kX1, kP1) = omega;
  r(kP1, kX1) = -omega;
  r(kX2, kP2) = -omega;
  r(kP2, kX2) = omega;
  return r;
}

namespace {

// A with the eps-dependent x1-x2 back-action correlation, without the
// depumping noise and without the kappa^2 prefactor.
Mat4 backaction_source(double epsilon) {
  const double c = std::sqrt(1.0 - epsilon);
  Mat4 a = Mat4::Zero();
  a(kX1, kX1) = 1.0;
  a(kX2, kX2) = 1.0;
  a(kX1, kX2) = c;
  a(kX2, kX1) = c;
  return a;
}

// B: the measured light quadrature carries (1-eps) p1 + sqrt(1-eps) p2.
Mat4 measurement_kernel(double epsilon) {
  const double c = std::sqrt(1.0 - epsilon);
  Mat4 b = Mat4::Zero();
  b(kP1, kP1) = 1.0 - epsilon;
  b(kP1, kP2) = c;
  b(kP2, kP1) = c;
  b(kP2, kP2) = 1.0;
  return b;
}

}  // namespace

AtomicRiccati lossless_problem(double kappa_sq_rate, double omega) {
  RiccatiCoefficients<4> c;
  c.r = rotation_generator(omega);
  c.a = kappa_sq_rate * backaction_source(0.0);
  c.b = kappa_sq_rate * measurement_kernel(0.0);
  auto p = AtomicRiccati::constant(c, kappa_sq_rate);
  p.other_rate = omega;
  return p;
}

AtomicRiccati lossy_problem(const PhysicalParams& p) {
  p.validate();
  const double eps = p.epsilon();
  if (p.eta == 0.0) {
    RiccatiCoefficients<4> c;
    c.r = rotation_generator(p.omega);
    c.a = p.kappa_sq_rate * backaction_source(eps);
    c.b = (1.0 - eps) * p.kappa_sq_rate * measurement_kernel(eps);
    auto problem = AtomicRiccati::constant(c, p.kappa_sq_rate);
    problem.other_rate = p.omega;
    return problem;
  }
  const Mat4 r = rotation_generator(p.omega) - 0.5 * p.eta * Mat4::Identity();
  const Mat4 a0 = backaction_source(eps);
  const Mat4 b0 = (1.0 - eps) * measurement_kernel(eps);
  const double k2 = p.kappa_sq_rate;
  const double eta = p.eta;
  auto problem = AtomicRiccati::time_varying(
      [=](double t) {
        const double kappa_sq = k2 * std::exp(-eta * t);
        const double xi = 2.0 * std::exp(eta * t);
        RiccatiCoefficients<4> c;
        c.r = r;
        c.a = kappa_sq * a0 + xi * eta * Mat4::Identity();
        c.b = kappa_sq * b0;
        return c;
      },
      k2);
  problem.other_rate = std::max(p.omega, p.eta);
  return problem;
}

ReducedRiccati reduced_rotating_problem(const PhysicalParams& p) {
  p.validate();
  constexpr double xi = 2.0;
  RiccatiCoefficients<2> c;
  c.r = -0.5 * p.eta * Mat2::Identity();
  c.a = p.kappa_sq_rate * Vec2(1.0, 0.0).asDiagonal().toDenseMatrix() + 2.0 * xi * p.eta * Mat2::Identity();
  c.b = p.kappa_sq_rate * Vec2(0.0, 1.0).asDiagonal().toDenseMatrix();
  auto problem = ReducedRiccati::constant(c, p.kappa_sq_rate);
  problem.other_rate = p.eta;
  return problem;
}

template <int N>
double default_dt(const RiccatiProblem<N>& problem, double t_end) {
  double dt = std::numeric_limits<double>::infinity();
  if (problem.scale() > 0.0) dt = std::min(dt, 1e-3 / problem.scale());
  if (problem.other_rate > 0.0) dt = std::min(dt, 1e-2 / problem.other_rate);
  if (!std::isfinite(dt)) dt = t_end > 0.0 ? t_end / 1000.0 : 1.0;
  return dt;
}

namespace {

template <int N>
Eigen::Matrix<double, N, N> riccati_rhs(const RiccatiCoefficients<N>& c, const Eigen::Matrix<double, N, N>& g) {
  return c.r * g + g * c.r.transpose() + c.a - g * c.b * g;
}

}  // namespace

template <int N>
RiccatiSeries<N> integrate_ode(const RiccatiProblem<N>& problem, const std::type_identity_t<Eigen::Matrix<double, N, N>>& gamma0,
                               double t_end, double dt, int record_every) {
  using Mat = Eigen::Matrix<double, N, N>;
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("integrate_ode: t_end must be >= 0");
  if (dt <= 0.0) dt = default_dt(problem, t_end);
  if (record_every < 1) record_every = 1;

  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;

  RiccatiSeries<N> out;
  out.reserve(static_cast<std::size_t>(steps / record_every + 2));
  Mat g = linalg::symmetrized(gamma0);
  out.push_back({0.0, g});

  const bool varying = problem.time_dependent();
  RiccatiCoefficients<N> c0 = problem.at(0.0), cm = c0, c1 = c0;
  for (long long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    if (varying) {
      c0 = problem.at(t);
      cm = problem.at(t + 0.5 * h);
      c1 = problem.at(t + h);
    }
    const Mat k1 = riccati_rhs(c0, g);
    const Mat k2 = riccati_rhs(cm, Mat(g + 0.5 * h * k1));
    const Mat k3 = riccati_rhs(cm, Mat(g + 0.5 * h * k2));
    const Mat k4 = riccati_rhs(c1, Mat(g + h * k3));
    g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    g = linalg::symmetrized(g);

    if (!g.allFinite() || linalg::max_abs(g) > kOverflowGuard) {
      std::ostringstream msg;
      msg << "integrate_ode: solution exceeded " << kOverflowGuard << " at t = " << t + h
          << "; the problem is stiff or diverging for dt = " << h << ", try a smaller step";
      throw NumericalError(msg.str());
    }
    if ((k + 1) % record_every == 0 || k + 1 == steps) out.push_back({static_cast<double>(k + 1) * h, g});
  }
  return out;
}

template <int N>
Eigen::Matrix<double, N, N> solve_doubling(const RiccatiProblem<N>& problem,
                                           const std::type_identity_t<Eigen::Matrix<double, N, N>>& gamma0, double t) {
  using Mat = Eigen::Matrix<double, N, N>;
  if (problem.time_dependent()) {
    throw std::invalid_argument("solve_doubling: constant coefficients required");
  }
  if (t == 0.0) return gamma0;
  const RiccatiCoefficients<N> c = problem.at(0.0);
  Eigen::MatrixXd h(2 * N, 2 * N);
  h << c.r, c.a, c.b, -c.r.transpose();
  const Eigen::MatrixXd e = linalg::expm(h * t);

  const Mat w = e.topLeftCorner(N, N) * gamma0 + e.topRightCorner(N, N);
  const Mat u = e.bottomLeftCorner(N, N) * gamma0 + e.bottomRightCorner(N, N);

  Eigen::JacobiSVD<Mat> svd(u);
  const auto& sv = svd.singularValues();
  if (!(sv(N - 1) > 1e-12 * sv(0))) {
    std::ostringstream msg;
    msg << "solve_doubling: U(t) is singular at t = " << t << " (finite escape time)";
    throw NumericalError(msg.str());
  }
  // gamma = W U^{-1}  <=>  U^T gamma^T = W^T
  const Mat gamma = u.transpose().fullPivLu().solve(w.transpose()).transpose();
  return linalg::symmetrized(gamma);
}

RiccatiSeries<2> solve_reduced_rotating(const PhysicalParams& p, double t_end, double dt, int record_every) {
  return integrate_ode<2>(reduced_rotating_problem(p), Mat2::Identity(), t_end, dt, record_every);
}

template double default_dt<2>(const RiccatiProblem<2>&, double);
template double default_dt<4>(const RiccatiProblem<4>&, double);
template RiccatiSeries<2> integrate_ode<2>(const RiccatiProblem<2>&, const Mat2&, double, double, int);
template RiccatiSeries<4> integrate_ode<4>(const RiccatiProblem<4>&, const Mat4&, double, double, int);
template Mat2 solve_doubling<2>(const RiccatiProblem<2>&, const Mat2&, double);
template Mat4 solve_doubling<4>(const RiccatiProblem<4>&, const Mat4&, double);

}  // namespace gaussent
