#include "core/model.hpp"

namespace hkb::model {

State rhs_full(const State& now, const State& delayed, const Params& p) {
  const double x1 = now[0], x2 = now[1], v1 = now[2], v2 = now[3];
  const double xd1 = delayed[0], xd2 = delayed[1], vd1 = delayed[2], vd2 = delayed[3];
  State out;
  out[0] = v1;
  out[1] = v2;
  out[2] = -p.omega * p.omega * x1 + (p.gamma - p.alpha * x1 * x1 - p.beta * v1 * v1) * v1 +
           (p.a + p.b * (x1 - xd2) * (x1 - xd2)) * (v1 - vd2);
  out[3] = -p.omega * p.omega * x2 + (p.gamma - p.alpha * x2 * x2 - p.beta * v2 * v2) * v2 +
           (p.a + p.b * (x2 - xd1) * (x2 - xd1)) * (v2 - vd1);
  return out;
}

double rhs_normal_mode(Mode mode, double eta, double eta_dot,
                       double eta_delayed_dot, const Params& p) {
  const double s = (mode == Mode::InPhase) ? -1.0 : 1.0;
  return -p.omega * p.omega * eta + p.gamma * eta_dot +
         p.a * (eta_dot + s * eta_delayed_dot);
}

LinearParts jacobians(const Params& p) {
  LinearParts lp;
  lp.A0.setZero();
  lp.A1.setZero();
  lp.A0(0, 2) = 1.0;
  lp.A0(1, 3) = 1.0;
  lp.A0(2, 0) = -p.omega * p.omega;
  lp.A0(3, 1) = -p.omega * p.omega;
  lp.A0(2, 2) = p.gamma + p.a;
  lp.A0(3, 3) = p.gamma + p.a;
  lp.A1(2, 3) = -p.a;
  lp.A1(3, 2) = -p.a;
  return lp;
}

Matrix4d rhs_jac_present(const State& now, const State& delayed, const Params& p) {
  const double x1 = now[0], x2 = now[1], v1 = now[2], v2 = now[3];
  const double xd1 = delayed[0], xd2 = delayed[1], vd1 = delayed[2], vd2 = delayed[3];
  Matrix4d J = Matrix4d::Zero();
  J(0, 2) = 1.0;
  J(1, 3) = 1.0;
  J(2, 0) = -p.omega * p.omega - 2.0 * p.alpha * x1 * v1 + 2.0 * p.b * (x1 - xd2) * (v1 - vd2);
  J(2, 2) = p.gamma - p.alpha * x1 * x1 - 3.0 * p.beta * v1 * v1 + p.a + p.b * (x1 - xd2) * (x1 - xd2);
  J(3, 1) = -p.omega * p.omega - 2.0 * p.alpha * x2 * v2 + 2.0 * p.b * (x2 - xd1) * (v2 - vd1);
  J(3, 3) = p.gamma - p.alpha * x2 * x2 - 3.0 * p.beta * v2 * v2 + p.a + p.b * (x2 - xd1) * (x2 - xd1);
  return J;
}

Matrix4d rhs_jac_delayed(const State& now, const State& delayed, const Params& p) {
  const double x1 = now[0], x2 = now[1], v1 = now[2], v2 = now[3];
  const double xd1 = delayed[0], xd2 = delayed[1], vd1 = delayed[2], vd2 = delayed[3];
  Matrix4d J = Matrix4d::Zero();
  J(2, 1) = -2.0 * p.b * (x1 - xd2) * (v1 - vd2);
  J(2, 3) = -(p.a + p.b * (x1 - xd2) * (x1 - xd2));
  J(3, 0) = -2.0 * p.b * (x2 - xd1) * (v2 - vd1);
  J(3, 2) = -(p.a + p.b * (x2 - xd1) * (x2 - xd1));
  return J;
}

State rhs_da(const State& now, const State& delayed, const Params&) {
  State out = State::Zero();
  out[2] = now[2] - delayed[3];
  out[3] = now[3] - delayed[2];
  return out;
}

Vector4cd f_cubic(const Vec8c& y, const Params& p) {
  using C = std::complex<double>;
  const C x1 = y[0], x2 = y[1], v1 = y[2], v2 = y[3];
  const C xd1 = y[4], xd2 = y[5], vd1 = y[6], vd2 = y[7];
  Vector4cd out = Vector4cd::Zero();
  out[2] = -p.alpha * x1 * x1 * v1 - p.beta * v1 * v1 * v1 +
           p.b * (x1 - xd2) * (x1 - xd2) * (v1 - vd2);
  out[3] = -p.alpha * x2 * x2 * v2 - p.beta * v2 * v2 * v2 +
           p.b * (x2 - xd1) * (x2 - xd1) * (v2 - vd1);
  return out;
}

Vector4d MultilinearForms::quadratic(const Eigen::Matrix<double, 8, 1>&,
                                     const Eigen::Matrix<double, 8, 1>&) const {
  return Vector4d::Zero();  // every HKB nonlinearity is cubic
}

Vector4cd MultilinearForms::quadratic_c(const Vec8c&, const Vec8c&) const {
  return Vector4cd::Zero();
}

// Sign polarization: C(u,v,w) = (1/48) sum_{s in {-1,1}^3} s1 s2 s3 g(s1 u + s2 v + s3 w)
// for homogeneous cubic g, which makes C symmetric with C(y,y,y) = g(y).
Vector4cd MultilinearForms::cubic_c(const Vec8c& u, const Vec8c& v, const Vec8c& w) const {
  Vector4cd tot = Vector4cd::Zero();
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1}) {
        const double sign = s1 * s2 * s3;
        tot += sign * f_cubic(double(s1) * u + double(s2) * v + double(s3) * w, p);
      }
  return tot / 48.0;
}

Vector4d MultilinearForms::cubic(const Eigen::Matrix<double, 8, 1>& u,
                                 const Eigen::Matrix<double, 8, 1>& v,
                                 const Eigen::Matrix<double, 8, 1>& w) const {
  return cubic_c(u.cast<std::complex<double>>(), v.cast<std::complex<double>>(),
                 w.cast<std::complex<double>>())
      .real();
}

MultilinearForms multilinear_forms(const Params& p) { return MultilinearForms{p}; }

}  // namespace hkb::model
