// The delayed HKB system: right-hand side, normal-mode reduction, and the
// derivative data (Jacobians, multilinear forms) the other modules consume.
#pragma once

#include <complex>

#include "core/params.hpp"

namespace hkb::model {

using Eigen::Matrix4d;
using Eigen::Vector4d;
using Vector4cd = Eigen::Vector4cd;

// Full first-order form: d/dt (x1,x2,v1,v2) with equal delays.
State rhs_full(const State& now, const State& delayed, const Params& p);

// Linear normal-mode equation eta'' + w^2 eta = gamma eta' + a (eta' -/+ eta'_tau);
// returns eta''. InPhase takes the minus sign, AntiPhase the plus sign.
double rhs_normal_mode(Mode mode, double eta, double eta_dot,
                       double eta_delayed_dot, const Params& p);

struct LinearParts {
  Matrix4d A0;  // derivative w.r.t. present state at the origin
  Matrix4d A1;  // derivative w.r.t. delayed state at the origin
};

LinearParts jacobians(const Params& p);

// Jacobians of rhs_full at an arbitrary point (for variational problems).
Matrix4d rhs_jac_present(const State& now, const State& delayed, const Params& p);
Matrix4d rhs_jac_delayed(const State& now, const State& delayed, const Params& p);
// Derivative of rhs_full w.r.t. the coupling parameter a.
State rhs_da(const State& now, const State& delayed, const Params& p);

// Symmetric multilinear forms of the nonlinear remainder f = rhs - linear part,
// over the 8-dimensional (present (+) delayed) space. quadratic(y,y) and
// cubic(y,y,y) reproduce the degree-2 and degree-3 parts of f exactly.
struct MultilinearForms {
  Params p;
  // identically zero for HKB; kept so the centre-manifold machinery stays generic
  Vector4d quadratic(const Eigen::Matrix<double, 8, 1>& u,
                     const Eigen::Matrix<double, 8, 1>& v) const;
  Vector4cd quadratic_c(const Vec8c& u, const Vec8c& v) const;
  Vector4d cubic(const Eigen::Matrix<double, 8, 1>& u,
                 const Eigen::Matrix<double, 8, 1>& v,
                 const Eigen::Matrix<double, 8, 1>& w) const;
  Vector4cd cubic_c(const Vec8c& u, const Vec8c& v, const Vec8c& w) const;
};

MultilinearForms multilinear_forms(const Params& p);

// Cubic part of f alone (no linear terms), used by the forms and tests.
Vector4cd f_cubic(const Vec8c& y, const Params& p);

}  // namespace hkb::model
