// Double-Hopf location and numerical centre-manifold reduction: critical
// bases, the quadratic h expansion, cubic normal-form coefficients, unfolding
// sensitivities and the resonance screen.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "core/model.hpp"
#include "core/params.hpp"

namespace hkb::cm {

using Complex = std::complex<double>;
using Eigen::Matrix4d;
using Eigen::Vector4cd;
using RowVector4cd = Eigen::Matrix<Complex, 1, 4>;
using Vec8c = hkb::Vec8c;

// A constant-delay DDE x' = A0 x + A1 x_tau + f(x, x_tau) described by its
// linear parts and the symmetric multilinear forms of f. The HKB system is
// one instance; tests may supply synthetic ones (e.g. with quadratic terms).
struct DdeSpec {
  Matrix4d A0;
  Matrix4d A1;
  double tau = 0.0;
  std::function<Vector4cd(const Vec8c&, const Vec8c&)> quadratic;
  std::function<Vector4cd(const Vec8c&, const Vec8c&, const Vec8c&)> cubic;

  Eigen::Matrix4cd char_matrix(Complex lambda) const;        // Delta(lambda)
  Eigen::Matrix4cd char_matrix_deriv(Complex lambda) const;  // Delta'(lambda)
};

DdeSpec dde_spec(const Params& p);

struct DoubleHopfPoint {
  double a_c = 0.0, tau_c = 0.0;
  double nu_i = 0.0, nu_a = 0.0;
  Vector4cd v_i, v_a;        // right null vectors of Delta(i nu), first component 1
  RowVector4cd w_i, w_a;     // left null vectors, normalised w Delta'(i nu) v = 1
};

// All double-Hopf points of the crossing curves inside the box, sorted by tau_c.
std::vector<DoubleHopfPoint> double_hopf_points(const Params& p_fixed,
                                                double a_lo, double a_hi,
                                                double tau_lo, double tau_hi);

// Critical basis data at a double-Hopf point (m = 4, two conjugate pairs).
struct CentreBasis {
  double nu[2];
  Vector4cd v[2];
  RowVector4cd w[2];         // normalised: w Delta'(i nu) v = 1
  double tau;
  Matrix4d A0, A1;

  Matrix4d Phi(double theta) const;  // columns Re/Im of e^{i nu theta} v
  Matrix4d Psi(double xi) const;     // rows Re/-Im of 2 w e^{-i nu xi}
  Matrix4d B() const;                // blocks [[0, nu], [-nu, 0]]
  Matrix4d pairing_matrix() const;   // (Psi, Phi) under the bilinear form
};

CentreBasis centre_basis(const DoubleHopfPoint& hh, const Params& p);
CentreBasis centre_basis(const DoubleHopfPoint& hh, const DdeSpec& sys);

// Quadratic part of the centre-manifold function h(theta, u), stored per
// complex monomial z_i z_j over z = (z1, conj z1, z2, conj z2).
struct CmExpansion {
  struct Monomial {
    int i, j;          // 0..3, i <= j
    Complex lambda;    // Lambda_i + Lambda_j
    Vector4cd f;       // quadratic forcing coefficient
    Vector4cd K;       // Delta(lambda)^{-1} f
    Complex c[4];      // particular-solution coefficients per centre direction
  };
  std::vector<Monomial> monomials;
  CentreBasis basis;

  // h(theta, u) for real centre coordinates u (4-vector); real result.
  Eigen::Vector4d eval(double theta, const Eigen::Vector4d& u) const;
  double max_f_norm() const;
};

// Solve the quadratic-order h equations in closed form. Throws
// std::runtime_error on a resonant denominator (singular Delta(lambda_m) or
// Lambda_k == lambda_m).
CmExpansion solve_h_quadratic(const DoubleHopfPoint& hh, const DdeSpec& sys,
                              const CentreBasis& basis);

struct NormalForm {
  double a[2][2];    // cubic amplitude coefficients a_jk
  double c[2][2];    // cubic phase coefficients c_jk
  double rho[2][2];  // unfolding sensitivities d Re(lambda)/d(a, tau)
  double nu1 = 0.0, nu2 = 0.0;
  double a_c = 0.0, tau_c = 0.0;
};

// Cubic normal form by direct projection of the cubic terms (valid when the
// quadratic forms vanish, as for HKB; throws otherwise). The amplitude
// convention makes r of the polar form equal the RMS amplitude ||x||.
NormalForm normal_form_coefficients(const DoubleHopfPoint& hh, const Params& p,
                                    const CentreBasis& basis, const CmExpansion& cm);

// rho_jk = Re(d lambda / d mu_k) at i nu_j, mu = (a, tau); row 1 in-phase.
Eigen::Matrix2d unfolding_rhos(const DoubleHopfPoint& hh, const Params& p);

struct Resonance {
  int k1, k2;
  bool strong;  // k1 + k2 <= 4
};

// Smallest coprime k1:k2 with |nu1/nu2 - k1/k2| <= 1e-9 and k1, k2 <= k_max.
std::optional<Resonance> resonance_check(double nu1, double nu2, int k_max);

// Convenience: full normal form at a double-Hopf point.
NormalForm normal_form_at(const DoubleHopfPoint& hh, const Params& p);

}  // namespace hkb::cm
