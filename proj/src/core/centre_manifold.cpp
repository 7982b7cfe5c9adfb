#include "core/centre_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/linear_stability.hpp"

namespace hkb::cm {

namespace ls = hkb::linstab;
using Eigen::Matrix4cd;

Eigen::Matrix4cd DdeSpec::char_matrix(Complex lambda) const {
  return lambda * Matrix4cd::Identity() - A0.cast<Complex>() -
         A1.cast<Complex>() * std::exp(-lambda * tau);
}

Eigen::Matrix4cd DdeSpec::char_matrix_deriv(Complex lambda) const {
  return Matrix4cd::Identity() + tau * std::exp(-lambda * tau) * A1.cast<Complex>();
}

DdeSpec dde_spec(const Params& p) {
  DdeSpec s;
  auto lp = model::jacobians(p);
  s.A0 = lp.A0;
  s.A1 = lp.A1;
  s.tau = p.tau;
  auto forms = model::multilinear_forms(p);
  s.quadratic = [forms](const Vec8c& u, const Vec8c& v) { return forms.quadratic_c(u, v); };
  s.cubic = [forms](const Vec8c& u, const Vec8c& v, const Vec8c& w) {
    return forms.cubic_c(u, v, w);
  };
  return s;
}

namespace {

// Right/left null vectors of Delta(i nu); v scaled to first nonzero
// component 1, w scaled so that w Delta'(i nu) v = 1.
void null_vectors(const DdeSpec& sys, double nu, Vector4cd& v, RowVector4cd& w) {
  const Matrix4cd D = sys.char_matrix(Complex(0.0, nu));
  Eigen::JacobiSVD<Matrix4cd> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(3) > 1e-6 * svd.singularValues()(0))
    throw std::runtime_error("centre_basis: Delta(i nu) is not singular at this point");
  v = svd.matrixV().col(3);
  w = svd.matrixU().col(3).adjoint();
  for (int k = 0; k < 4; ++k) {
    if (std::abs(v[k]) > 1e-8) {
      v /= v[k];
      break;
    }
  }
  const Complex pairing = (w * sys.char_matrix_deriv(Complex(0.0, nu)) * v)(0);
  if (std::abs(pairing) < 1e-12)
    throw std::runtime_error("centre_basis: degenerate eigenvector pairing");
  w /= pairing;
}

struct HhEquations {
  const Params* base;
  // residual of [Re,Im Delta_i(i nu_i), Re,Im Delta_a(i nu_a)] at (a, tau, nu_i, nu_a)
  Eigen::Vector4d operator()(const Eigen::Vector4d& x) const {
    Params p = *base;
    p.a = x[0];
    p.tau = x[1];
    const Complex di = ls::char_fn(Mode::InPhase, Complex(0.0, x[2]), p);
    const Complex da = ls::char_fn(Mode::AntiPhase, Complex(0.0, x[3]), p);
    return {di.real(), di.imag(), da.real(), da.imag()};
  }
};

}  // namespace

std::vector<DoubleHopfPoint> double_hopf_points(const Params& p_fixed,
                                                double a_lo, double a_hi,
                                                double tau_lo, double tau_hi) {
  if (!(std::isfinite(a_lo) && std::isfinite(a_hi) && std::isfinite(tau_lo) &&
        std::isfinite(tau_hi)))
    throw std::invalid_argument("double_hopf_points: non-finite range");
  std::vector<DoubleHopfPoint> out;
  // seed via curve sampling at 1e-2 resolution in a
  const double da_scan = 1e-2;
  const int nfam = 8;  // tau families scanned per mode
  auto curve_taus = [&](double a, Mode m) {
    std::vector<double> taus;
    Params p = p_fixed;
    p.a = a;
    if (p.a == 0.0) return taus;
    auto cd = ls::crossing_delays(p, m, nfam);
    if (!cd) return taus;
    for (int n = 0; n <= nfam; ++n) {
      taus.push_back(cd->taus_destabilizing[n]);
      taus.push_back(cd->taus_stabilizing[n]);
    }
    return taus;
  };
  HhEquations F{&p_fixed};
  std::vector<double> prev_i, prev_a;
  double prev_x = 0.0;
  bool have_prev = false;
  for (double x = a_lo; x <= a_hi + 1e-12; x += da_scan) {
    auto ci = curve_taus(x, Mode::InPhase);
    auto ca = curve_taus(x, Mode::AntiPhase);
    if (have_prev && ci.size() == prev_i.size() && ca.size() == prev_a.size()) {
      for (size_t i = 0; i < ci.size(); ++i) {
        for (size_t j = 0; j < ca.size(); ++j) {
          const double d0 = prev_i[i] - prev_a[j];
          const double d1 = ci[i] - ca[j];
          if (d0 * d1 >= 0.0) continue;
          const double tau_mid = 0.5 * (ci[i] + ca[j]);
          if (tau_mid < tau_lo - 0.1 || tau_mid > tau_hi + 0.1) continue;
          // Newton polish from the midpoint seed
          Params pm = p_fixed;
          pm.a = 0.5 * (x + prev_x);
          auto cf = ls::critical_frequencies(pm);
          if (!cf) continue;
          Eigen::Vector4d y(pm.a, tau_mid, 0.0, 0.0);
          // nu seeds: pick the family frequency used by each curve
          y[2] = (i % 2 == 0) ? cf->nu_plus : cf->nu_minus;
          y[3] = (j % 2 == 0) ? cf->nu_plus : cf->nu_minus;
          bool ok = false;
          for (int it = 0; it < 50; ++it) {
            const Eigen::Vector4d r = F(y);
            if (r.norm() < 1e-12 * std::max(1.0, p_fixed.omega * p_fixed.omega)) {
              ok = true;
              break;
            }
            Eigen::Matrix4d J;
            const double h = 1e-7;
            for (int k = 0; k < 4; ++k) {
              Eigen::Vector4d yp = y, ym = y;
              yp[k] += h;
              ym[k] -= h;
              J.col(k) = (F(yp) - F(ym)) / (2.0 * h);
            }
            const Eigen::Vector4d step = J.partialPivLu().solve(r);
            y -= step;
            if (!y.allFinite()) break;
            if (step.norm() < 1e-13 * (1.0 + y.norm())) {
              ok = F(y).norm() < 1e-10;
              break;
            }
          }
          if (!ok) continue;
          if (y[0] < a_lo || y[0] > a_hi || y[1] <= tau_lo || y[1] > tau_hi) continue;
          if (y[2] <= 0.0 || y[3] <= 0.0) continue;
          bool dup = false;
          for (const auto& hhp : out)
            if (std::abs(hhp.a_c - y[0]) < 1e-8 && std::abs(hhp.tau_c - y[1]) < 1e-8)
              dup = true;
          if (dup) continue;
          DoubleHopfPoint hh;
          hh.a_c = y[0];
          hh.tau_c = y[1];
          hh.nu_i = y[2];
          hh.nu_a = y[3];
          Params pc = p_fixed;
          pc.a = hh.a_c;
          pc.tau = hh.tau_c;
          // the 4x4 characteristic matrix factors over the modes; null vectors
          // of the full system at each critical frequency
          DdeSpec sys = dde_spec(pc);
          null_vectors(sys, hh.nu_i, hh.v_i, hh.w_i);
          null_vectors(sys, hh.nu_a, hh.v_a, hh.w_a);
          out.push_back(hh);
        }
      }
    }
    prev_i = std::move(ci);
    prev_a = std::move(ca);
    prev_x = x;
    have_prev = true;
  }
  std::sort(out.begin(), out.end(),
            [](const DoubleHopfPoint& l, const DoubleHopfPoint& r) {
              return l.tau_c < r.tau_c;
            });
  return out;
}

Matrix4d CentreBasis::Phi(double theta) const {
  Matrix4d out;
  for (int k = 0; k < 2; ++k) {
    const Vector4cd col = std::exp(Complex(0.0, nu[k] * theta)) * v[k];
    out.col(2 * k) = col.real();
    out.col(2 * k + 1) = col.imag();
  }
  return out;
}

Matrix4d CentreBasis::Psi(double xi) const {
  Matrix4d out;
  for (int k = 0; k < 2; ++k) {
    const RowVector4cd row = 2.0 * std::exp(Complex(0.0, -nu[k] * xi)) * w[k];
    out.row(2 * k) = row.real();
    out.row(2 * k + 1) = -row.imag();
  }
  return out;
}

Matrix4d CentreBasis::B() const {
  Matrix4d out = Matrix4d::Zero();
  for (int k = 0; k < 2; ++k) {
    out(2 * k, 2 * k + 1) = nu[k];
    out(2 * k + 1, 2 * k) = -nu[k];
  }
  return out;
}

namespace {
// Bilinear form of exponential elements:
// (W e^{-i nu xi}, e^{lam theta} v) = W v + W e^{-i nu tau} A1 v * I(lam - i nu),
// I(mu) = (1 - e^{-mu tau})/mu (or tau at mu = 0).
Complex pairing_exp(const RowVector4cd& W, double nu_psi, const Vector4cd& v,
                    Complex lam_phi, const Matrix4d& A1, double tau) {
  const Complex mu = lam_phi - Complex(0.0, nu_psi);
  Complex I;
  if (std::abs(mu) < 1e-14)
    I = tau;
  else
    I = (1.0 - std::exp(-mu * tau)) / mu;
  const Complex direct = (W * v)(0);
  const Complex tail =
      (W * A1.cast<Complex>() * v)(0) * std::exp(Complex(0.0, -nu_psi * tau)) * I;
  return direct + tail;
}
}  // namespace

Matrix4d CentreBasis::pairing_matrix() const {
  // real rows/columns assembled from the four complex pairings
  Matrix4d out;
  for (int kp = 0; kp < 2; ++kp) {
    for (int kf = 0; kf < 2; ++kf) {
      const RowVector4cd W = 2.0 * w[kp];
      const Complex pp = pairing_exp(W, nu[kp], v[kf], Complex(0.0, nu[kf]), A1, tau);
      const Complex pm = pairing_exp(W, nu[kp], v[kf].conjugate(),
                                     Complex(0.0, -nu[kf]), A1, tau);
      // psi_{2kp} = Re Psi_c, psi_{2kp+1} = -Im Psi_c; phi_{2kf} = Re Phi_c, etc.
      // (Re A, Re B) type combinations:
      const Complex pbar_p = std::conj(pm);  // (conj Psi_c, Phi_c) = conj((Psi_c, conj Phi_c))
      const Complex pbar_m = std::conj(pp);
      out(2 * kp, 2 * kf) = 0.25 * (pp + pm + pbar_p + pbar_m).real();
      out(2 * kp, 2 * kf + 1) =
          0.25 * ((pp - pm + pbar_p - pbar_m) / Complex(0, 1)).real();
      out(2 * kp + 1, 2 * kf) =
          -0.25 * ((pp + pm - pbar_p - pbar_m) / Complex(0, 1)).real();
      out(2 * kp + 1, 2 * kf + 1) = 0.25 * (pp - pm - pbar_p + pbar_m).real();
    }
  }
  return out;
}

CentreBasis centre_basis(const DoubleHopfPoint& hh, const DdeSpec& sys) {
  CentreBasis cb;
  cb.nu[0] = hh.nu_i;
  cb.nu[1] = hh.nu_a;
  cb.tau = sys.tau;
  cb.A0 = sys.A0;
  cb.A1 = sys.A1;
  null_vectors(sys, hh.nu_i, cb.v[0], cb.w[0]);
  null_vectors(sys, hh.nu_a, cb.v[1], cb.w[1]);
  return cb;
}

CentreBasis centre_basis(const DoubleHopfPoint& hh, const Params& p) {
  Params pc = p;
  pc.a = hh.a_c;
  pc.tau = hh.tau_c;
  return centre_basis(hh, dde_spec(pc));
}

namespace {
// complex centre directions: Lambda = (i nu1, -i nu1, i nu2, -i nu2)
struct Directions {
  Complex Lambda[4];
  Vector4cd vdir[4];
  RowVector4cd wdir[4];
  Vec8c q[4];  // (v; e^{-Lambda tau} v)
};

Directions directions(const CentreBasis& cb) {
  Directions d;
  for (int k = 0; k < 2; ++k) {
    d.Lambda[2 * k] = Complex(0.0, cb.nu[k]);
    d.Lambda[2 * k + 1] = Complex(0.0, -cb.nu[k]);
    d.vdir[2 * k] = cb.v[k];
    d.vdir[2 * k + 1] = cb.v[k].conjugate();
    d.wdir[2 * k] = cb.w[k];
    d.wdir[2 * k + 1] = cb.w[k].conjugate();
  }
  for (int k = 0; k < 4; ++k) {
    d.q[k].head<4>() = d.vdir[k];
    d.q[k].tail<4>() = d.vdir[k] * std::exp(-d.Lambda[k] * cb.tau);
  }
  return d;
}
}  // namespace

CmExpansion solve_h_quadratic(const DoubleHopfPoint&, const DdeSpec& sys,
                              const CentreBasis& basis) {
  CmExpansion cm;
  cm.basis = basis;
  const Directions d = directions(basis);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      CmExpansion::Monomial m;
      m.i = i;
      m.j = j;
      m.lambda = d.Lambda[i] + d.Lambda[j];
      const double mult = (i == j) ? 1.0 : 2.0;
      // quadratic form acts on full (present; delayed) 8-vectors
      m.f = mult * sys.quadratic(d.q[i], d.q[j]);
      // K solves Delta(lambda_m) K = f_m
      Eigen::FullPivLU<Matrix4cd> lu(sys.char_matrix(m.lambda));
      if (!lu.isInvertible())
        throw std::runtime_error("solve_h_quadratic: singular Delta(lambda)");
      m.K = lu.solve(m.f);
      for (int k = 0; k < 4; ++k) {
        const Complex g = (d.wdir[k] * m.f)(0);
        const Complex denom = d.Lambda[k] - m.lambda;
        if (std::abs(denom) < 1e-6)
          throw std::runtime_error("solve_h_quadratic: resonant denominator");
        m.c[k] = g / denom;
      }
      cm.monomials.push_back(std::move(m));
    }
  }
  return cm;
}

Eigen::Vector4d CmExpansion::eval(double theta, const Eigen::Vector4d& u) const {
  const Directions d = directions(basis);
  const Complex z[4] = {Complex(u[0], -u[1]), Complex(u[0], u[1]),
                        Complex(u[2], -u[3]), Complex(u[2], u[3])};
  Vector4cd acc = Vector4cd::Zero();
  for (const auto& m : monomials) {
    const Complex zm = z[m.i] * z[m.j];
    Vector4cd hm = std::exp(m.lambda * theta) * m.K;
    for (int k = 0; k < 4; ++k)
      hm += m.c[k] * std::exp(d.Lambda[k] * theta) * d.vdir[k];
    acc += zm * hm;
  }
  return acc.real();
}

double CmExpansion::max_f_norm() const {
  double mx = 0.0;
  for (const auto& m : monomials) mx = std::max(mx, m.f.norm());
  return mx;
}

NormalForm normal_form_coefficients(const DoubleHopfPoint& hh, const Params& p,
                                    const CentreBasis& basis, const CmExpansion& cm) {
  if (cm.max_f_norm() > 1e-12)
    throw std::runtime_error(
        "normal_form_coefficients: nonzero quadratic terms not supported "
        "(direct cubic projection route)");
  // strong-resonance small divisors
  for (int k1 = 1; k1 + 1 <= 4; ++k1)
    for (int k2 = 1; k1 + k2 <= 4; ++k2)
      if (std::abs(k1 * basis.nu[0] - k2 * basis.nu[1]) < 1e-6)
        throw std::runtime_error("normal_form_coefficients: near strong resonance");

  Params pc = p;
  pc.a = hh.a_c;
  pc.tau = hh.tau_c;
  const DdeSpec sys = dde_spec(pc);
  const Directions d = directions(basis);
  const Vec8c q1 = d.q[0], q1b = d.q[1], q2 = d.q[2], q2b = d.q[3];
  const Complex g11 = 3.0 * (d.wdir[0] * sys.cubic(q1, q1, q1b))(0);
  const Complex g12 = 6.0 * (d.wdir[0] * sys.cubic(q1, q2, q2b))(0);
  const Complex g21 = 6.0 * (d.wdir[2] * sys.cubic(q2, q1, q1b))(0);
  const Complex g22 = 3.0 * (d.wdir[2] * sys.cubic(q2, q2, q2b))(0);

  NormalForm nf;
  nf.nu1 = basis.nu[0];
  nf.nu2 = basis.nu[1];
  nf.a_c = hh.a_c;
  nf.tau_c = hh.tau_c;
  const Complex g[2][2] = {{g11, g12}, {g21, g22}};
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      nf.a[j][k] = 0.25 * g[j][k].real();
      nf.c[j][k] = 0.25 * g[j][k].imag();
    }
  const Eigen::Matrix2d rho = unfolding_rhos(hh, p);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) nf.rho[j][k] = rho(j, k);
  return nf;
}

Eigen::Matrix2d unfolding_rhos(const DoubleHopfPoint& hh, const Params& p) {
  Params pc = p;
  pc.a = hh.a_c;
  pc.tau = hh.tau_c;
  Eigen::Matrix2d rho;
  const Mode modes[2] = {Mode::InPhase, Mode::AntiPhase};
  const double nus[2] = {hh.nu_i, hh.nu_a};
  for (int j = 0; j < 2; ++j) {
    const double s = (modes[j] == Mode::InPhase) ? 1.0 : -1.0;
    const Complex lam(0.0, nus[j]);
    const Complex E = std::exp(-lam * pc.tau);
    const Complex dL = ls::char_fn_dlambda(modes[j], lam, pc);
    const Complex dA = -lam + s * lam * E;
    const Complex dT = -s * pc.a * lam * lam * E;
    rho(j, 0) = (-dA / dL).real();
    rho(j, 1) = (-dT / dL).real();
  }
  return rho;
}

std::optional<Resonance> resonance_check(double nu1, double nu2, int k_max) {
  if (!(nu1 > 0.0) || !(nu2 > 0.0))
    throw std::invalid_argument("resonance_check: frequencies must be positive");
  if (k_max < 1) throw std::invalid_argument("resonance_check: k_max < 1");
  const double ratio = nu1 / nu2;
  std::optional<Resonance> best;
  for (int k2 = 1; k2 <= k_max; ++k2) {
    const long k1l = std::lround(ratio * k2);
    if (k1l < 1 || k1l > k_max) continue;
    const int k1 = int(k1l);
    if (std::gcd(k1, k2) != 1) continue;
    if (std::abs(ratio - double(k1) / double(k2)) > 1e-9) continue;
    if (!best || k1 + k2 < best->k1 + best->k2)
      best = Resonance{k1, k2, k1 + k2 <= 4};
  }
  return best;
}

NormalForm normal_form_at(const DoubleHopfPoint& hh, const Params& p) {
  Params pc = p;
  pc.a = hh.a_c;
  pc.tau = hh.tau_c;
  const DdeSpec sys = dde_spec(pc);
  const CentreBasis basis = centre_basis(hh, sys);
  const CmExpansion cm = solve_h_quadratic(hh, sys, basis);
  return normal_form_coefficients(hh, p, basis, cm);
}

}  // namespace hkb::cm
