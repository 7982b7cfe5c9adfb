#include "core/unfolding.hpp"

#include <cmath>
#include <stdexcept>

namespace hkb::unfolding {

UnfoldingPoint unfolding_params(const cm::NormalForm& nf, double a, double tau) {
  const double da = a - nf.a_c, dt = tau - nf.tau_c;
  return {nf.rho[0][0] * da + nf.rho[0][1] * dt,
          nf.rho[1][0] * da + nf.rho[1][1] * dt};
}

namespace {

Stability classify_jacobian(double j11, double j12, double j21, double j22) {
  const double det = j11 * j22 - j12 * j21;
  const double tr = j11 + j22;
  if (det < 0.0) return Stability::Saddle;
  return tr < 0.0 ? Stability::Sink : Stability::Source;
}

// Jacobian of (r1', r2') at (r1, r2).
Stability state_stability(const cm::NormalForm& nf, const UnfoldingPoint& up,
                          double r1, double r2) {
  const double j11 = up.b1 + 3.0 * nf.a[0][0] * r1 * r1 + nf.a[0][1] * r2 * r2;
  const double j12 = 2.0 * nf.a[0][1] * r1 * r2;
  const double j21 = 2.0 * nf.a[1][0] * r1 * r2;
  const double j22 = up.b2 + nf.a[1][0] * r1 * r1 + 3.0 * nf.a[1][1] * r2 * r2;
  return classify_jacobian(j11, j12, j21, j22);
}

}  // namespace

std::vector<SteadyState> steady_states(const cm::NormalForm& nf, const UnfoldingPoint& up) {
  const double det = nf.a[0][0] * nf.a[1][1] - nf.a[0][1] * nf.a[1][0];
  if (std::abs(det) < 1e-12)
    throw std::domain_error("steady_states: degenerate amplitude system (det ~ 0)");
  std::vector<SteadyState> out;
  out.push_back({StateKind::Origin, 0.0, 0.0, state_stability(nf, up, 0.0, 0.0)});
  if (-up.b1 / nf.a[0][0] > 0.0) {
    const double r1 = std::sqrt(-up.b1 / nf.a[0][0]);
    out.push_back({StateKind::InPhaseLC, r1, 0.0, state_stability(nf, up, r1, 0.0)});
  }
  if (-up.b2 / nf.a[1][1] > 0.0) {
    const double r2 = std::sqrt(-up.b2 / nf.a[1][1]);
    out.push_back({StateKind::AntiPhaseLC, 0.0, r2, state_stability(nf, up, 0.0, r2)});
  }
  const double s1 = (nf.a[0][1] * up.b2 - nf.a[1][1] * up.b1) / det;
  const double s2 = (nf.a[1][0] * up.b1 - nf.a[0][0] * up.b2) / det;
  if (s1 > 0.0 && s2 > 0.0) {
    const double r1 = std::sqrt(s1), r2 = std::sqrt(s2);
    out.push_back({StateKind::QuasiPeriodic, r1, r2, state_stability(nf, up, r1, r2)});
  }
  return out;
}

std::array<SeparatingLine, 4> separating_lines(const cm::NormalForm& nf) {
  Eigen::Matrix2d rho;
  rho << nf.rho[0][0], nf.rho[0][1], nf.rho[1][0], nf.rho[1][1];
  if (std::abs(rho.determinant()) < 1e-14)
    throw std::runtime_error("separating_lines: rho matrix is singular");
  const Eigen::Matrix2d rho_inv = rho.inverse();
  std::array<SeparatingLine, 4> out;
  const Eigen::Vector2d normals[4] = {
      {1.0, 0.0},                       // b1 = 0
      {0.0, 1.0},                       // b2 = 0
      {-nf.a[1][1], nf.a[0][1]},        // a12 b2 - a22 b1 = 0
      {nf.a[1][0], -nf.a[0][0]},        // a21 b1 - a11 b2 = 0
  };
  for (int k = 0; k < 4; ++k) {
    out[k].index = k + 1;
    out[k].normal_b = normals[k];
    const Eigen::Vector2d dir_b(-normals[k][1], normals[k][0]);
    out[k].dir_atau = (rho_inv * dir_b).normalized();
  }
  return out;
}

Region classify_region(const cm::NormalForm& nf, const UnfoldingPoint& up) {
  const double a11 = nf.a[0][0], a12 = nf.a[0][1], a21 = nf.a[1][0], a22 = nf.a[1][1];
  const double det = a11 * a22 - a12 * a21;
  if (!(a11 < 0.0 && a22 < 0.0 && det < 0.0 && a12 < 0.0 && a21 < 0.0))
    throw std::runtime_error("classify_region: coefficient sign pattern outside the supported class");
  const double L1 = up.b1;
  const double L2 = up.b2;
  const double L3 = a12 * up.b2 - a22 * up.b1;
  const double L4 = a21 * up.b1 - a11 * up.b2;
  const double scale = std::max({1e-300, std::abs(up.b1), std::abs(up.b2)});
  for (double L : {L1, L2, L3 / (std::abs(a12) + std::abs(a22)),
                   L4 / (std::abs(a21) + std::abs(a11))})
    if (std::abs(L) <= 1e-12 * scale)
      throw std::domain_error("classify_region: point lies on a separating line");
  if (L1 < 0.0 && L2 < 0.0) return Region::I;
  if (L1 > 0.0 && L2 < 0.0) return Region::II;
  if (L1 < 0.0 && L2 > 0.0) return Region::VI;
  // first quadrant: split by lines 3 and 4
  if (L3 > 0.0) return Region::III;
  if (L4 > 0.0) return Region::V;
  return Region::IV;
}

std::vector<DiagramRow> one_param_diagram(const cm::NormalForm& nf, Axis axis,
                                          double lo, double hi, double fixed_other,
                                          int samples) {
  if (samples < 2 || !(hi > lo))
    throw std::invalid_argument("one_param_diagram: bad range");
  std::vector<DiagramRow> out;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1);
    const double a = axis == Axis::A ? t : fixed_other;
    const double tau = axis == Axis::Tau ? t : fixed_other;
    const UnfoldingPoint up = unfolding_params(nf, a, tau);
    for (const auto& st : steady_states(nf, up)) {
      out.push_back({t, st.kind, st.r1, st.r2,
                     std::sqrt(st.r1 * st.r1 + st.r2 * st.r2), st.stability});
    }
  }
  return out;
}

}  // namespace hkb::unfolding
