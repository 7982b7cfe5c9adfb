#include "core/linear_stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hkb::linstab {

namespace {
double mode_sign(Mode m) { return m == Mode::InPhase ? 1.0 : -1.0; }
constexpr double kBoundaryTol = 1e-10;
}  // namespace

Complex char_fn(Mode mode, Complex lambda, const Params& p) {
  const double s = mode_sign(mode);
  return lambda * lambda - (p.gamma + p.a) * lambda + p.omega * p.omega +
         s * p.a * lambda * std::exp(-lambda * p.tau);
}

Complex char_fn_dlambda(Mode mode, Complex lambda, const Params& p) {
  const double s = mode_sign(mode);
  const Complex e = std::exp(-lambda * p.tau);
  return 2.0 * lambda - (p.gamma + p.a) + s * p.a * e * (1.0 - lambda * p.tau);
}

std::optional<CrossingFrequencies> critical_frequencies(const Params& p) {
  const double X = p.a * p.a + 2.0 * p.omega * p.omega -
                   (p.gamma + p.a) * (p.gamma + p.a);
  if (X <= 0.0) return std::nullopt;
  const double disc = X * X - 4.0 * std::pow(p.omega, 4);
  if (disc <= 0.0) return std::nullopt;
  const double r = std::sqrt(disc);
  return CrossingFrequencies{std::sqrt(0.5 * (X + r)), std::sqrt(0.5 * (X - r))};
}

namespace {
// theta in [0, 2pi) solving cos th = s(gamma+a)/a, sin th = s(nu^2-w^2)/(a nu).
double theta_angle(double nu, const Params& p, Mode mode) {
  const double s = mode_sign(mode);
  const double c = s * (p.gamma + p.a) / p.a;
  const double sn = s * (nu * nu - p.omega * p.omega) / (p.a * nu);
  double th = std::atan2(sn, c);
  if (th < 0.0) th += 2.0 * EIGEN_PI;
  return th;
}
}  // namespace

std::optional<CrossingDelaySet> crossing_delays(const Params& p, Mode mode, int n_max) {
  if (n_max < 0) throw std::invalid_argument("crossing_delays: n_max < 0");
  if (p.a == 0.0)
    throw std::invalid_argument("crossing_delays: a = 0, theta equations undefined");
  auto cf = critical_frequencies(p);
  if (!cf) return std::nullopt;
  CrossingDelaySet out;
  out.mode = mode;
  out.n_max = n_max;
  out.theta1 = theta_angle(cf->nu_plus, p, mode);
  out.theta2 = theta_angle(cf->nu_minus, p, mode);
  out.taus_destabilizing.reserve(n_max + 1);
  out.taus_stabilizing.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    out.taus_destabilizing.push_back((out.theta1 + 2.0 * EIGEN_PI * n) / cf->nu_plus);
    out.taus_stabilizing.push_back((out.theta2 + 2.0 * EIGEN_PI * n) / cf->nu_minus);
  }
  return out;
}

int crossing_direction(const Params& p, Which which) {
  if (!critical_frequencies(p))
    throw std::domain_error("crossing_direction: no imaginary-axis crossings");
  return which == Which::Plus ? 1 : -1;
}

int count_unstable_roots(const Params& p, Mode mode) {
  // tau = 0 closed system: l^2 - g0 l + w^2 with g0 = gamma (in-phase) or gamma + 2a.
  const double g0 = (mode == Mode::InPhase) ? p.gamma : p.gamma + 2.0 * p.a;
  if (std::abs(g0) < kBoundaryTol)
    throw std::domain_error("count_unstable_roots: on the tau = 0 Hopf boundary");
  int count = g0 > 0.0 ? 2 : 0;
  auto cf = critical_frequencies(p);
  if (!cf || p.a == 0.0) return count;
  const double th1 = theta_angle(cf->nu_plus, p, mode);
  const double th2 = theta_angle(cf->nu_minus, p, mode);
  for (int n = 0;; ++n) {
    const double t1 = (th1 + 2.0 * EIGEN_PI * n) / cf->nu_plus;
    const double t2 = (th2 + 2.0 * EIGEN_PI * n) / cf->nu_minus;
    if (t1 > p.tau + kBoundaryTol && t2 > p.tau + kBoundaryTol) break;
    if (std::abs(t1 - p.tau) <= kBoundaryTol || std::abs(t2 - p.tau) <= kBoundaryTol)
      throw std::domain_error("count_unstable_roots: tau within 1e-10 of a crossing delay");
    if (t1 <= p.tau) count += 2;
    if (t2 <= p.tau) count -= 2;
  }
  return count;
}

std::vector<Complex> rightmost_roots(const Params& p, Mode mode, int count) {
  if (count < 1) throw std::invalid_argument("rightmost_roots: count < 1");
  std::vector<Complex> roots;
  auto push_unique = [&roots](Complex r) {
    for (const auto& q : roots)
      if (std::abs(q - r) < 1e-6) return;
    roots.push_back(r);
  };
  if (p.tau == 0.0) {
    // quadratic l^2 - g0 l + w^2
    const double g0 = (mode == Mode::InPhase) ? p.gamma : p.gamma + 2.0 * p.a;
    const Complex disc = std::sqrt(Complex(g0 * g0 - 4.0 * p.omega * p.omega, 0.0));
    push_unique(0.5 * (g0 + disc));
    push_unique(0.5 * (g0 - disc));
  } else {
    const double scale = std::max({1.0, p.omega * p.omega, std::abs(p.a)});
    for (double re = -20.0; re <= 5.0 + 1e-9; re += 2.5) {
      for (double im = 0.0; im <= 60.0 + 1e-9; im += 1.5) {
        Complex l(re, im);
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
          const Complex f = char_fn(mode, l, p);
          if (std::abs(f) < 1e-12 * scale) {
            ok = true;
            break;
          }
          const Complex df = char_fn_dlambda(mode, l, p);
          if (std::abs(df) < 1e-14) break;
          const Complex step = f / df;
          l -= step;
          if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) break;
          if (std::abs(step) < 1e-15 * (1.0 + std::abs(l))) {
            ok = std::abs(char_fn(mode, l, p)) < 1e-10 * scale;
            break;
          }
        }
        if (ok && std::abs(char_fn(mode, l, p)) <= 1e-10 * scale) {
          if (std::abs(l.imag()) < 1e-9) l = Complex(l.real(), 0.0);
          push_unique(l);
          if (l.imag() != 0.0) push_unique(std::conj(l));
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return std::abs(x.imag()) < std::abs(y.imag());
  });
  if ((int)roots.size() < count)
    throw std::runtime_error("rightmost_roots: found fewer roots than requested");
  roots.resize(count);
  return roots;
}

GammaABoundary gamma_a_boundary(double tau, double omega, Mode mode,
                                double nu_lo, double nu_hi, int samples) {
  if (!(nu_lo > 0.0) || !(nu_hi > nu_lo))
    throw std::invalid_argument("gamma_a_boundary: bad nu range");
  GammaABoundary out;
  const double s = mode_sign(mode);
  for (int i = 0; i < samples; ++i) {
    const double nu = nu_lo + (nu_hi - nu_lo) * i / (samples - 1);
    const double sn = std::sin(nu * tau);
    if (std::abs(sn) < 1e-12) {
      out.singular_nu.push_back(nu);
      continue;
    }
    // a = s (nu^2 - w^2)/(nu sin(nu tau)), gamma = a (s cos(nu tau) - 1)
    const double a = s * (nu * nu - omega * omega) / (nu * sn);
    const double gamma = a * (s * std::cos(nu * tau) - 1.0);
    out.points.push_back({nu, gamma, a});
  }
  // special-case lines nu tau = n pi (nu = omega): gamma = a (s (-1)^n - 1)
  if (tau > 0.0) {
    const int n = (int)std::lround(omega * tau / EIGEN_PI);
    for (int k = std::max(1, n - 1); k <= n + 1; ++k) {
      if (std::abs(omega * tau - k * EIGEN_PI) < 1e-9) {
        const double slope = s * ((k % 2 == 0) ? 1.0 : -1.0) - 1.0;
        out.special_lines.push_back({k, slope});
      }
    }
  }
  return out;
}

double turning_point_indicator(const Params& p, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("turning_point_indicator: nu <= 0");
  return 1.0 + p.omega * p.omega / (nu * nu) - (p.gamma + p.a) * p.tau;
}

}  // namespace hkb::linstab
