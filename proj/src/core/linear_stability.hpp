// Analytic stability machinery for the linear delayed HKB equation
//   eta'' - (gamma+a) eta' + w^2 eta = -/+ a eta'(t-tau),
// characteristic function Delta(l) = l^2 - (gamma+a) l + w^2 +/- a l e^{-l tau}
// (upper sign in-phase, lower anti-phase).
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "core/params.hpp"

namespace hkb::linstab {

using Complex = std::complex<double>;

// Characteristic function and its lambda-derivative for one normal mode.
Complex char_fn(Mode mode, Complex lambda, const Params& p);
Complex char_fn_dlambda(Mode mode, Complex lambda, const Params& p);

struct CrossingFrequencies {
  double nu_plus;   // destabilising crossings (rho_tau > 0)
  double nu_minus;  // stabilising crossings  (rho_tau < 0)
};

// Both imaginary-axis crossing frequencies, when conditions
// (a) a^2 + 2 w^2 - (gamma+a)^2 > 0 and (b) (...)^2 > 4 w^4 hold strictly.
std::optional<CrossingFrequencies> critical_frequencies(const Params& p);

struct CrossingDelaySet {
  Mode mode;
  double theta1 = 0.0, theta2 = 0.0;       // in [0, 2pi)
  std::vector<double> taus_destabilizing;  // tau_{n,1} = (theta1 + 2 pi n)/nu_plus
  std::vector<double> taus_stabilizing;    // tau_{n,2} = (theta2 + 2 pi n)/nu_minus
  int n_max = 0;
};

// Crossing delays for n = 0..n_max. Empty when no crossing frequencies exist;
// throws std::invalid_argument when a == 0 (theta equations undefined).
std::optional<CrossingDelaySet> crossing_delays(const Params& p, Mode mode, int n_max);

enum class Which { Plus, Minus };

// Sign of Re(d lambda/d tau) at the crossing: +1 for nu_plus, -1 for nu_minus.
int crossing_direction(const Params& p, Which which);

// Number of characteristic roots with positive real part, by Kuang switch
// counting from the tau = 0 state. Throws std::domain_error when the point is
// within 1e-10 of a crossing delay (or exactly on the tau = 0 boundary).
int count_unstable_roots(const Params& p, Mode mode);

// The `count` roots with largest real parts, each polished to |Delta| <= 1e-10.
// Conjugate partners of complex roots are included.
std::vector<Complex> rightmost_roots(const Params& p, Mode mode, int count);

// Parametric Re(lambda)=0 curve in the (gamma, a) plane for fixed tau, omega.
struct GammaABoundary {
  struct Point {
    double nu, gamma, a;
  };
  std::vector<Point> points;        // generic branch, singular nus skipped
  std::vector<double> singular_nu;  // |sin(nu tau)| < 1e-12 flagged points
  struct Line {
    int n;
    double slope;  // gamma = slope * a at nu = omega, nu tau = n pi
  };
  std::vector<Line> special_lines;
};

GammaABoundary gamma_a_boundary(double tau, double omega, Mode mode,
                                double nu_lo, double nu_hi, int samples = 2000);

// xi = 1 + w^2/nu^2 - (gamma+a) tau; da/dgamma = 0 on the boundary iff xi = 0.
double turning_point_indicator(const Params& p, double nu);

}  // namespace hkb::linstab
