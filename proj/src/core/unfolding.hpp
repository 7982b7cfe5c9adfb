// Unfolding of the double-Hopf normal form: steady states, separating lines,
// region classification I-VI, and one-parameter bifurcation diagrams.
#pragma once

#include <vector>

#include "core/centre_manifold.hpp"

namespace hkb::unfolding {

struct UnfoldingPoint {
  double b1 = 0.0, b2 = 0.0;
};

// Linear map through (a_c, tau_c): b_j = rho_j1 (a - a_c) + rho_j2 (tau - tau_c).
UnfoldingPoint unfolding_params(const cm::NormalForm& nf, double a, double tau);

enum class StateKind { Origin, InPhaseLC, AntiPhaseLC, QuasiPeriodic };
enum class Stability { Sink, Saddle, Source };

struct SteadyState {
  StateKind kind;
  double r1 = 0.0, r2 = 0.0;
  Stability stability;
};

// All steady states of the amplitude equations at an unfolding point, with
// stability from the 2x2 Jacobian. Throws std::domain_error when
// a11 a22 - a12 a21 is within 1e-12 of zero.
std::vector<SteadyState> steady_states(const cm::NormalForm& nf, const UnfoldingPoint& up);

struct SeparatingLine {
  int index;                  // 1..4
  Eigen::Vector2d normal_b;   // line is normal_b . (b1,b2) = 0
  Eigen::Vector2d dir_atau;   // tangent direction mapped to (a, tau)
};

// Lines 1-4 through the origin of (b1,b2) space; throws when rho is singular.
std::array<SeparatingLine, 4> separating_lines(const cm::NormalForm& nf);

enum class Region { I = 1, II, III, IV, V, VI };

// Region of an unfolding point; throws std::domain_error within 1e-12 of a
// separating line (relative to |b|).
Region classify_region(const cm::NormalForm& nf, const UnfoldingPoint& up);

struct DiagramRow {
  double param;   // a or tau
  StateKind kind;
  double r1, r2;
  double amplitude;  // ||x|| RMS proxy, sqrt(r1^2 + r2^2)
  Stability stability;
};

enum class Axis { A, Tau };

std::vector<DiagramRow> one_param_diagram(const cm::NormalForm& nf, Axis axis,
                                          double lo, double hi, double fixed_other,
                                          int samples = 201);

}  // namespace hkb::unfolding
