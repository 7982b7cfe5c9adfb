// Model parameters and shared scalar types for the delayed HKB toolkit.
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace hkb {

using State = Eigen::Vector4d;  // (x1, x2, x1dot, x2dot)
using Vec8c = Eigen::Matrix<std::complex<double>, 8, 1>;

enum class Mode { InPhase, AntiPhase };

inline const char* mode_name(Mode m) {
  return m == Mode::InPhase ? "in-phase" : "anti-phase";
}

struct Params {
  double gamma = 0.641;    // linear damping [1/s]
  double alpha = 12.457;   // Van der Pol coefficient
  double beta = 0.007095;  // Rayleigh coefficient (figure/table captions; 0.007905 in one text passage)
  double a = -0.2;         // linear coupling
  double b = 1.0;          // nonlinear coupling
  double omega = 2.6 * EIGEN_PI;  // pacing frequency [rad/s]
  double tau = 0.1926;     // delay [s]

  bool valid() const;
};

// Flat key-value config format: one "key = value" per line, '#' comments.
Params params_from_string(const std::string& text);
Params params_from_file(const std::string& path);
std::string params_to_string(const Params& p);
void params_to_file(const Params& p, const std::string& path);

}  // namespace hkb
