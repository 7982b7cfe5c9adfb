// Stability charts: grid classification of the two normal modes over a
// parameter plane plus analytic boundary curves, with CSV/JSON/SVG export.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/params.hpp"

namespace hkb::chart {

enum class Plane { ATau, GammaTau, GammaA };

enum class RegionClass : std::uint8_t {
  Neither = 0,   // both modes unstable
  InOnly = 1,    // eta^(i) = 0 stable only
  AntiOnly = 2,  // eta^(a) = 0 stable only
  Both = 3,      // both stable
  Boundary = 4,  // cell centre within 1e-10 of a crossing (explicit, not guessed)
};

struct ChartSpec {
  Plane plane = Plane::ATau;
  double x_lo = -10.0, x_hi = 10.0;  // a or gamma
  double y_lo = 0.0, y_hi = 2.0;     // tau, or a for the (gamma,a) plane
  int nx = 400, ny = 400;
  Params fixed;  // parameters not varied by the plane
};

struct BoundaryCurve {
  Mode mode;
  int direction;  // +1 destabilising (nu_plus), -1 stabilising (nu_minus); 0 special line
  std::vector<std::array<double, 2>> points;  // (x, y) in plane coordinates
};

struct StabilityChart {
  ChartSpec spec;
  std::vector<RegionClass> grid;  // row-major, grid[iy*nx+ix], cell centres
  std::vector<BoundaryCurve> boundaries;

  RegionClass at(int ix, int iy) const { return grid[size_t(iy) * spec.nx + ix]; }
  Params cell_params(int ix, int iy) const;  // parameters at the cell centre

  std::string to_csv() const;
  std::string to_json() const;
  std::string to_svg() const;
};

// Classify every cell (parallel over rows; deterministic) and extract the
// analytic boundary polylines.
StabilityChart stability_chart(const ChartSpec& spec, int boundary_samples = 2000);

// Classification of a single parameter point.
RegionClass classify_point(const Params& p);

// Spot-check `n` random cells against rightmost-root counting; returns the
// number of mismatches (0 = pass).
int chart_verify(const StabilityChart& chart, int n, unsigned seed);

}  // namespace hkb::chart
