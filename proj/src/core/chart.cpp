#include "core/chart.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "core/io_util.hpp"
#include "core/linear_stability.hpp"
#include "json.hpp"

namespace hkb::chart {

namespace ls = hkb::linstab;

RegionClass classify_point(const Params& p) {
  try {
    const bool in_stable = ls::count_unstable_roots(p, Mode::InPhase) == 0;
    const bool anti_stable = ls::count_unstable_roots(p, Mode::AntiPhase) == 0;
    if (in_stable && anti_stable) return RegionClass::Both;
    if (in_stable) return RegionClass::InOnly;
    if (anti_stable) return RegionClass::AntiOnly;
    return RegionClass::Neither;
  } catch (const std::domain_error&) {
    return RegionClass::Boundary;
  }
}

Params StabilityChart::cell_params(int ix, int iy) const {
  Params p = spec.fixed;
  const double x = spec.x_lo + (spec.x_hi - spec.x_lo) * (ix + 0.5) / spec.nx;
  const double y = spec.y_lo + (spec.y_hi - spec.y_lo) * (iy + 0.5) / spec.ny;
  switch (spec.plane) {
    case Plane::ATau: p.a = x; p.tau = y; break;
    case Plane::GammaTau: p.gamma = x; p.tau = y; break;
    case Plane::GammaA: p.gamma = x; p.a = y; break;
  }
  return p;
}

namespace {

void extract_tau_plane_boundaries(const ChartSpec& spec, int samples,
                                  std::vector<BoundaryCurve>& out) {
  // x axis is a or gamma; y axis is tau. One polyline per (mode, family, n).
  for (Mode mode : {Mode::InPhase, Mode::AntiPhase}) {
    const int n_guess = 32;
    for (int family = 0; family < 2; ++family) {
      for (int n = 0; n <= n_guess; ++n) {
        BoundaryCurve bc;
        bc.mode = mode;
        bc.direction = family == 0 ? +1 : -1;
        bool any_inside = false;
        for (int i = 0; i < samples; ++i) {
          const double x = spec.x_lo + (spec.x_hi - spec.x_lo) * i / (samples - 1);
          Params p = spec.fixed;
          if (spec.plane == Plane::ATau) p.a = x; else p.gamma = x;
          if (p.a == 0.0) continue;
          auto cd = ls::crossing_delays(p, mode, n);
          if (!cd) continue;
          const double tau = family == 0 ? cd->taus_destabilizing[n]
                                         : cd->taus_stabilizing[n];
          if (tau < spec.y_lo || tau > spec.y_hi) continue;
          bc.points.push_back({x, tau});
          any_inside = true;
        }
        if (any_inside) out.push_back(std::move(bc));
      }
    }
  }
}

void extract_gamma_a_boundaries(const ChartSpec& spec, int samples,
                                std::vector<BoundaryCurve>& out) {
  const double tau = spec.fixed.tau, omega = spec.fixed.omega;
  for (Mode mode : {Mode::InPhase, Mode::AntiPhase}) {
    auto gb = ls::gamma_a_boundary(tau, omega, mode, 1e-3, 6.0 * omega, 4 * samples);
    BoundaryCurve bc;
    bc.mode = mode;
    bc.direction = 0;
    double last_nu = -1.0;
    for (const auto& pt : gb.points) {
      const bool inside = pt.gamma >= spec.x_lo && pt.gamma <= spec.x_hi &&
                          pt.a >= spec.y_lo && pt.a <= spec.y_hi;
      if (!inside || (last_nu >= 0.0 && pt.nu - last_nu > 2.0 * (6.0 * omega) / (4 * samples))) {
        // break the polyline across out-of-range gaps and singular skips
        if (bc.points.size() > 1) out.push_back(bc);
        bc.points.clear();
      }
      if (inside) {
        bc.points.push_back({pt.gamma, pt.a});
        last_nu = pt.nu;
      } else {
        last_nu = -1.0;
      }
    }
    if (bc.points.size() > 1) out.push_back(std::move(bc));
    for (const auto& line : gb.special_lines) {
      BoundaryCurve lc;
      lc.mode = mode;
      lc.direction = 0;
      for (int i = 0; i < samples; ++i) {
        const double a = spec.y_lo + (spec.y_hi - spec.y_lo) * i / (samples - 1);
        const double gamma = line.slope * a;
        if (gamma >= spec.x_lo && gamma <= spec.x_hi) lc.points.push_back({gamma, a});
      }
      if (lc.points.size() > 1) out.push_back(std::move(lc));
    }
  }
}

}  // namespace

StabilityChart stability_chart(const ChartSpec& spec, int boundary_samples) {
  if (spec.nx <= 0 || spec.ny <= 0)
    throw std::invalid_argument("stability_chart: non-positive resolution");
  if (!(spec.x_hi > spec.x_lo) || !(spec.y_hi > spec.y_lo))
    throw std::invalid_argument("stability_chart: empty range");
  StabilityChart ch;
  ch.spec = spec;
  ch.grid.assign(size_t(spec.nx) * spec.ny, RegionClass::Neither);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  std::atomic<int> next_row{0};
  auto worker = [&]() {
    for (;;) {
      const int iy = next_row.fetch_add(1);
      if (iy >= spec.ny) return;
      for (int ix = 0; ix < spec.nx; ++ix)
        ch.grid[size_t(iy) * spec.nx + ix] = classify_point(ch.cell_params(ix, iy));
    }
  };
  for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (spec.plane == Plane::GammaA)
    extract_gamma_a_boundaries(spec, boundary_samples, ch.boundaries);
  else
    extract_tau_plane_boundaries(spec, boundary_samples, ch.boundaries);
  return ch;
}

std::string StabilityChart::to_csv() const {
  std::ostringstream os;
  os << "y\\x";
  for (int ix = 0; ix < spec.nx; ++ix)
    os << "," << io::fmt(spec.x_lo + (spec.x_hi - spec.x_lo) * (ix + 0.5) / spec.nx);
  os << "\n";
  for (int iy = 0; iy < spec.ny; ++iy) {
    os << io::fmt(spec.y_lo + (spec.y_hi - spec.y_lo) * (iy + 0.5) / spec.ny);
    for (int ix = 0; ix < spec.nx; ++ix)
      os << "," << int(at(ix, iy));
    os << "\n";
  }
  return os.str();
}

std::string StabilityChart::to_json() const {
  nlohmann::json j;
  j["plane"] = spec.plane == Plane::ATau ? "a_tau"
               : spec.plane == Plane::GammaTau ? "gamma_tau" : "gamma_a";
  j["boundaries"] = nlohmann::json::array();
  for (const auto& bc : boundaries) {
    nlohmann::json c;
    c["mode"] = mode_name(bc.mode);
    c["direction"] = bc.direction;
    auto pts = nlohmann::json::array();
    for (const auto& pt : bc.points) pts.push_back({pt[0], pt[1]});
    c["points"] = std::move(pts);
    j["boundaries"].push_back(std::move(c));
  }
  return j.dump(1);
}

std::string StabilityChart::to_svg() const {
  const int W = 800, H = 640, ml = 60, mb = 50, mt = 20, mr = 20;
  const double pw = W - ml - mr, ph = H - mt - mb;
  auto px = [&](double x) { return ml + pw * (x - spec.x_lo) / (spec.x_hi - spec.x_lo); };
  auto py = [&](double y) { return mt + ph * (spec.y_hi - y) / (spec.y_hi - spec.y_lo); };
  static const char* fill[] = {"#ffffff", "#9db8e8", "#e89d9d", "#b89de8", "#000000"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
     << H << "\">\n";
  const double cw = pw / spec.nx, chh = ph / spec.ny;
  // run-length merge equal cells along each row
  for (int iy = 0; iy < spec.ny; ++iy) {
    int ix = 0;
    while (ix < spec.nx) {
      int run = 1;
      while (ix + run < spec.nx && at(ix + run, iy) == at(ix, iy)) ++run;
      const int code = int(at(ix, iy));
      if (code != 0)  // white background cells skipped
        os << "<rect x=\"" << io::fmt(ml + cw * ix) << "\" y=\""
           << io::fmt(mt + ph - chh * (iy + 1)) << "\" width=\"" << io::fmt(cw * run)
           << "\" height=\"" << io::fmt(chh) << "\" fill=\"" << fill[code] << "\"/>\n";
      ix += run;
    }
  }
  for (const auto& bc : boundaries) {
    os << "<polyline fill=\"none\" stroke=\""
       << (bc.mode == Mode::InPhase ? "#1040c0" : "#c01010")
       << "\" stroke-width=\"1.2\" points=\"";
    for (const auto& pt : bc.points)
      os << io::fmt(px(pt[0])) << "," << io::fmt(py(pt[1])) << " ";
    os << "\"/>\n";
  }
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << io::fmt(pw)
     << "\" height=\"" << io::fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double x = spec.x_lo + (spec.x_hi - spec.x_lo) * k / 4;
    const double y = spec.y_lo + (spec.y_hi - spec.y_lo) * k / 4;
    os << "<text x=\"" << io::fmt(px(x)) << "\" y=\"" << H - mb + 20
       << "\" font-size=\"12\" text-anchor=\"middle\">" << io::fmt(x) << "</text>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << io::fmt(py(y) + 4)
       << "\" font-size=\"12\" text-anchor=\"end\">" << io::fmt(y) << "</text>\n";
  }
  const char* xlabel = spec.plane == Plane::ATau ? "a" : "gamma";
  const char* ylabel = spec.plane == Plane::GammaA ? "a" : "tau";
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 8
     << "\" font-size=\"14\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"14\" y=\"" << mt + ph / 2
     << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << mt + ph / 2 << ")\">" << ylabel << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

int chart_verify(const StabilityChart& chart, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dx(0, chart.spec.nx - 1), dy(0, chart.spec.ny - 1);
  int mismatches = 0;
  for (int k = 0; k < n; ++k) {
    const int ix = dx(rng), iy = dy(rng);
    const RegionClass cls = chart.at(ix, iy);
    if (cls == RegionClass::Boundary) continue;
    const Params p = chart.cell_params(ix, iy);
    if (p.a == 0.0) continue;
    bool stable[2];
    bool failed = false;
    for (Mode m : {Mode::InPhase, Mode::AntiPhase}) {
      try {
        auto roots = ls::rightmost_roots(p, m, 1);
        stable[m == Mode::InPhase ? 0 : 1] = roots[0].real() < 0.0;
      } catch (const std::exception&) {
        failed = true;  // root finder failure on an extreme cell; skip
      }
    }
    if (failed) continue;
    RegionClass want = stable[0] && stable[1] ? RegionClass::Both
                       : stable[0]            ? RegionClass::InOnly
                       : stable[1]            ? RegionClass::AntiOnly
                                              : RegionClass::Neither;
    if (want != cls) ++mismatches;
  }
  return mismatches;
}

}  // namespace hkb::chart
