#include "core/params.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "core/io_util.hpp"

namespace hkb {

bool Params::valid() const {
  for (double v : {gamma, alpha, beta, a, b, omega, tau})
    if (!std::isfinite(v)) return false;
  return omega > 0.0 && tau >= 0.0;
}

Params params_from_string(const std::string& text) {
  Params p;
  std::map<std::string, double*> keys = {
      {"gamma", &p.gamma}, {"alpha", &p.alpha}, {"beta", &p.beta},
      {"a", &p.a},         {"b", &p.b},         {"omega", &p.omega},
      {"tau", &p.tau}};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("params: bad line " + std::to_string(lineno));
      continue;
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto it = keys.find(key);
    if (it == keys.end())
      throw std::invalid_argument("params: unknown key '" + key + "'");
    size_t used = 0;
    double x = std::stod(val, &used);
    if (used != val.size())
      throw std::invalid_argument("params: bad value for '" + key + "'");
    *it->second = x;
  }
  if (!p.valid()) throw std::invalid_argument("params: invalid values");
  return p;
}

Params params_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("params: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return params_from_string(ss.str());
}

std::string params_to_string(const Params& p) {
  std::ostringstream os;
  os << "gamma = " << io::fmt(p.gamma) << "\n"
     << "alpha = " << io::fmt(p.alpha) << "\n"
     << "beta = " << io::fmt(p.beta) << "\n"
     << "a = " << io::fmt(p.a) << "\n"
     << "b = " << io::fmt(p.b) << "\n"
     << "omega = " << io::fmt(p.omega) << "\n"
     << "tau = " << io::fmt(p.tau) << "\n";
  return os.str();
}

void params_to_file(const Params& p, const std::string& path) {
  io::atomic_write(path, params_to_string(p));
}

}  // namespace hkb
