#include "core/io_util.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hkb::io {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << content;
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "");
  os << "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i)
      os << r[i] << (i + 1 < r.size() ? "," : "");
    os << "\n";
  }
  return os.str();
}

}  // namespace hkb::io
