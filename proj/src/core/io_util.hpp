// Small file/formatting helpers shared by the export paths.
#pragma once

#include <string>
#include <vector>

namespace hkb::io {

// Fixed "%.12g" formatting so repeated runs are byte-identical.
std::string fmt(double v);

// Write via temp file + rename.
void atomic_write(const std::string& path, const std::string& content);

// Minimal CSV assembly: header + rows of preformatted cells.
std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

}  // namespace hkb::io
