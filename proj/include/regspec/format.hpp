#pragma once

#include <string>

namespace regspec {

/// Shortest decimal text that parses back to exactly x. Locale-independent,
/// so artifacts are byte-stable.
std::string format_double(double x);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

}  // namespace regspec
