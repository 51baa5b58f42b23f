#pragma once

#include <string>
#include <vector>

namespace erbm {

/// Floats are printed with 17 significant digits everywhere so that output
/// files re-parse to the exact same doubles.
std::string fmt_double(double v);

std::string csv_row(const std::vector<std::string>& cells);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace erbm
