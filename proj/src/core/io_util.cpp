#include "core/io_util.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "core/estimate.hpp"

namespace erbm {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::analytic: return "analytic";
    case Backend::series: return "series";
    case Backend::chain: return "chain";
    case Backend::mc: return "mc";
    case Backend::grid: return "grid";
  }
  return "unknown";
}

Backend backend_from_name(const std::string& s) {
  if (s == "analytic") return Backend::analytic;
  if (s == "series") return Backend::series;
  if (s == "chain") return Backend::chain;
  if (s == "mc") return Backend::mc;
  if (s == "grid") return Backend::grid;
  throw std::invalid_argument("unknown backend: " + s);
}

}  // namespace erbm
