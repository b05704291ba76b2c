// CSV formatting and writing.

#include "rsgsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "rsgsim/config_io.hpp"

namespace rsgsim::csv {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Shortest representation that round-trips exactly.
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

void write_file(const std::string& path, const Row& header, const std::vector<Row>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file for writing: " + path);
  auto emit = [&out](const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  emit(header);
  for (const Row& r : rows) emit(r);
  out.flush();
  if (!out.good()) throw IoError("failed writing output file: " + path);
}

}  // namespace rsgsim::csv
