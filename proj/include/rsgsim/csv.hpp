#pragma once
// CSV output helpers: full-precision, locale-independent formatting.

#include <string>
#include <vector>

namespace rsgsim::csv {

// Shortest round-trip decimal form ("%.17g" trimmed), "nan" for NaN,
// "inf"/"-inf" for infinities.
std::string fmt(double v);
std::string fmt(std::uint64_t v);

using Row = std::vector<std::string>;

// Writes header + rows, comma-separated, one trailing newline per line.
// Throws rsgsim::IoError if the file cannot be written.
void write_file(const std::string& path, const Row& header, const std::vector<Row>& rows);

}  // namespace rsgsim::csv
