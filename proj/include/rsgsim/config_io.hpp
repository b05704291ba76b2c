#pragma once
// JSON configuration parsing. The schema is documented in README.md.

#include <stdexcept>
#include <string>

#include "rsgsim/types.hpp"

namespace rsgsim {

// File-system problem (missing file, unreadable, unwritable output); the
// CLI maps this to exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a JSON config file into a SimConfig (not yet validated).
// Throws IoError if the file cannot be read and ConfigError on JSON
// syntax errors or schema violations, naming the offending field.
SimConfig parse_config_file(const std::string& path);

// Same, from an in-memory JSON document.
SimConfig parse_config_text(const std::string& text);

}  // namespace rsgsim
