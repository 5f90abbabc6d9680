#pragma once

#include <stdexcept>
#include <string>

namespace bitext {

// Raised for malformed inputs, protocol violations and broken invariants.
// The CLI maps it to exit code 2; usage problems exit with 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bitext
