#pragma once

#include <stdexcept>
#include <string>

namespace norm1lat {

// Malformed input or violated precondition; CLI exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured size bound was exceeded; CLI exit code 3.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A self-check of a construction failed. Indicates a bug, not bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace norm1lat
