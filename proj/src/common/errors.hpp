#pragma once

#include <stdexcept>
#include <string>

namespace morsecone {

// Error taxonomy mirrored by the C API status codes and the CLI exit codes:
// io_error -> 1, validation_error -> 2, numeric_error -> 3.

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace morsecone
