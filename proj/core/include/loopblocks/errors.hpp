#pragma once

#include <stdexcept>
#include <string>

namespace loopblocks {

// Bad user input: malformed specs, out-of-range parameters, unknown names.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured cap.
struct cap_exceeded : validation_error {
  using validation_error::validation_error;
};

// Internal cross-check failed: two computation paths disagree, or a value
// that must be an integer refuses to round. Signals a bug, not bad input.
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace loopblocks
