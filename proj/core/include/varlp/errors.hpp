#pragma once

#include <stdexcept>
#include <string>

namespace varlp {

// Invalid mathematical input: negative vector entries, exponents below 1,
// mismatched domains, and similar precondition violations.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally malformed input: wrong lengths, unsorted breakpoints,
// unknown JSON fields, bad schema versions.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iteration or search budget ran out before the requested quantity could
// be produced (pathological brackets, unreachable distortion targets).
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace varlp
