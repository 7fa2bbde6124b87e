#pragma once

#include <stdexcept>
#include <string>

namespace bell {

// Table/scenario shape disagreement or an index out of range.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A constructed object violates its mathematical invariant (non-normalized
// distribution, non-projective measurement, non-Hermitian state, ...).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Correlators and spin views need exactly two outcomes.
class UnsupportedSpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Enumeration or LP size beyond the configured guard.
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// The solver failed to reach a trustworthy answer. Never means "infeasible".
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bell
