#pragma once

#include <stdexcept>
#include <string>

namespace lep {

/// Invalid sizes, intensities or vertex ids passed to an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed edge-list text.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input graph lacks a required structure (e.g. it is not a tree).
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input too large for an exhaustive method.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A factorization or solve failed, or a result left its valid range.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A conditional quantity was requested on a null event.
class UndefinedConditionalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace lep
