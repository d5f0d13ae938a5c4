#pragma once

#include <stdexcept>
#include <string>

namespace vscit {

/// Malformed model/config/suite text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration that is well-formed text but violates a model invariant.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation called on an object in a state it cannot handle (e.g. empty store).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The coverage oracle rejected a suite the generator claimed complete.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vscit
