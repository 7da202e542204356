#pragma once

#include <stdexcept>
#include <string>

namespace kerrgcs {

/// Thrown when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer result does not fit in 64 bits (hilbert_dim and friends).
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A numeric guard tripped: the computation is well posed but the requested
/// size or truncation would give an unreliable or unaffordable answer.
class GuardError : public std::runtime_error {
 public:
  enum class Kind { Dimension, Tail, Aliasing };

  GuardError(Kind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + " guard: " + what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

  static const char* kind_name(Kind kind) noexcept {
    switch (kind) {
      case Kind::Dimension: return "dimension";
      case Kind::Tail: return "tail";
      case Kind::Aliasing: return "aliasing";
    }
    return "unknown";
  }

 private:
  Kind kind_;
};

}  // namespace kerrgcs
