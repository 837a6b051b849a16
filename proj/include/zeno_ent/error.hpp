#pragma once

#include <stdexcept>
#include <string>

namespace zeno_ent {

/// Raised when a parameter, state or configuration violates a precondition.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the numerical solvers when the requested step cannot resolve the dynamics.
class UnderResolved : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// Raised when the Zeno rate diverges because E(T) = 0.
class DivergentRate : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace zeno_ent
