#pragma once

#include <stdexcept>
#include <string>

namespace lindgeo {

/// Input violates a documented precondition (wrong dimension, non-Hermitian
/// operator, malformed configuration).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// The request is well formed but has no answer in the physical domain:
/// invalid dissipator, no steady state on the affine slice, infeasible target.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lindgeo
