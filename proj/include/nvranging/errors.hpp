#pragma once

#include <stdexcept>
#include <string>

namespace nvr {

/// Precondition violated by a physical quantity (negative field, zero wavelength, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bad user input at the configuration / command layer.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dual-frequency integer resolution could not produce a consistent distance.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scan feature whose half-maximum crossing or baseline lies outside the curve.
class UnboundedFeatureError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested optical response needs a contrast above 1.
class UnreachableResponseError : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}
}  // namespace detail

}  // namespace nvr
