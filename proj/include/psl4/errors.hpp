#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace psl4 {

/// Precondition violated by the caller (bad parameters, mismatched fields, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subgroup family does not exist for the requested q.
class FamilyAbsent : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A request outside the sizes an algorithm supports; never a wrong answer.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Memory or size budget exhausted.  Carries the amount of work done so far.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t partial)
      : std::runtime_error(what), partial_(partial) {}

  std::uint64_t partial() const noexcept { return partial_; }

 private:
  std::uint64_t partial_;
};

}  // namespace psl4
