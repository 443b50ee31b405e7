#pragma once

#include <stdexcept>
#include <string>

namespace braidlab {

/// Input outside the domain of an operation: malformed braid words, strand
/// mismatches, parity mismatches and the like.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exact Lee engine refuses diagrams above its configured crossing limit.
class CrossingLimitExceeded : public DomainError {
 public:
  CrossingLimitExceeded(int crossings, int limit)
      : DomainError("diagram has " + std::to_string(crossings) +
                    " crossings, exact engine limit is " + std::to_string(limit)),
        crossings_(crossings),
        limit_(limit) {}

  int crossings() const noexcept { return crossings_; }
  int limit() const noexcept { return limit_; }

 private:
  int crossings_;
  int limit_;
};

}  // namespace braidlab
