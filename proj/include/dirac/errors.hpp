#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

/// An adaptive grid could not resolve a feature (a phase jump, a pair of
/// roots in one cell, a threshold limit that will not settle).
class RefinementError : public std::runtime_error {
 public:
  RefinementError(const std::string& what, double lo, double hi)
      : std::runtime_error(what + " in bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"),
        lo_(lo),
        hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Two independent routes to the same quantity disagree.
class MethodDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirac
