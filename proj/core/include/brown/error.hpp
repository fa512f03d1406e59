#pragma once

#include <stdexcept>
#include <string>

namespace brown {

// Input outside the domain where an operation is defined (on-support
// evaluation, point outside an annulus, degenerate law, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed quantity failed a post-condition check, e.g. a density more
// negative than the clipping tolerance.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative kernel did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace brown
