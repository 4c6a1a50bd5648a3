#ifndef DUNKL_ERRORS_HPP
#define DUNKL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dunkl {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised by divide_by_linear_form when the remainder does not vanish.
struct NotDivisible : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegreeCapExceeded : std::length_error {
  using std::length_error::length_error;
};

struct GroupCapExceeded : std::length_error {
  using std::length_error::length_error;
};

struct InvalidMultiplicity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The explicit intertwining operator is only available for kappa = 0 and for
// root systems made of coordinate axes (the Z_2^d family).
struct UnsupportedGroup : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace dunkl

#endif  // DUNKL_ERRORS_HPP
