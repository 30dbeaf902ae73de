#pragma once

#include <cstdint>
#include <limits>

#include "munet/errors.hpp"

namespace munet {

// Path counts grow exponentially in the number of reticulations, so all
// arithmetic on them is overflow-checked instead of silently wrapping.
using Count = std::uint64_t;

inline Count checked_add(Count a, Count b) {
  Count r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("path count overflow in addition");
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("path count overflow in multiplication");
  return r;
}

inline Count checked_sub(Count a, Count b) {
  if (b > a) throw OverflowError("path count underflow in subtraction");
  return a - b;
}

}  // namespace munet
