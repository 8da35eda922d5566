#pragma once

#include <cstdint>

#include "cowda/types.hpp"

namespace cowda {

// Enumeration order for coefficient vectors in {0,+-1,+-2}^n: per-digit value
// sequence 0, +1, -1, +2, -2 with the LAST position cycling fastest. Rank 0 is
// the all-zero vector. Witnesses and tie-breaks are defined by this order, so
// it must never change.
inline constexpr int8_t kQuinaryDigits[5] = {0, +1, -1, +2, -2};

// Value deltas between consecutive digit slots (slot d -> d+1), plus the wrap
// delta from the last slot back to 0 used when a position carries.
inline constexpr int kQuinaryStep[4] = {+1, -2, +3, -4};
inline constexpr int kQuinaryWrap = +2;

inline uint64_t pow_u64(uint64_t base, unsigned exp) {
  uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

inline QuinaryVector quinary_unrank(uint64_t rank, int n) {
  QuinaryVector w(static_cast<size_t>(n));
  for (int j = n - 1; j >= 0; --j) {
    w[static_cast<size_t>(j)] = kQuinaryDigits[rank % 5];
    rank /= 5;
  }
  return w;
}

// Ternary counterpart used by the decoder: digit sequence -1, 0, +1, last
// position fastest, rank 0 = all minus ones.
inline constexpr int8_t kTernaryDigits[3] = {-1, 0, +1};

inline TernaryVector ternary_unrank(uint64_t rank, int n) {
  TernaryVector x(static_cast<size_t>(n));
  for (int j = n - 1; j >= 0; --j) {
    x[static_cast<size_t>(j)] = kTernaryDigits[rank % 3];
    rank /= 3;
  }
  return x;
}

}  // namespace cowda
