#pragma once

#include <vector>

#include "cowda/exactla.hpp"

namespace cowda {

// Exact distribution of x1 + ... + xn over uniform iid ternary variables.
// counts[k + n] = number of ternary n-tuples summing to k, k in [-n, n].
struct TernarySumDistribution {
  int n = 0;
  std::vector<BigInt> counts;  // size 2n+1
  BigInt total;                // 3^n

  const BigInt& count(int k) const { return counts[static_cast<size_t>(k + n)]; }
};

TernarySumDistribution ternary_sum_counts(int n);

// Information-theoretic user ceiling for m chips and n users, in trits:
// m times the entropy of one chip's ternary-sum output. Errorless decoding
// forces n <= entropy_rhs(m, n).
long double entropy_rhs(int m, int n);

// Largest user count admitted by the ceiling for m chips. Scans upward from
// n = m; the real-valued crossing point lands strictly inside an integer gap
// everywhere except the degenerate n = 1 case, and the admitted count is the
// integer at the upper end of that gap.
int max_users(int m);

struct BoundPoint {
  int chips = 0;
  int users = 0;
};

std::vector<BoundPoint> bound_curve(const std::vector<int>& chip_counts);

}  // namespace cowda
