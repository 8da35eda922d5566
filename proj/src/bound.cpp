#include "cowda/bound.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cowda {

TernarySumDistribution ternary_sum_counts(int n) {
  if (n < 1) throw std::invalid_argument("need at least one ternary variable");
  TernarySumDistribution dist;
  dist.n = n;
  std::vector<BigInt> cur{1, 1, 1};  // n = 1
  for (int i = 2; i <= n; ++i) {
    std::vector<BigInt> next(static_cast<size_t>(2 * i + 1));
    for (int k = -i; k <= i; ++k) {
      BigInt v = 0;
      for (int d = -1; d <= 1; ++d) {
        int prev = k + d;
        if (prev >= -(i - 1) && prev <= i - 1)
          v += cur[static_cast<size_t>(prev + i - 1)];
      }
      next[static_cast<size_t>(k + i)] = std::move(v);
    }
    cur = std::move(next);
  }
  dist.counts = std::move(cur);
  dist.total = pow(BigInt(3), static_cast<unsigned>(n));
  return dist;
}

namespace {

// Compensated sum of count*log2(count) over the distribution. Counts convert
// to long double with ~5e-20 relative error, far below the decision slack
// the scan ever sees.
long double entropy_bits_per_chip(const TernarySumDistribution& dist) {
  long double sum = 0.0L, comp = 0.0L;
  for (const BigInt& c : dist.counts) {
    if (c == 0) continue;
    long double cl = static_cast<long double>(c);
    long double term = cl * std::log2(cl);
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  long double total = static_cast<long double>(dist.total);
  return static_cast<long double>(dist.n) * std::log2(3.0L) - sum / total;
}

}  // namespace

long double entropy_rhs(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("chip and user counts must be positive");
  TernarySumDistribution dist = ternary_sum_counts(n);
  long double trits = entropy_bits_per_chip(dist) / std::log2(3.0L);
  return static_cast<long double>(m) * trits;
}

int max_users(int m) {
  if (m < 1) throw std::invalid_argument("chip count must be positive");
  int last_ok = -1;
  long double last_slack = -1.0L;
  int consecutive_failures = 0;
  for (int n = m; consecutive_failures < 3; ++n) {
    long double slack = entropy_rhs(m, n) - static_cast<long double>(n);
    if (n >= 2 && slack > -1e-6L && slack < 1e-6L)
      throw std::runtime_error(
          "user ceiling within 1e-6 of an integer at n=" + std::to_string(n) +
          "; refusing to round a knife-edge");
    if (slack >= 0.0L) {
      last_ok = n;
      last_slack = slack;
      consecutive_failures = 0;
    } else {
      ++consecutive_failures;
    }
  }
  if (last_ok < 0)
    throw std::runtime_error("no admissible user count found from n=m upward");
  // Exactly-zero slack only happens on the degenerate n=1 path where the
  // ceiling sits on the integer itself; everywhere else the real crossing is
  // strictly inside (last_ok, last_ok + 1) and the admitted count rounds up.
  return last_slack == 0.0L ? last_ok : last_ok + 1;
}

std::vector<BoundPoint> bound_curve(const std::vector<int>& chip_counts) {
  std::vector<BoundPoint> out;
  out.reserve(chip_counts.size());
  for (int m : chip_counts) out.push_back(BoundPoint{m, max_users(m)});
  return out;
}

}  // namespace cowda
