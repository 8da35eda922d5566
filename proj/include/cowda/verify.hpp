#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cowda/keytable.hpp"
#include "cowda/matrix.hpp"
#include "cowda/types.hpp"

namespace cowda {

enum class VerifyMethod { bruteforce, meet_in_middle, kronecker_reduction };

const char* verify_method_name(VerifyMethod m);

// Outcome of an injectivity check. A matrix maps ternary inputs injectively
// iff it has no nonzero kernel vector with entries in {0,+-1,+-2}; when the
// verdict is false, witness holds the first such vector in odometer order.
struct CowdaCertificate {
  bool verdict = false;
  std::optional<QuinaryVector> witness;
  VerifyMethod method = VerifyMethod::bruteforce;
  uint64_t work = 0;
};

inline constexpr int kBruteforceColLimit = 13;
inline constexpr int kMitmColLimit = 26;
inline constexpr size_t kDefaultMemoryBudget = size_t{1} << 30;

CowdaCertificate is_cowda_bruteforce(const CodeMatrix& C,
                                     int col_limit = kBruteforceColLimit);

// Meet-in-the-middle index over the left `split` columns: a hash table of
// every partial sum C_left*W1 with W1 in {0,+-1,+-2}^split, keyed by the
// packed chip vector and storing the minimal producing rank. Probes sweep the
// right columns. Immutable after construction; concurrent probes are safe.
class LatticeIndex {
 public:
  explicit LatticeIndex(const CodeMatrix& C, int split = -1,
                        size_t memory_budget = kDefaultMemoryBudget);

  const CodeMatrix& matrix() const { return mat_; }
  int split() const { return split_; }
  int right_count() const { return mat_.cols() - split_; }
  uint64_t left_enumerated() const { return left_count_; }
  size_t memory_bytes() const { return table_.memory_bytes(); }

  // True iff Z = C*W + sum_i a_i*extra_cols[i] for some quinary W and
  // quinary coefficients a_i. No pairings are excluded: Z = 0 is a member.
  bool member(const IntegerVector& Z,
              const std::vector<std::vector<int>>& extra_cols = {}) const;

  // Minimal (left_rank, right_rank) with C_left*W1 + C_right*W2 = 0 other
  // than the all-zero pairing; minimality is in the combined odometer rank
  // left_rank * 5^right + right_rank, matching the brute-force witness order.
  std::optional<std::pair<uint64_t, uint64_t>> kernel_collision() const;

 private:
  CodeMatrix mat_;
  KeyCodec codec_;
  KeyTable table_;
  int split_ = 0;
  std::vector<int> left_cols_;
  std::vector<int> right_cols_;
  std::vector<uint64_t> zero_key_;
  uint64_t left_count_ = 0;
  uint64_t left_kernel_min_rank_ = UINT64_MAX;  // min rank > 0 hashing to zero
};

CowdaCertificate is_cowda_mitm(const CodeMatrix& C, int split = -1,
                               size_t memory_budget = kDefaultMemoryBudget,
                               int col_limit = kMitmColLimit);

// Verdict via the factorization C = kronecker(P, D): P invertible over the
// rationals and D injective. Sound for certified factorizations; the test
// suite cross-checks it against direct verification on small instances.
CowdaCertificate is_cowda_structured(const CodeMatrix& C, const CodeMatrix& P,
                                     const CodeMatrix& D);

// Picks brute force or meet-in-the-middle from the column count.
CowdaCertificate is_cowda_auto(const CodeMatrix& C,
                               size_t memory_budget = kDefaultMemoryBudget);

bool lattice_member(const LatticeIndex& index, const IntegerVector& Z,
                    const std::vector<std::vector<int>>& extra_cols = {});

// Shifted-box kinds for the exhaustive counting oracle.
enum class BoxKind {
  pm1,       // Q + {-1,+1}^rows, counted against the full lattice
  zero_pm2,  // Q + {0,+-2}^(rows/2), counted against the half lattice
  pm2        // Q + {-2,+2}^rows, counted against the full lattice
};

// Exhaustive |lattice ∩ box| count for small matrices. Test oracle only:
// enumerates every quinary coefficient vector. For pm1/pm2 the lattice is
// {D*W}; for zero_pm2 it is {M*W} where M is the upper-left quarter of D
// (the half-size factor of the fourfold construction).
uint64_t count_box_intersections(const CodeMatrix& D_small, const IntegerVector& Q,
                                 BoxKind box);

}  // namespace cowda
