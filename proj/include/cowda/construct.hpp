#pragma once

#include <cstdint>
#include <vector>

#include "cowda/matrix.hpp"
#include "cowda/verify.hpp"

namespace cowda {

// A matrix together with the certificate that it maps ternary inputs
// injectively. Builders return these so downstream stages can demand proof
// instead of trusting the caller.
struct CertifiedMatrix {
  CodeMatrix matrix;
  CowdaCertificate cert;
};

// Runs the appropriate direct verifier and bundles the result.
CertifiedMatrix certify(const CodeMatrix& C, size_t memory_budget = kDefaultMemoryBudget);

struct LiftResult {
  CertifiedMatrix lifted;
  CodeMatrix outer;  // P, square invertible
  CodeMatrix core;   // the certified factor
};

// Kronecker lifting: P invertible (over the rationals) times an injective
// core stays injective. The factors are kept for the two-step decoder.
LiftResult lift(const CodeMatrix& P, const CertifiedMatrix& core);

// Number of columns the expansion loop is guaranteed to append to the
// fourfold matrix built from an m-row core: the count of k >= 0 with
// 5^k < 2^(m-1), evaluated in exact integers.
int guaranteed_additions(int m);

enum class AugmentStatus { complete, budget_exhausted };

struct AugmentationState {
  CodeMatrix base;                      // H2 (x) H2 (x) C
  std::vector<std::vector<int>> added;  // accepted +-1 columns, in order
  uint64_t rng_seed = 0;
  uint64_t attempts = 0;  // candidates examined, accepted and rejected
};

struct AugmentResult {
  CertifiedMatrix result;  // [base | added]
  AugmentationState state;
  AugmentStatus status = AugmentStatus::complete;
};

// Fourfold expansion: D = H2 (x) H2 (x) C, then append random sign columns
// Z accepted when neither Z nor 2Z lies in the lattice spanned by D and the
// columns added so far (quinary coefficients). Each acceptance certifies the
// widened matrix by construction. Budget exhaustion returns the partial
// matrix, which is still certified.
AugmentResult augment(const CertifiedMatrix& C, int target_extra, uint64_t seed,
                      uint64_t attempt_budget,
                      size_t memory_budget = kDefaultMemoryBudget);

struct SearchResult {
  CertifiedMatrix best;
  uint64_t attempts = 0;
  int restarts_used = 0;
};

// Greedy randomized widening directly on the base (no fourfold step): sample
// sign columns, accept via the same two-membership criterion against the
// current matrix, restart from the base with a fresh substream when stuck.
// Returns the widest certified matrix seen across all restarts.
SearchResult search_core(const CertifiedMatrix& base, int target_cols, uint64_t seed,
                         int restarts, uint64_t attempt_budget,
                         size_t memory_budget = kDefaultMemoryBudget);

}  // namespace cowda
