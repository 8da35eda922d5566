#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cowda/exactla.hpp"
#include "cowda/matrix.hpp"
#include "cowda/types.hpp"

namespace cowda {

// Nearest ternary point with ties resolved to 0: -1 below -1/2, +1 above
// +1/2, 0 on the closed middle interval.
inline int softlim(double x) {
  if (x < -0.5) return -1;
  if (x > 0.5) return +1;
  return 0;
}

// Two-stage reduced decoder state for code = P (x) D, D = [A | B] after
// moving the a_cols block to the front. Inverses are computed exactly over
// the rationals and rendered to double once; for Hadamard factors the
// rendered entries are dyadic, hence exact.
struct DecoderContext {
  CodeMatrix code;   // (r*l) x (r*k)
  CodeMatrix outer;  // P, r x r invertible
  CodeMatrix core;   // D, l x k
  int r = 1, l = 0, k = 0;

  std::vector<int> a_cols;  // size l, indices into core columns
  std::vector<int> b_cols;  // size k-l, remaining indices in ascending order
  std::vector<int> pos_of;  // core column -> slot in [A | B] ordering

  std::vector<double> p_inv;    // r x r, row-major
  std::vector<double> a_inv;    // l x l
  std::vector<double> a_inv_b;  // l x (k-l)

  // True iff both factors are orthogonal up to scale (P P^T = r I and
  // A A^T = l I in exact integers); then the reduced decisions are exact ML.
  bool ml_exact = false;

  // Closed-form candidate counts: direct ML on the full system, ML after the
  // peel, and the per-user enumerations of the reduced stage.
  BigInt work_direct;             // 2 * 3^(rk-1)
  BigInt work_peeled;             // 2 * 3^(k-1)
  BigInt work_enumerated_case1;   // 3^(k-l)
  BigInt work_enumerated_case2;   // 2 * 3^(k-l-1), 0 when k = l
};

// Builds the context from code = kronecker(P, D) and the column set forming
// the invertible block A; an empty set selects the first l columns. Throws invalid_argument on mismatched factors,
// bad column sets, or singular P / A.
DecoderContext build_context(const CodeMatrix& code, const CodeMatrix& P,
                             const CodeMatrix& D, const std::vector<int>& a_cols);

struct BlockDecision {
  int symbol = 0;            // the decoded +-1 bit
  double score = 0.0;        // winning squared residual in the reduced system
  uint64_t candidates = 0;   // vectors scored by the enumeration
};

// Decides the bit of user_in_block (0-based core column index) from one
// peeled block y of length l, assuming that user is active.
BlockDecision decode_block_user(const DecoderContext& ctx, const std::vector<double>& y,
                                int user_in_block);

// Peels (P^-1 (x) I_l) Y for the block containing `user` (0-based column of
// the full code matrix) and delegates to decode_block_user.
BlockDecision decode_user(const DecoderContext& ctx, const std::vector<double>& Y,
                          int user);

// Full ternary estimate, block by block: same enumeration with every entry
// soft-limited (no active-user constraint). Zeros mark users detected idle.
TernaryVector detect_all(const DecoderContext& ctx, const std::vector<double>& Y);

struct MlResult {
  TernaryVector estimate;
  double score = 0.0;
  uint64_t candidates = 0;
};

// Brute-force argmin of ||y - C x|| over ternary x, optional constraint
// pinning one entry to +-1. Test oracle; capped at 14 columns.
MlResult exhaustive_ml(const CodeMatrix& C, const std::vector<double>& y,
                       std::optional<std::pair<int, int>> constraint = std::nullopt);

}  // namespace cowda
