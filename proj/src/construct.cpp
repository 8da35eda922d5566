#include "cowda/construct.hpp"

#include <optional>
#include <stdexcept>
#include <string>

#include "cowda/exactla.hpp"
#include "cowda/rng.hpp"

namespace cowda {

namespace {

constexpr uint64_t kFallbackAfter = 100000;  // all-rejected run that triggers the scan
constexpr uint64_t kStuckRejections = 20000;

std::vector<int> sample_sign_column(uint64_t seed, uint64_t stream_id, int rows) {
  std::vector<int> z(static_cast<size_t>(rows));
  uint64_t word = 0;
  for (int i = 0; i < rows; ++i) {
    if ((i & 63) == 0) word = stream_word(seed, stream_id, static_cast<uint64_t>(i >> 6));
    z[static_cast<size_t>(i)] = (word >> (i & 63)) & 1 ? -1 : +1;
  }
  return z;
}

std::vector<int> index_sign_column(uint64_t idx, int rows) {
  std::vector<int> z(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i)
    z[static_cast<size_t>(i)] = (idx >> i) & 1 ? -1 : +1;
  return z;
}

IntegerVector doubled(const std::vector<int>& z) {
  IntegerVector out(z.size());
  for (size_t i = 0; i < z.size(); ++i) out[i] = 2 * z[i];
  return out;
}

bool acceptable(const LatticeIndex& index, const std::vector<int>& z,
                const std::vector<std::vector<int>>& added) {
  IntegerVector as_int(z.begin(), z.end());
  if (index.member(as_int, added)) return false;
  return !index.member(doubled(z), added);
}

}  // namespace

CertifiedMatrix certify(const CodeMatrix& C, size_t memory_budget) {
  return CertifiedMatrix{C, is_cowda_auto(C, memory_budget)};
}

LiftResult lift(const CodeMatrix& P, const CertifiedMatrix& core) {
  if (P.rows() != P.cols())
    throw std::invalid_argument("lifting factor must be square");
  if (!core.cert.verdict)
    throw std::invalid_argument("core carries no passing injectivity certificate");
  if (det_exact(P) == 0) throw std::invalid_argument("lifting factor is singular");
  LiftResult out;
  out.outer = P;
  out.core = core.matrix;
  out.lifted.matrix = kronecker(P, core.matrix);
  out.lifted.cert.verdict = true;
  out.lifted.cert.method = VerifyMethod::kronecker_reduction;
  out.lifted.cert.work = core.cert.work;
  return out;
}

int guaranteed_additions(int m) {
  if (m < 1) throw std::invalid_argument("row count must be positive");
  BigInt threshold = BigInt(1) << (m - 1);
  BigInt p5 = 1;
  int k = 0;
  while (p5 < threshold) {
    ++k;
    p5 *= 5;
  }
  return k;
}

AugmentResult augment(const CertifiedMatrix& C, int target_extra, uint64_t seed,
                      uint64_t attempt_budget, size_t memory_budget) {
  if (!C.cert.verdict)
    throw std::invalid_argument("base carries no passing injectivity certificate");
  if (target_extra < 1) throw std::invalid_argument("target column count must be positive");
  if (attempt_budget < 1) throw std::invalid_argument("attempt budget must be positive");

  CodeMatrix h2 = hadamard(2);
  CodeMatrix D = kronecker(h2, kronecker(h2, C.matrix));
  LatticeIndex index(D, -1, memory_budget);
  int rows = D.rows();

  AugmentResult out;
  out.state.base = D;
  out.state.rng_seed = seed;

  uint64_t consecutive_rejected = 0;
  bool systematic = false;
  uint64_t scan_idx = 0, scanned = 0;

  while (out.state.added.size() < static_cast<size_t>(target_extra) &&
         out.state.attempts < attempt_budget) {
    std::vector<int> z;
    if (systematic) {
      if (rows > 64)
        throw capacity_error("systematic candidate scan not available past 64 rows");
      if (rows < 64 && scanned >= (uint64_t{1} << rows)) break;  // space exhausted
      z = index_sign_column(scan_idx++, rows);
      ++scanned;
    } else {
      z = sample_sign_column(seed, out.state.attempts, rows);
    }
    ++out.state.attempts;

    if (acceptable(index, z, out.state.added)) {
      out.state.added.push_back(std::move(z));
      consecutive_rejected = 0;
      systematic = false;
      scan_idx = scanned = 0;
    } else if (!systematic && ++consecutive_rejected >= kFallbackAfter) {
      systematic = true;
      scan_idx = scanned = 0;
    }
  }

  CodeMatrix widened = D;
  for (const auto& col : out.state.added) widened = widened.append_column(col);
  out.result.matrix = std::move(widened);
  out.result.cert.verdict = true;  // each accepted column re-proved injectivity
  out.result.cert.method = VerifyMethod::meet_in_middle;
  out.result.cert.work = out.state.attempts;
  out.status = out.state.added.size() == static_cast<size_t>(target_extra)
                   ? AugmentStatus::complete
                   : AugmentStatus::budget_exhausted;
  return out;
}

SearchResult search_core(const CertifiedMatrix& base, int target_cols, uint64_t seed,
                         int restarts, uint64_t attempt_budget, size_t memory_budget) {
  if (!base.cert.verdict)
    throw std::invalid_argument("base carries no passing injectivity certificate");
  if (target_cols <= base.matrix.cols())
    throw std::invalid_argument("target width does not exceed the base width");
  if (restarts < 1) throw std::invalid_argument("need at least one pass");

  SearchResult out;
  out.best = base;

  for (int pass = 0; pass < restarts; ++pass) {
    CodeMatrix cur = base.matrix;
    uint64_t pass_attempt = 0;
    uint64_t consecutive_rejected = 0;
    bool index_ok = true;

    while (cur.cols() < target_cols && out.attempts < attempt_budget) {
      std::optional<LatticeIndex> index;
      try {
        index.emplace(cur, -1, memory_budget);
      } catch (const capacity_error&) {
        index_ok = false;  // cannot certify any wider matrix within budget
        break;
      }

      bool widened = false;
      while (out.attempts < attempt_budget) {
        std::vector<int> z = sample_sign_column(
            seed, (static_cast<uint64_t>(pass) << 40) | pass_attempt, cur.rows());
        ++pass_attempt;
        ++out.attempts;
        if (acceptable(*index, z, {})) {
          cur = cur.append_column(z);
          widened = true;
          consecutive_rejected = 0;
          break;
        }
        if (++consecutive_rejected >= kStuckRejections) break;
      }
      if (cur.cols() > out.best.matrix.cols()) {
        out.best.matrix = cur;
        out.best.cert.verdict = true;
        out.best.cert.method = VerifyMethod::meet_in_middle;
        out.best.cert.witness.reset();
      }
      if (!widened) break;  // stuck or out of budget
    }
    ++out.restarts_used;
    if (!index_ok) break;
    if (out.best.matrix.cols() >= target_cols) break;
    if (out.attempts >= attempt_budget) break;
  }
  if (out.best.matrix.cols() > base.matrix.cols()) out.best.cert.work = out.attempts;
  return out;
}

}  // namespace cowda
