#include "cowda/decode.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cowda/odometer.hpp"

namespace cowda {

namespace {

void check_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("received vector must be finite");
}

bool scaled_orthogonal(const CodeMatrix& M) {
  int n = M.rows();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int dot = 0;
      for (int c = 0; c < n; ++c) dot += M.at(i, c) * M.at(j, c);
      if (dot != (i == j ? n : 0)) return false;
    }
  return true;
}

std::vector<double> render(const RationalMatrix& M) {
  std::vector<double> out;
  out.reserve(M.size() * (M.empty() ? 0 : M[0].size()));
  for (const auto& row : M)
    for (const BigRat& v : row) out.push_back(v.convert_to<double>());
  return out;
}

// Reduced statistic t = A^-1 y - (A^-1 B) x2, in fixed summation order.
void reduced_stat(const DecoderContext& ctx, const std::vector<double>& ainv_y,
                  const TernaryVector& x2, std::vector<double>& t) {
  int l = ctx.l, w = ctx.k - ctx.l;
  for (int j = 0; j < l; ++j) {
    double acc = ainv_y[static_cast<size_t>(j)];
    const double* row = ctx.a_inv_b.data() + static_cast<size_t>(j) * static_cast<size_t>(w);
    for (int q = 0; q < w; ++q)
      acc -= row[q] * static_cast<double>(x2[static_cast<size_t>(q)]);
    t[static_cast<size_t>(j)] = acc;
  }
}

std::vector<double> apply_square(const std::vector<double>& M, int n,
                                 const std::vector<double>& v) {
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += M[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] *
             v[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

}  // namespace

DecoderContext build_context(const CodeMatrix& code, const CodeMatrix& P,
                             const CodeMatrix& D, const std::vector<int>& a_cols) {
  if (P.rows() != P.cols()) throw std::invalid_argument("outer factor must be square");
  if (!(kronecker(P, D) == code))
    throw std::invalid_argument("factorization does not reproduce the code matrix");

  DecoderContext ctx;
  ctx.code = code;
  ctx.outer = P;
  ctx.core = D;
  ctx.r = P.rows();
  ctx.l = D.rows();
  ctx.k = D.cols();

  std::vector<int> block_cols = a_cols;
  if (block_cols.empty()) {
    block_cols.resize(static_cast<size_t>(ctx.l));
    std::iota(block_cols.begin(), block_cols.end(), 0);
  }
  if (static_cast<int>(block_cols.size()) != ctx.l)
    throw std::invalid_argument("invertible block needs exactly one column per row");
  std::vector<bool> used(static_cast<size_t>(ctx.k), false);
  for (int c : block_cols) {
    if (c < 0 || c >= ctx.k) throw std::invalid_argument("block column index out of range");
    if (used[static_cast<size_t>(c)]) throw std::invalid_argument("duplicate block column");
    used[static_cast<size_t>(c)] = true;
  }
  ctx.a_cols = std::move(block_cols);
  for (int c = 0; c < ctx.k; ++c)
    if (!used[static_cast<size_t>(c)]) ctx.b_cols.push_back(c);

  ctx.pos_of.assign(static_cast<size_t>(ctx.k), -1);
  for (size_t p = 0; p < ctx.a_cols.size(); ++p)
    ctx.pos_of[static_cast<size_t>(ctx.a_cols[p])] = static_cast<int>(p);
  for (size_t q = 0; q < ctx.b_cols.size(); ++q)
    ctx.pos_of[static_cast<size_t>(ctx.b_cols[q])] = ctx.l + static_cast<int>(q);

  auto p_inv = invert_exact(P);
  if (!p_inv) throw std::invalid_argument("outer factor is singular");
  CodeMatrix A = D.submatrix_cols(ctx.a_cols);
  auto a_inv = invert_exact(A);
  if (!a_inv) throw std::invalid_argument("selected block is singular");

  ctx.p_inv = render(*p_inv);
  ctx.a_inv = render(*a_inv);

  int w = ctx.k - ctx.l;
  RationalMatrix ainv_b(static_cast<size_t>(ctx.l), std::vector<BigRat>(static_cast<size_t>(w), 0));
  for (int i = 0; i < ctx.l; ++i)
    for (int q = 0; q < w; ++q) {
      BigRat acc = 0;
      for (int j = 0; j < ctx.l; ++j)
        acc += (*a_inv)[static_cast<size_t>(i)][static_cast<size_t>(j)] *
               D.at(j, ctx.b_cols[static_cast<size_t>(q)]);
      ainv_b[static_cast<size_t>(i)][static_cast<size_t>(q)] = acc;
    }
  ctx.a_inv_b = render(ainv_b);

  ctx.ml_exact = scaled_orthogonal(P) && scaled_orthogonal(A);

  ctx.work_direct = 2 * pow(BigInt(3), static_cast<unsigned>(ctx.r * ctx.k - 1));
  ctx.work_peeled = 2 * pow(BigInt(3), static_cast<unsigned>(ctx.k - 1));
  ctx.work_enumerated_case1 = pow(BigInt(3), static_cast<unsigned>(w));
  ctx.work_enumerated_case2 =
      w == 0 ? BigInt(0) : 2 * pow(BigInt(3), static_cast<unsigned>(w - 1));
  return ctx;
}

BlockDecision decode_block_user(const DecoderContext& ctx, const std::vector<double>& y,
                                int user_in_block) {
  if (static_cast<int>(y.size()) != ctx.l)
    throw std::invalid_argument("block vector length must equal the block row count");
  if (user_in_block < 0 || user_in_block >= ctx.k)
    throw std::invalid_argument("user index out of range for the block");
  check_finite(y);

  int w = ctx.k - ctx.l;
  int pos = ctx.pos_of[static_cast<size_t>(user_in_block)];
  std::vector<double> ainv_y = apply_square(ctx.a_inv, ctx.l, y);
  std::vector<double> t(static_cast<size_t>(ctx.l));

  uint64_t total = pow_u64(3, static_cast<unsigned>(w));
  BlockDecision best;
  bool have_best = false;
  double best_score = 0.0;

  for (uint64_t rank = 0; rank < total; ++rank) {
    TernaryVector x2 = ternary_unrank(rank, w);
    int decided;
    if (pos >= ctx.l) {
      int q = pos - ctx.l;
      decided = x2[static_cast<size_t>(q)];
      if (decided == 0) continue;  // the user's own entry is constrained to +-1
    } else {
      decided = 0;  // filled from the statistic below
    }
    reduced_stat(ctx, ainv_y, x2, t);

    double score = 0.0;
    for (int j = 0; j < ctx.l; ++j) {
      double tj = t[static_cast<size_t>(j)];
      int cj;
      if (j == pos)
        cj = tj >= 0.0 ? +1 : -1;  // sign with sign(0) = +1
      else
        cj = softlim(tj);
      if (j == pos) decided = cj;
      double d = tj - static_cast<double>(cj);
      score += d * d;
    }
    ++best.candidates;
    if (!have_best || score < best_score) {
      have_best = true;
      best_score = score;
      best.symbol = decided;
    }
  }
  best.score = best_score;
  return best;
}

namespace {

std::vector<double> peel_block(const DecoderContext& ctx, const std::vector<double>& Y,
                               int block) {
  std::vector<double> z(static_cast<size_t>(ctx.l), 0.0);
  for (int i = 0; i < ctx.l; ++i) {
    double acc = 0.0;
    for (int j = 0; j < ctx.r; ++j)
      acc += ctx.p_inv[static_cast<size_t>(block) * static_cast<size_t>(ctx.r) +
                       static_cast<size_t>(j)] *
             Y[static_cast<size_t>(j) * static_cast<size_t>(ctx.l) + static_cast<size_t>(i)];
    z[static_cast<size_t>(i)] = acc;
  }
  return z;
}

}  // namespace

BlockDecision decode_user(const DecoderContext& ctx, const std::vector<double>& Y,
                          int user) {
  if (static_cast<int>(Y.size()) != ctx.r * ctx.l)
    throw std::invalid_argument("received vector length must equal the chip count");
  if (user < 0 || user >= ctx.r * ctx.k)
    throw std::invalid_argument("user index out of range");
  check_finite(Y);
  int block = user / ctx.k;
  std::vector<double> z = peel_block(ctx, Y, block);
  return decode_block_user(ctx, z, user % ctx.k);
}

TernaryVector detect_all(const DecoderContext& ctx, const std::vector<double>& Y) {
  if (static_cast<int>(Y.size()) != ctx.r * ctx.l)
    throw std::invalid_argument("received vector length must equal the chip count");
  check_finite(Y);

  int w = ctx.k - ctx.l;
  uint64_t total = pow_u64(3, static_cast<unsigned>(w));
  TernaryVector out(static_cast<size_t>(ctx.r * ctx.k), 0);
  std::vector<double> t(static_cast<size_t>(ctx.l));
  std::vector<int8_t> c(static_cast<size_t>(ctx.l));

  for (int block = 0; block < ctx.r; ++block) {
    std::vector<double> z = peel_block(ctx, Y, block);
    std::vector<double> ainv_y = apply_square(ctx.a_inv, ctx.l, z);

    double best_score = 0.0;
    bool have_best = false;
    TernaryVector best_x1(static_cast<size_t>(ctx.l)), best_x2;
    for (uint64_t rank = 0; rank < total; ++rank) {
      TernaryVector x2 = ternary_unrank(rank, w);
      reduced_stat(ctx, ainv_y, x2, t);
      double score = 0.0;
      for (int j = 0; j < ctx.l; ++j) {
        double tj = t[static_cast<size_t>(j)];
        int cj = softlim(tj);
        c[static_cast<size_t>(j)] = static_cast<int8_t>(cj);
        double d = tj - static_cast<double>(cj);
        score += d * d;
      }
      if (!have_best || score < best_score) {
        have_best = true;
        best_score = score;
        best_x1.assign(c.begin(), c.end());
        best_x2 = x2;
      }
    }

    size_t base = static_cast<size_t>(block) * static_cast<size_t>(ctx.k);
    for (int p = 0; p < ctx.l; ++p)
      out[base + static_cast<size_t>(ctx.a_cols[static_cast<size_t>(p)])] =
          best_x1[static_cast<size_t>(p)];
    for (int q = 0; q < w; ++q)
      out[base + static_cast<size_t>(ctx.b_cols[static_cast<size_t>(q)])] =
          best_x2[static_cast<size_t>(q)];
  }
  return out;
}

MlResult exhaustive_ml(const CodeMatrix& C, const std::vector<double>& y,
                       std::optional<std::pair<int, int>> constraint) {
  int m = C.rows(), n = C.cols();
  if (n > 14) throw capacity_error("exhaustive search capped at 14 columns");
  if (static_cast<int>(y.size()) != m)
    throw std::invalid_argument("received vector length must equal the row count");
  check_finite(y);
  if (constraint) {
    if (constraint->first < 0 || constraint->first >= n)
      throw std::invalid_argument("constrained user index out of range");
    if (constraint->second != -1 && constraint->second != +1)
      throw std::invalid_argument("constraint value must be -1 or +1");
  }

  // Incremental residual r = y - C x along the odometer; updates add integer
  // columns to doubles, which is exact at these magnitudes.
  std::vector<int> digit(static_cast<size_t>(n), 0);  // index into kTernaryDigits
  std::vector<double> res(y);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < n; ++c) res[static_cast<size_t>(i)] += C.at(i, c);  // x = all -1

  uint64_t total = pow_u64(3, static_cast<unsigned>(n));
  MlResult best;
  bool have_best = false;
  for (uint64_t rank = 0;; ++rank) {
    bool admissible =
        !constraint ||
        kTernaryDigits[digit[static_cast<size_t>(constraint->first)]] == constraint->second;
    if (admissible) {
      double score = 0.0;
      for (int i = 0; i < m; ++i) score += res[static_cast<size_t>(i)] * res[static_cast<size_t>(i)];
      ++best.candidates;
      if (!have_best || score < best.score) {
        have_best = true;
        best.score = score;
        best.estimate.resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
          best.estimate[static_cast<size_t>(j)] = kTernaryDigits[digit[static_cast<size_t>(j)]];
      }
    }
    if (rank + 1 == total) break;
    int pos = n - 1;
    while (digit[static_cast<size_t>(pos)] == 2) {
      // wrap +1 -> -1: residual gains 2 * column
      for (int i = 0; i < m; ++i) res[static_cast<size_t>(i)] += 2 * C.at(i, pos);
      digit[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    // step to the next digit value (-1 -> 0 or 0 -> +1): residual loses column
    for (int i = 0; i < m; ++i) res[static_cast<size_t>(i)] -= C.at(i, pos);
    ++digit[static_cast<size_t>(pos)];
  }
  if (!have_best) throw std::logic_error("empty candidate set");
  return best;
}

}  // namespace cowda
