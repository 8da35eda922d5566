#include "cowda/matrix.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cowda {

CodeMatrix::CodeMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dims must be positive");
  uint64_t n = static_cast<uint64_t>(rows) * static_cast<uint64_t>(cols);
  bits_.assign((n + 63) / 64, 0);
}

CodeMatrix CodeMatrix::from_entries(int rows, int cols, const std::vector<int>& entries) {
  if (entries.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    throw std::invalid_argument("entry count does not match dims");
  CodeMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.set(r, c, entries[static_cast<size_t>(r) * cols + c]);
  return m;
}

void CodeMatrix::set(int r, int c, int value) {
  if (value != 1 && value != -1) throw std::invalid_argument("entries must be +1 or -1");
  uint64_t idx = static_cast<uint64_t>(r) * static_cast<uint64_t>(cols_) +
                 static_cast<uint64_t>(c);
  uint64_t mask = uint64_t{1} << (idx & 63);
  if (value == -1)
    bits_[idx >> 6] |= mask;
  else
    bits_[idx >> 6] &= ~mask;
}

std::vector<int> CodeMatrix::column(int c) const {
  std::vector<int> col(static_cast<size_t>(rows_));
  for (int r = 0; r < rows_; ++r) col[static_cast<size_t>(r)] = at(r, c);
  return col;
}

CodeMatrix CodeMatrix::submatrix_cols(const std::vector<int>& col_indices) const {
  CodeMatrix m(rows_, static_cast<int>(col_indices.size()));
  for (int r = 0; r < rows_; ++r)
    for (size_t j = 0; j < col_indices.size(); ++j)
      m.set(r, static_cast<int>(j), at(r, col_indices[j]));
  return m;
}

CodeMatrix CodeMatrix::append_column(const std::vector<int>& col) const {
  if (col.size() != static_cast<size_t>(rows_))
    throw std::invalid_argument("column length does not match row count");
  CodeMatrix m(rows_, cols_ + 1);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m.set(r, c, at(r, c));
    m.set(r, cols_, col[static_cast<size_t>(r)]);
  }
  return m;
}

CodeMatrix hadamard(int order) {
  if (order < 1 || (order & (order - 1)) != 0)
    throw std::invalid_argument("hadamard order must be a power of two");
  CodeMatrix h(order, order);
  // Sylvester: entry = parity of popcount(r & c).
  for (int r = 0; r < order; ++r)
    for (int c = 0; c < order; ++c)
      h.set(r, c, __builtin_popcount(static_cast<unsigned>(r & c)) & 1 ? -1 : +1);
  return h;
}

CodeMatrix kronecker(const CodeMatrix& left, const CodeMatrix& right) {
  CodeMatrix out(left.rows() * right.rows(), left.cols() * right.cols());
  for (int lr = 0; lr < left.rows(); ++lr)
    for (int lc = 0; lc < left.cols(); ++lc) {
      int s = left.at(lr, lc);
      for (int rr = 0; rr < right.rows(); ++rr)
        for (int rc = 0; rc < right.cols(); ++rc)
          out.set(lr * right.rows() + rr, lc * right.cols() + rc,
                  s * right.at(rr, rc));
    }
  return out;
}

CodeMatrix column_symmetry(const CodeMatrix& C, const std::vector<int>& perm,
                           const std::vector<int>& signs) {
  int n = C.cols();
  if (perm.size() != static_cast<size_t>(n) || signs.size() != static_cast<size_t>(n))
    throw std::invalid_argument("perm/signs length must equal column count");
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<size_t>(p)])
      throw std::invalid_argument("perm is not a bijection on columns");
    seen[static_cast<size_t>(p)] = 1;
  }
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  CodeMatrix out(C.rows(), n);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < C.rows(); ++r)
      out.set(r, j, signs[static_cast<size_t>(j)] * C.at(r, perm[static_cast<size_t>(j)]));
  return out;
}

IntegerVector multiply(const CodeMatrix& C, const TernaryVector& x) {
  std::vector<int> xi(x.begin(), x.end());
  return multiply_int(C, xi);
}

IntegerVector multiply_int(const CodeMatrix& C, const std::vector<int>& x) {
  if (x.size() != static_cast<size_t>(C.cols()))
    throw std::invalid_argument("vector length does not match column count");
  IntegerVector y(static_cast<size_t>(C.rows()), 0);
  for (int r = 0; r < C.rows(); ++r) {
    int acc = 0;
    for (int c = 0; c < C.cols(); ++c) acc += C.at(r, c) * x[static_cast<size_t>(c)];
    y[static_cast<size_t>(r)] = acc;
  }
  return y;
}

CodeMatrix parse_matrix(std::istream& in) {
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::invalid_argument("matrix header must be \"m n\"");
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dims must be positive");
  CodeMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      std::string tok;
      if (!(in >> tok)) throw std::invalid_argument("matrix body ended early");
      if (tok == "+1" || tok == "1" || tok == "+")
        m.set(r, c, +1);
      else if (tok == "-1" || tok == "-")
        m.set(r, c, -1);
      else
        throw std::invalid_argument("bad matrix token: " + tok);
    }
  return m;
}

CodeMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  return parse_matrix(in);
}

void write_matrix(std::ostream& out, const CodeMatrix& C) {
  out << C.rows() << ' ' << C.cols() << '\n';
  for (int r = 0; r < C.rows(); ++r) {
    for (int c = 0; c < C.cols(); ++c) {
      if (c) out << ' ';
      out << (C.at(r, c) > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const CodeMatrix& C) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_matrix(out, C);
}

}  // namespace cowda
