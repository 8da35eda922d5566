#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cowda/types.hpp"

namespace cowda {

// m x n matrix over {-1,+1}. Stored as packed sign bits (set bit = -1) so the
// enumeration kernels can pull compact column views; the public contract is
// the +-1 integer view.
class CodeMatrix {
 public:
  CodeMatrix() = default;
  CodeMatrix(int rows, int cols);  // all +1

  static CodeMatrix from_entries(int rows, int cols, const std::vector<int>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int at(int r, int c) const {
    uint64_t idx = static_cast<uint64_t>(r) * static_cast<uint64_t>(cols_) +
                   static_cast<uint64_t>(c);
    return (bits_[idx >> 6] >> (idx & 63)) & 1 ? -1 : +1;
  }

  void set(int r, int c, int value);

  std::vector<int> column(int c) const;
  CodeMatrix submatrix_cols(const std::vector<int>& col_indices) const;
  CodeMatrix append_column(const std::vector<int>& col) const;

  bool operator==(const CodeMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<uint64_t> bits_;
};

// Sylvester Hadamard matrix; order must be a power of two.
CodeMatrix hadamard(int order);

CodeMatrix kronecker(const CodeMatrix& left, const CodeMatrix& right);

// Output column j = signs[j] * (column perm[j] of C). perm is 0-based and must
// be a bijection; signs entries are +-1.
CodeMatrix column_symmetry(const CodeMatrix& C, const std::vector<int>& perm,
                           const std::vector<int>& signs);

// Exact integer products.
IntegerVector multiply(const CodeMatrix& C, const TernaryVector& x);
IntegerVector multiply_int(const CodeMatrix& C, const std::vector<int>& x);

// Text format: line 1 "m n", then m rows of n tokens, "+1"/"-1" on output;
// the parser also accepts bare "+"/"-".
CodeMatrix parse_matrix(std::istream& in);
CodeMatrix parse_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const CodeMatrix& C);
void write_matrix_file(const std::string& path, const CodeMatrix& C);

}  // namespace cowda
