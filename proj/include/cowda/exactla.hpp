#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "cowda/matrix.hpp"

namespace cowda {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using RationalMatrix = std::vector<std::vector<BigRat>>;

// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt det_exact(const CodeMatrix& M) {
  int n = M.rows();
  if (n != M.cols()) throw std::invalid_argument("determinant needs a square matrix");
  std::vector<std::vector<BigInt>> a(static_cast<size_t>(n),
                                     std::vector<BigInt>(static_cast<size_t>(n)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = M.at(r, c);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(swap_row)]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r)
      for (int c = k + 1; c < n; ++c) {
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            (a[static_cast<size_t>(r)][static_cast<size_t>(c)] *
                 a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
             a[static_cast<size_t>(r)][static_cast<size_t>(k)] *
                 a[static_cast<size_t>(k)][static_cast<size_t>(c)]) /
            prev;
      }
    prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return sign * a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

// Exact inverse over the rationals; nullopt when singular.
inline std::optional<RationalMatrix> invert_exact(const CodeMatrix& M) {
  int n = M.rows();
  if (n != M.cols()) throw std::invalid_argument("inverse needs a square matrix");
  RationalMatrix a(static_cast<size_t>(n), std::vector<BigRat>(static_cast<size_t>(2 * n), 0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = M.at(r, c);
    a[static_cast<size_t>(r)][static_cast<size_t>(n + r)] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
    BigRat p = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int c = 0; c < 2 * n; ++c) a[static_cast<size_t>(col)][static_cast<size_t>(c)] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      BigRat f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int c = 0; c < 2 * n; ++c)
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
            f * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
    }
  }
  RationalMatrix inv(static_cast<size_t>(n), std::vector<BigRat>(static_cast<size_t>(n)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      inv[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          a[static_cast<size_t>(r)][static_cast<size_t>(n + c)];
  return inv;
}

}  // namespace cowda
