#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idet/polynomial.hpp"

namespace idet {

// Dense row-major matrix of polynomials sharing one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nvars() const noexcept { return nvars_; }

  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const std::vector<Polynomial>& entries() const noexcept { return entries_; }

  PolyMatrix transpose() const;
  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator+(const PolyMatrix& other) const;
  PolyMatrix operator-(const PolyMatrix& other) const;
  bool operator==(const PolyMatrix& other) const = default;

  bool is_symmetric() const;

  // Determinant of the submatrix on the given 0-based rows and columns, by
  // cofactor expansion. Index sets must have equal size, distinct in-range
  // entries; their listed order fixes the sign.
  Polynomial minor(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  Polynomial determinant() const;

  // Entrywise evaluation.
  std::vector<double> eval(std::span<const double> point) const;
  std::vector<Rational> eval(std::span<const Rational> point) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Polynomial> entries_;
};

// Determinant of a dense square matrix of exact values, row-major.
Rational determinant(std::vector<Rational> a, std::size_t n);

}  // namespace idet
