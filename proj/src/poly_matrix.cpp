#include "idet/poly_matrix.hpp"

#include <algorithm>

#include "idet/errors.hpp"

namespace idet {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), entries_(rows * cols, Polynomial(nvars)) {}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw InputError("shape-mismatch", "matrix entry count does not match its shape");
  }
  nvars_ = entries_.empty() ? 0 : entries_.front().nvars();
  for (const auto& e : entries_) {
    if (e.nvars() != nvars_) throw InputError("varcount-mismatch", "matrix entries disagree on ring");
  }
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  if (cols_ != other.rows_) throw InputError("shape-mismatch", "matrix product shape mismatch");
  if (nvars_ != other.nvars_) throw InputError("varcount-mismatch", "matrices disagree on ring");
  PolyMatrix out(rows_, other.cols_, nvars_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c) {
      Polynomial acc(nvars_);
      for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(r, k) * other(k, c);
      out(r, c) = std::move(acc);
    }
  return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InputError("shape-mismatch", "matrix sum shape mismatch");
  PolyMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += other.entries_[i];
  return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InputError("shape-mismatch", "matrix difference shape mismatch");
  PolyMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= other.entries_[i];
  return out;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (!((*this)(r, c) == (*this)(c, r))) return false;
  return true;
}

namespace {

Polynomial cofactor_det(const PolyMatrix& m, std::vector<std::size_t>& rows,
                        std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 0) return Polynomial::constant(m.nvars(), 1);
  if (k == 1) return m(rows[0], cols[0]);
  if (k == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
  // Expand along the first selected row.
  std::size_t r0 = rows.front();
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  Polynomial acc(m.nvars());
  for (std::size_t j = 0; j < k; ++j) {
    const Polynomial& entry = m(r0, cols[j]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(k - 1);
    for (std::size_t c = 0; c < k; ++c)
      if (c != j) sub_cols.push_back(cols[c]);
    Polynomial term = entry * cofactor_det(m, sub_rows, sub_cols);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

void check_index_set(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= bound)
      throw InputError("bad-index-set", std::string(what) + " index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (idx[i] == idx[j]) throw InputError("bad-index-set", std::string("repeated ") + what + " index");
  }
}

}  // namespace

Polynomial PolyMatrix::minor(std::span<const std::size_t> row_idx,
                             std::span<const std::size_t> col_idx) const {
  if (row_idx.size() != col_idx.size())
    throw InputError("bad-index-set", "minor needs as many rows as columns");
  check_index_set(row_idx, rows_, "row");
  check_index_set(col_idx, cols_, "column");
  std::vector<std::size_t> rows(row_idx.begin(), row_idx.end());
  std::vector<std::size_t> cols(col_idx.begin(), col_idx.end());
  return cofactor_det(*this, rows, cols);
}

Polynomial PolyMatrix::determinant() const {
  if (rows_ != cols_) throw InputError("shape-mismatch", "determinant of a non-square matrix");
  std::vector<std::size_t> idx(rows_);
  for (std::size_t i = 0; i < rows_; ++i) idx[i] = i;
  return minor(idx, idx);
}

std::vector<double> PolyMatrix::eval(std::span<const double> point) const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.eval(point));
  return out;
}

std::vector<Rational> PolyMatrix::eval(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.eval(point));
  return out;
}

Rational determinant(std::vector<Rational> a, std::size_t n) {
  if (a.size() != n * n) throw InputError("shape-mismatch", "determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      det = -det;
    }
    det *= a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r * n + col] == 0) continue;
      Rational factor = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
    }
  }
  return det;
}

}  // namespace idet
