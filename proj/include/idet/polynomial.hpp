#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace idet {

using Rational = mpq_class;

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector of a monomial x_1^{e_1} ... x_n^{e_n}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::size_t nvars, std::span<const unsigned> exponents);

  static Monomial one(std::size_t nvars) { return Monomial(nvars); }
  static Monomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const noexcept { return exps_[i]; }
  void set(std::size_t i, unsigned e);

  bool divides(const Monomial& other) const noexcept;
  bool coprime(const Monomial& other) const noexcept;
  Monomial operator*(const Monomial& other) const noexcept;
  // Requires divides(*this, num).
  Monomial quotient_of(const Monomial& num) const noexcept;
  Monomial lcm(const Monomial& other) const noexcept;

  bool operator==(const Monomial& other) const noexcept {
    return nvars_ == other.nvars_ && exps_ == other.exps_;
  }

  std::size_t hash() const noexcept;

 private:
  std::array<std::uint16_t, kMaxVars> exps_{};
  std::uint8_t nvars_ = 0;
  unsigned degree_ = 0;
};

// Graded reverse-lexicographic comparison: positive when a > b.
int grevlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return grevlex_compare(a, b) > 0;
  }
};

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse polynomial over Q. Terms are kept sorted by decreasing grevlex order
// with no zero coefficients, so structural equality is mathematical equality.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Monomial& m, const Rational& c);
  // Builds from unsorted terms, combining duplicates and dropping zeros.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  // Nonzero constant.
  bool is_unit() const noexcept;
  unsigned total_degree() const noexcept;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  Rational constant_term() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  bool operator==(const Polynomial& other) const;

  // this - c * m * g, computed in a single merge.
  Polynomial sub_scaled(const Rational& c, const Monomial& m, const Polynomial& g) const;

  Polynomial pow(unsigned k) const;
  // Partial derivative with respect to the 0-based variable `index`.
  Polynomial diff(std::size_t index) const;
  // Scales so the leading coefficient is 1; zero stays zero.
  Polynomial monic() const;

  Rational eval(std::span<const Rational> point) const;
  double eval(std::span<const double> point) const;

  // Substitutes x_i -> subs[i]; the result lives in subs' variable count.
  Polynomial compose(std::span<const Polynomial> subs) const;

  std::string to_string(std::span<const std::string> names) const;
  // Uses x1, x2, ... as variable names.
  std::string to_string() const;

 private:
  void require_same_ring(const Polynomial& other) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Flattened double-precision copy of a polynomial for hot evaluation loops.
class FloatPolynomial {
 public:
  FloatPolynomial() = default;
  explicit FloatPolynomial(const Polynomial& p);

  std::size_t nvars() const noexcept { return nvars_; }
  double operator()(std::span<const double> point) const;

 private:
  std::size_t nvars_ = 0;
  unsigned max_exp_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::uint16_t> exps_;  // row-major, nvars_ per term
};

// Converts a double to the nearest rational by continued fractions, stopping at
// the first convergent within `tol` of x.
Rational rationalize(double x, double tol = 1e-12);

std::string rational_to_string(const Rational& r);

}  // namespace idet
