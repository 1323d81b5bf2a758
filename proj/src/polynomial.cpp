#include "idet/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "idet/errors.hpp"

namespace idet {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVars) {
    throw InputError("too-many-vars", "at most " + std::to_string(kMaxVars) +
                                          " variables are supported");
  }
}

Monomial::Monomial(std::size_t nvars, std::span<const unsigned> exponents) : Monomial(nvars) {
  if (exponents.size() != nvars) {
    throw InputError("varcount-mismatch", "exponent vector length differs from variable count");
  }
  for (std::size_t i = 0; i < nvars; ++i) set(i, exponents[i]);
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("index-out-of-range", "variable index out of range");
  Monomial m(nvars);
  m.set(index, 1);
  return m;
}

void Monomial::set(std::size_t i, unsigned e) {
  if (e > std::numeric_limits<std::uint16_t>::max()) {
    throw InputError("exponent-overflow", "exponent too large");
  }
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const noexcept {
  Monomial r = *this;
  for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::quotient_of(const Monomial& num) const noexcept {
  Monomial r = num;
  for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] -= exps_[i];
  r.degree_ -= degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const noexcept {
  Monomial r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < nvars_; ++i) h = (h ^ exps_[i]) * 1099511628211ull;
  return h;
}

int grevlex_compare(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.push_back({Monomial::one(nvars), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  Polynomial p(nvars);
  p.terms_.push_back({Monomial::variable(nvars, index), Rational(1)});
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.mono.nvars() != nvars) {
      throw InputError("varcount-mismatch", "term variable count differs from polynomial");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_compare(a.mono, b.mono) > 0; });
  Polynomial p(nvars);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.degree() == 0);
}

bool Polynomial::is_unit() const noexcept {
  return terms_.size() == 1 && terms_.front().mono.degree() == 0;
}

unsigned Polynomial::total_degree() const noexcept {
  // Graded order: the leading term has maximal degree.
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.degree() == 0) return terms_.back().coeff;
  return 0;
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (nvars_ != other.nvars_) {
    throw InputError("varcount-mismatch", "polynomials live in rings with " +
                                              std::to_string(nvars_) + " and " +
                                              std::to_string(other.nvars_) + " variables");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other);
  *this = sub_scaled(Rational(-1), Monomial::one(nvars_), other);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(other);
  *this = sub_scaled(Rational(1), Monomial::one(nvars_), other);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_);
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& big = a.size() <= b.size() ? b : a;
  // Each row big * t is already sorted; merge rows one at a time.
  Polynomial acc(a.nvars_);
  for (const auto& t : small.terms_) acc = acc.sub_scaled(-t.coeff, t.mono, big);
  return acc;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (nvars_ != other.nvars_ || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coeff != other.terms_[i].coeff)
      return false;
  }
  return true;
}

Polynomial Polynomial::sub_scaled(const Rational& c, const Monomial& m,
                                  const Polynomial& g) const {
  require_same_ring(g);
  Polynomial r(nvars_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Rational tmp;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      r.terms_.push_back(terms_[i++]);
      continue;
    }
    Monomial gm = g.terms_[j].mono * m;
    int cmp = i == terms_.size() ? -1 : grevlex_compare(terms_[i].mono, gm);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      tmp = -c * g.terms_[j].coeff;
      r.terms_.push_back({gm, tmp});
      ++j;
    } else {
      tmp = terms_[i].coeff - c * g.terms_[j].coeff;
      if (tmp != 0) r.terms_.push_back({gm, tmp});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::diff(std::size_t index) const {
  if (index >= nvars_) {
    throw InputError("index-out-of-range", "derivative index " + std::to_string(index) +
                                               " out of range for " + std::to_string(nvars_) +
                                               " variables");
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    unsigned e = t.mono[index];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(index, e - 1);
    out.push_back({m, t.coeff * e});
  }
  // Lowering one exponent can reorder terms under grevlex.
  return from_terms(nvars_, std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading_coeff();
  Polynomial r = *this;
  r *= inv;
  return r;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
  if (point.size() != nvars_) {
    throw InputError("varcount-mismatch", "evaluation point has " +
                                              std::to_string(point.size()) +
                                              " coordinates, expected " +
                                              std::to_string(nvars_));
  }
  // Horner in the last variable over terms grouped by the other exponents is
  // not worth it at this size; cache powers instead.
  unsigned maxe = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) maxe = std::max(maxe, t.mono[i]);
  std::vector<std::vector<Rational>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].resize(maxe + 1);
    powers[i][0] = 1;
    Rational xi = point[i];
    xi.canonicalize();
    for (unsigned e = 1; e <= maxe; ++e) powers[i][e] = powers[i][e - 1] * xi;
  }
  Rational sum = 0;
  Rational prod;
  for (const auto& t : terms_) {
    prod = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.mono[i] != 0) prod *= powers[i][t.mono[i]];
    sum += prod;
  }
  return sum;
}

double Polynomial::eval(std::span<const double> point) const {
  return FloatPolynomial(*this)(point);
}

Polynomial Polynomial::compose(std::span<const Polynomial> subs) const {
  if (subs.size() != nvars_) {
    throw InputError("varcount-mismatch", "substitution list length differs from variable count");
  }
  std::size_t target = subs.empty() ? 0 : subs.front().nvars();
  for (const auto& s : subs) {
    if (s.nvars() != target) throw InputError("varcount-mismatch", "substitutions disagree on ring");
  }
  unsigned maxe = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) maxe = std::max(maxe, t.mono[i]);
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].push_back(constant(target, 1));
    for (unsigned e = 1; e <= maxe; ++e) powers[i].push_back(powers[i].back() * subs[i]);
  }
  Polynomial sum(target);
  for (const auto& t : terms_) {
    Polynomial prod = constant(target, t.coeff);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.mono[i] != 0) prod *= powers[i][t.mono[i]];
    sum += prod;
  }
  return sum;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() != nvars_) {
    throw InputError("varcount-mismatch", "name list length differs from variable count");
  }
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool need_star = false;
    if (c != 1 || t.mono.degree() == 0) {
      os << rational_to_string(c);
      need_star = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      unsigned e = t.mono[i];
      if (e == 0) continue;
      if (need_star) os << "*";
      os << names[i];
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i + 1));
  return to_string(names);
}

// --------------------------------------------------------- FloatPolynomial

FloatPolynomial::FloatPolynomial(const Polynomial& p) : nvars_(p.nvars()) {
  for (const auto& t : p.terms()) {
    coeffs_.push_back(t.coeff.get_d());
    for (std::size_t i = 0; i < nvars_; ++i) {
      exps_.push_back(static_cast<std::uint16_t>(t.mono[i]));
      max_exp_ = std::max<unsigned>(max_exp_, t.mono[i]);
    }
  }
}

double FloatPolynomial::operator()(std::span<const double> point) const {
  if (point.size() != nvars_) {
    throw InputError("varcount-mismatch", "evaluation point has wrong length");
  }
  constexpr std::size_t kMaxPow = 32;
  std::array<std::array<double, kMaxPow>, kMaxVars> powers{};
  bool table = max_exp_ < kMaxPow;
  if (table) {
    for (std::size_t i = 0; i < nvars_; ++i) {
      powers[i][0] = 1.0;
      for (unsigned e = 1; e <= max_exp_; ++e) powers[i][e] = powers[i][e - 1] * point[i];
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    double prod = coeffs_[k];
    const std::uint16_t* e = exps_.data() + k * nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      prod *= table ? powers[i][e[i]] : std::pow(point[i], e[i]);
    }
    sum += prod;
  }
  return sum;
}

Rational rationalize(double x, double tol) {
  if (!std::isfinite(x)) throw InputError("non-finite", "cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    Rational approx(h, k);
    approx.canonicalize();
    if (std::abs(approx.get_d() - x) <= tol || frac == 0.0) return approx;
    double inv = 1.0 / frac;
    double a = std::floor(inv);
    frac = inv - a;
    mpz_class ai = static_cast<long>(a);
    mpz_class h_next = ai * h + h_prev;
    mpz_class k_next = ai * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rational approx(h, k);
  approx.canonicalize();
  return approx;
}

}  // namespace idet
