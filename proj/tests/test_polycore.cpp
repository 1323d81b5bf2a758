#include <doctest.h>

#include <random>

#include "idet/errors.hpp"
#include "idet/poly_matrix.hpp"
#include "idet/problem_io.hpp"
#include "support.hpp"

using namespace idet;
using idet::testing::random_poly;

namespace {

const std::vector<std::string> xyz = {"x", "y", "z"};

Polynomial P(const std::string& s) { return parse_polynomial(s, xyz); }

}  // namespace

TEST_CASE("rationals stay in lowest terms") {
  Rational a(6, 8);
  a.canonicalize();
  CHECK(a.get_num() == 3);
  CHECK(a.get_den() == 4);
  Polynomial p = P("2/4*x");
  CHECK(p.leading_coeff().get_den() == 2);
}

TEST_CASE("arithmetic examples") {
  CHECK((P("x + y") * P("x - y")) == P("x^2 - y^2"));
  Polynomial q = P("x*y + 3*z^2 - 1");
  CHECK((q - q).is_zero());
  CHECK((q - q).terms().empty());
  CHECK((P("1/2*x") * P("2/3*y")) == P("1/3*x*y"));
}

TEST_CASE("varcount mismatch is an input error") {
  Polynomial a = Polynomial::variable(2, 0);
  Polynomial b = Polynomial::variable(3, 0);
  CHECK_THROWS_AS(a + b, InputError);
  CHECK_THROWS_AS(a * b, InputError);
  std::vector<Rational> pt = {1, 2, 3};
  CHECK_THROWS_AS(a.eval(std::span<const Rational>(pt)), InputError);
}

TEST_CASE("differentiation") {
  CHECK(P("x^2*y").diff(0) == P("2*x*y"));
  CHECK(P("x^2*y").diff(2).is_zero());
  CHECK(P("x^2 + z*y^2").diff(2) == P("y^2"));
  CHECK_THROWS_AS(P("x").diff(3), InputError);
}

TEST_CASE("exact evaluation") {
  std::vector<Rational> a = {0, 0, 1}, b = {1, 1, 1};
  CHECK(P("x^2 + z*y^2").eval(std::span<const Rational>(a)) == 0);
  CHECK(P("x^2 + z*y^2").eval(std::span<const Rational>(b)) == 2);
  std::vector<std::string> xy = {"x", "y"};
  std::vector<Rational> c = {0, 3};
  CHECK(parse_polynomial("2*y", xy).eval(std::span<const Rational>(c)) == 6);
  std::vector<double> d = {0.5, 0.25, -2.0};
  CHECK(P("x^2 + z*y^2").eval(std::span<const double>(d)) == doctest::Approx(0.125));
  CHECK(FloatPolynomial(P("x^2 + z*y^2"))(d) == doctest::Approx(0.125));
}

TEST_CASE("canonical grevlex order") {
  // Leading term of x*z^2 + y^3 under grevlex with x > y > z is y^3.
  Polynomial p = P("x*z^2 + y^3");
  CHECK(p.leading_monomial() == P("y^3").leading_monomial());
  CHECK(P("x + y^2").leading_monomial() == P("y^2").leading_monomial());
  CHECK(P("y + x") == P("x + y"));
}

TEST_CASE("printing round-trips through the parser") {
  for (const char* s : {"-1/2*x^2*y + 3", "x - y", "0", "-z", "7/3*x*y*z - 2*x^3 + 1/5"}) {
    Polynomial p = P(s);
    CHECK(P(p.to_string(xyz)) == p);
  }
  CHECK(P("-1/2*x^2*y + 3").to_string(xyz) == "-1/2*x^2*y + 3");
}

TEST_CASE("minors") {
  std::vector<std::string> names = {"x", "y", "z"};
  PolyMatrix m(2, 2, {P("2"), P("0"), P("0"), P("2*z")});
  std::vector<std::size_t> r = {0, 1}, c = {0, 1};
  CHECK(m.minor(r, c) == P("4*z"));
  std::vector<std::size_t> rep = {0, 0};
  CHECK_THROWS_AS(m.minor(r, rep), InputError);
  std::vector<std::size_t> out = {0, 2};
  CHECK_THROWS_AS(m.minor(r, out), InputError);
  std::vector<std::size_t> short_rows = {0};
  CHECK_THROWS_AS(m.minor(short_rows, c), InputError);

  PolyMatrix lam(2, 4, {P("2"), P("0"), P("0"), P("y"), P("0"), P("2*z"), P("y"), P("-x")});
  std::vector<std::size_t> c34 = {2, 3};
  CHECK(lam.minor(r, c34) == P("-y^2"));
  std::vector<std::size_t> c43 = {3, 2};
  CHECK(lam.minor(r, c43) == P("y^2"));
}

TEST_CASE("determinants agree between exact and cofactor routes") {
  PolyMatrix m(3, 3, {P("1"), P("2"), P("3"), P("4"), P("5"), P("6"), P("7"), P("8"), P("10")});
  CHECK(m.determinant() == P("-3"));
  std::vector<Rational> e;
  for (const auto& q : m.entries()) e.push_back(q.constant_term());
  CHECK(determinant(e, 3) == -3);
}

TEST_CASE("rationalize recovers simple fractions") {
  CHECK(rationalize(0.5) == Rational(1, 2));
  CHECK(rationalize(-1.0 / 3.0) == Rational(-1, 3));
  CHECK(rationalize(0.0) == 0);
  double x = 0.123456789;
  CHECK(std::abs(rationalize(x).get_d() - x) <= 1e-12);
}

TEST_CASE("ring axioms, derivative rules and evaluation on random data") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + rng() % 4;
    Polynomial a = random_poly(rng, n, 0, 3), b = random_poly(rng, n, 0, 3),
               c = random_poly(rng, n, 0, 3);
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK((a * b) == (b * a));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK((a * b).diff(i) == (a.diff(i) * b + a * b.diff(i)));
      for (std::size_t j = 0; j < n; ++j) CHECK(a.diff(i).diff(j) == a.diff(j).diff(i));
    }
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < n; ++i) {
      pt.emplace_back(static_cast<int>(rng() % 7) - 3, 1 + rng() % 4);
      pt.back().canonicalize();
    }
    CHECK((a * b).eval(std::span<const Rational>(pt)) ==
          a.eval(std::span<const Rational>(pt)) * b.eval(std::span<const Rational>(pt)));
    CHECK((a + b).eval(std::span<const Rational>(pt)) ==
          a.eval(std::span<const Rational>(pt)) + b.eval(std::span<const Rational>(pt)));
  }
}

TEST_CASE("equal columns give a zero minor") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<Polynomial> e;
    for (int k = 0; k < 9; ++k) e.push_back(random_poly(rng, n, 0, 2));
    PolyMatrix m(3, 3, e);
    for (std::size_t r = 0; r < 3; ++r) m(r, 2) = m(r, 0);
    CHECK(m.determinant().is_zero());
  }
}

TEST_CASE("more than eight variables is refused") {
  CHECK_THROWS_AS(Monomial(9), InputError);
}
