#include <doctest.h>

#include <random>

#include "idet/errors.hpp"
#include "idet/fitting.hpp"
#include "idet/hessian.hpp"
#include "idet/problem_io.hpp"
#include "support.hpp"

using namespace idet;
using idet::testing::load_corpus;

namespace {

Polynomial P(const ProblemSpec& s, const std::string& text) {
  return parse_polynomial(text, s.varnames);
}

std::vector<Rational> Q(std::initializer_list<Rational> xs) { return std::vector<Rational>(xs); }

}  // namespace

TEST_CASE("assemble f") {
  auto morse = load_corpus("morse-transversal");
  CHECK(assemble_f(morse) == P(morse, "x^2 + y^2"));
  auto dinf = load_corpus("d-infinity");
  CHECK(assemble_f(dinf) == P(dinf, "x^2 + z*y^2"));
  auto x2y2 = load_corpus("x2y2-fail");
  CHECK(assemble_f(x2y2) == P(x2y2, "x^2*y^2"));
}

TEST_CASE("jacobian and gradient") {
  auto dinf = load_corpus("d-infinity");
  PolyMatrix j = jacobian(dinf);
  CHECK(j.rows() == 2);
  CHECK(j.cols() == 3);
  CHECK(j == PolyMatrix(2, 3, {P(dinf, "1"), P(dinf, "0"), P(dinf, "0"), P(dinf, "0"),
                               P(dinf, "1"), P(dinf, "0")}));
  auto g = gradient(dinf);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == P(dinf, "2*x"));
  CHECK(g[1] == P(dinf, "2*z*y"));
  CHECK(g[2] == P(dinf, "y^2"));

  ProblemSpec zero = dinf;
  zero.H = PolyMatrix(2, 2, 3);
  for (const auto& d : gradient(zero)) CHECK(d.is_zero());
}

TEST_CASE("degeneracy locus generators") {
  auto morse = load_corpus("morse-transversal");
  auto s = sigma_generators(morse);
  CHECK(std::find(s.begin(), s.end(), P(morse, "1")) != s.end());

  auto cusp = load_corpus("cusp-psi");
  auto c = sigma_generators(cusp);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == P(cusp, "2*x"));
  CHECK(c[1] == P(cusp, "-3*y^2"));
  CHECK(c[2] == P(cusp, "x^2 - y^3"));

  auto iso = load_corpus("full-rank-isolated");
  auto i = sigma_generators(iso);
  CHECK(i.front() == P(iso, "1"));
}

TEST_CASE("Hessian identity") {
  for (const auto& name : idet::testing::corpus_names()) {
    CAPTURE(name);
    auto r = check_hess_identity(load_corpus(name));
    CHECK(r.holds);
    CHECK_FALSE(r.failing_entry);
  }
  auto morse = load_corpus("morse-transversal");
  auto r = check_hess_identity(morse);
  for (const auto& e : r.residual.entries()) CHECK(e.is_zero());
  auto dinf = check_hess_identity(load_corpus("d-infinity"));
  CHECK_FALSE(dinf.residual(2, 1).is_zero());  // 2y, which lies in (x, y)
}

TEST_CASE("Hessian identity reports the failing entry of a non-symmetric H") {
  auto dinf = load_corpus("d-infinity");
  ProblemSpec bad = dinf;
  bad.H(0, 1) = P(dinf, "z");
  CHECK_THROWS_AS(validate(bad), InputError);
  // Past validation, f only sees the symmetric part and the identity breaks.
  auto r = check_hess_identity(bad);
  CHECK_FALSE(r.holds);
  REQUIRE(r.failing_entry);
  const auto [a, b] = *r.failing_entry;
  CHECK(((a == 0 && b == 1) || (a == 1 && b == 0)));
}

TEST_CASE("D_f at exact points") {
  auto dinf = load_corpus("d-infinity");
  for (int c : {-3, 0, 2, 7}) {
    auto pt = Q({0, 0, c});
    CHECK(eval_Df(dinf, std::span<const Rational>(pt)) == c);
  }
  auto half = Q({0, 0, Rational(1, 2)});
  CHECK(eval_Df(dinf, std::span<const Rational>(half)) == Rational(1, 2));
  auto off = Q({1, 0, 0});
  CHECK_THROWS_AS(eval_Df(dinf, std::span<const Rational>(off)), DomainError);

  auto x2y2 = load_corpus("x2y2-fail");
  auto p = Q({0, 5});
  CHECK(eval_Df(x2y2, std::span<const Rational>(p)) == 25);

  auto morse = load_corpus("morse-transversal");
  auto m = Q({0, 0, Rational(-7, 3)});
  CHECK(eval_Df(morse, std::span<const Rational>(m)) == 1);
}

TEST_CASE("floating D_f and membership tolerance") {
  auto dinf = load_corpus("d-infinity");
  std::vector<double> on = {0.0, 1e-12, 0.25};
  CHECK(on_X(dinf, on));
  CHECK(eval_Df(dinf, std::span<const double>(on)) == doctest::Approx(0.25));
  std::vector<double> off = {0.0, 1e-6, 0.25};
  CHECK_FALSE(on_X(dinf, off));
  CHECK_THROWS_AS(eval_Df(dinf, std::span<const double>(off)), DomainError);
}

TEST_CASE("D_f does not depend on the representation of f") {
  for (const auto& name : idet::testing::corpus_names()) {
    ProblemSpec s = load_corpus(name);
    if (s.p() < 2 || s.xcharts.front().arity() == 0) continue;
    CAPTURE(name);
    const std::size_t n = s.n();
    // Delta = [[psi_2 g, -psi_1 g / 2], [-psi_1 g / 2, 0]] in the top-left block.
    Polynomial g = Polynomial::constant(n, 3) + Polynomial::variable(n, n - 1);
    ProblemSpec t = s;
    t.H(0, 0) += s.psi[1] * g;
    Polynomial off = s.psi[0] * g * Rational(-1, 2);
    t.H(0, 1) += off;
    t.H(1, 0) += off;
    REQUIRE(assemble_f(t) == assemble_f(s));
    CHECK_FALSE(t.H == s.H);
    for (int k = 1; k <= 10; ++k) {
      std::vector<Rational> param = {Rational(k, 11) - Rational(1, 2)};
      param[0].canonicalize();
      auto y = s.xcharts.front()(std::span<const Rational>(param));
      CHECK(eval_Df(s, std::span<const Rational>(y)) == eval_Df(t, std::span<const Rational>(y)));
    }
  }
}

TEST_CASE("gradient consistency with the lifted columns") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 20; ++it) {
    ProblemSpec s = idet::testing::random_spec(rng);
    auto cols = build_columns(s);
    auto grad = gradient(s);
    for (std::size_t j = 0; j < s.n(); ++j) {
      Polynomial acc(s.n());
      for (std::size_t i = 0; i < s.p(); ++i) acc += cols[j][i] * s.psi[i];
      CHECK(acc == grad[j]);
    }
    CHECK(check_hess_identity(s).holds);
  }
}
