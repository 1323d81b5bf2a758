#include <doctest.h>

#include <algorithm>

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

bool same_set(const ProblemSpec& s, const std::vector<Polynomial>& got,
              std::initializer_list<const char*> want) {
  if (got.size() != want.size()) return false;
  for (const char* w : want)
    if (std::find(got.begin(), got.end(), P(s, w)) == got.end()) return false;
  return true;
}

ProblemSpec single(const char* psi, const char* h) {
  ProblemSpec s;
  s.id = "single";
  s.varnames = {"x", "y"};
  s.psi = {P(s, psi)};
  s.H = PolyMatrix(1, 1, {P(s, h)});
  return s;
}

}  // namespace

TEST_CASE("lifted columns and Lambda for D-infinity") {
  auto s = load_corpus("d-infinity");
  auto cols = build_columns(s);
  REQUIRE(cols.size() == 3);
  CHECK(cols[0] == PolyVector{P(s, "2"), P(s, "0")});
  CHECK(cols[1] == PolyVector{P(s, "0"), P(s, "2*z")});
  CHECK(cols[2] == PolyVector{P(s, "0"), P(s, "y")});

  auto data = build_lambda(s);
  CHECK(data.lambda == PolyMatrix(2, 4, {P(s, "2"), P(s, "0"), P(s, "0"), P(s, "y"), P(s, "0"),
                                         P(s, "2*z"), P(s, "y"), P(s, "-x")}));
  REQUIRE(data.column_tags.size() == 4);
  CHECK(data.column_tags[3] == ColumnTag{ColumnTag::Kind::Syz, 0, 1});
  CHECK(same_set(s, data.kf_gens, {"x", "y", "z", "z*y", "y^2"}));
  CHECK(data.kf_subsets.size() == data.kf_gens.size());
  CHECK(column_contract_holds(s, data));
  CHECK(fitting_ideal_basis(s, data).generators() ==
        std::vector<Polynomial>{P(s, "z"), P(s, "y"), P(s, "x")});
}

TEST_CASE("Morse germ has a unit Fitting ideal") {
  auto s = load_corpus("morse-transversal");
  auto cols = build_columns(s);
  CHECK(cols[0] == PolyVector{P(s, "2"), P(s, "0")});
  CHECK(cols[1] == PolyVector{P(s, "0"), P(s, "2")});
  CHECK(cols[2] == PolyVector{P(s, "0"), P(s, "0")});
  auto data = build_lambda(s);
  CHECK(fitting_ideal_basis(s, data).is_unit_ideal());
  CHECK(verify_dol(s, data).holds);
}

TEST_CASE("x^2 y^2 has Fitting ideal (y^2, x y)") {
  auto s = load_corpus("x2y2-fail");
  auto data = build_lambda(s);
  CHECK(data.lambda == PolyMatrix(1, 2, {P(s, "2*y^2"), P(s, "2*x*y")}));
  CHECK(same_set(s, data.kf_gens, {"y^2", "x*y"}));
  CHECK(column_contract_holds(s, data));
}

TEST_CASE("zero H gives zero columns and a vacuous dol") {
  auto s = load_corpus("full-rank-isolated");
  s.H = PolyMatrix(2, 2, 2);
  for (const auto& c : build_columns(s))
    for (const auto& e : c) CHECK(e.is_zero());
  auto data = build_lambda(s);
  CHECK(data.kf_gens.empty());
  CHECK(verify_dol(s, data).holds);
  CHECK(verify_dol_by_adjugate(s, data).holds);
}

TEST_CASE("trivial syzygies") {
  auto two = load_corpus("full-rank-isolated");
  auto t2 = trivial_syzygies(two);
  REQUIRE(t2.size() == 1);
  CHECK(t2[0] == PolyVector{P(two, "y"), P(two, "-x")});

  auto three = load_corpus("morse-transversal");
  three.psi.push_back(P(three, "z"));
  auto t3 = trivial_syzygies(three);
  REQUIRE(t3.size() == 3);
  CHECK(t3[0] == PolyVector{P(three, "y"), P(three, "-x"), P(three, "0")});
  CHECK(t3[1] == PolyVector{P(three, "z"), P(three, "0"), P(three, "-x")});
  CHECK(t3[2] == PolyVector{P(three, "0"), P(three, "z"), P(three, "-y")});

  CHECK(trivial_syzygies(single("x", "y")).empty());
}

TEST_CASE("Hessian minors against Lambda minors") {
  auto s = load_corpus("d-infinity");
  auto data = build_lambda(s);
  std::vector<std::size_t> c12 = {0, 1};
  auto r12 = verify_mudet(s, data, c12);
  CHECK(r12.mu == P(s, "1"));
  CHECK(r12.det_h == P(s, "z"));
  CHECK(r12.a_mu == P(s, "4*z"));
  CHECK(r12.b_mu.is_zero());
  CHECK(r12.holds);

  std::vector<std::size_t> c13 = {0, 2};
  auto r13 = verify_mudet(s, data, c13);
  CHECK(r13.mu.is_zero());
  CHECK(r13.a_mu == P(s, "2*y"));
  CHECK(r13.b_mu == P(s, "-2*y"));
  CHECK(r13.holds);

  auto all = verify_mudet_all(s, data);
  CHECK(all.size() == 3);
  for (const auto& r : all) CHECK(r.holds);

  auto x2y = single("x", "y");
  auto d1 = build_lambda(x2y);
  std::vector<std::size_t> c1 = {0};
  auto r1 = verify_mudet(x2y, d1, c1);
  CHECK(r1.a_mu == P(x2y, "2*y"));
  CHECK(r1.b_mu.is_zero());
}

TEST_CASE("psi power times gradient") {
  auto x2y = single("x", "y");
  CHECK(verify_psi_power_grad(x2y, build_lambda(x2y)).status == CheckStatus::NotApplicable);
  auto s = load_corpus("d-infinity");
  auto r = verify_psi_power_grad(s, build_lambda(s));
  CHECK(r.status == CheckStatus::Holds);
  CHECK(r.v_germ == CheckStatus::Holds);
  CHECK_FALSE(r.failing);
}

TEST_CASE("Groebner and cofactor routes agree on the corpus") {
  for (const auto& name : idet::testing::corpus_names()) {
    CAPTURE(name);
    auto s = load_corpus(name);
    auto data = build_lambda(s);
    auto gb = verify_dol(s, data);
    auto adj = verify_dol_by_adjugate(s, data);
    CHECK(gb.method == MembershipMethod::GroebnerBasis);
    CHECK(adj.method == MembershipMethod::CofactorIdentity);
    CHECK(gb.holds);
    CHECK(adj.holds);
    if (s.p() >= 2) {
      auto a = verify_psi_power_grad(s, data);
      auto b = verify_psi_power_grad_by_minors(s, data);
      CHECK(a.status == CheckStatus::Holds);
      CHECK(b.status == a.status);
    }
  }
}

TEST_CASE("Fitting ideal does not depend on the order of extra syzygies") {
  auto s = load_corpus("p3-complete-intersection");
  std::vector<Polynomial> a = {P(s, "y"), P(s, "-x"), P(s, "0")};
  std::vector<Polynomial> b = {P(s, "z - w^2"), P(s, "0"), P(s, "-x")};
  ProblemSpec s1 = s, s2 = s;
  s1.extra_syzygies = {a, b};
  s2.extra_syzygies = {b, a};
  validate(s1);
  auto d1 = build_lambda(s1);
  auto d2 = build_lambda(s2);
  CHECK(d1.kf_gens == d2.kf_gens);
  CHECK(d1.lambda.cols() == s.n() + 3 + 2);
}

TEST_CASE("minor enumeration is capped") {
  ProblemSpec s;
  s.id = "big";
  for (int i = 1; i <= 8; ++i) s.varnames.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < 4; ++i) s.psi.push_back(Polynomial::variable(8, i));
  s.H = PolyMatrix(4, 4, 8);
  for (std::size_t i = 0; i < 4; ++i) s.H(i, i) = Polynomial::constant(8, 1);
  std::vector<Polynomial> extra = {P(s, "x2"), P(s, "-x1"), P(s, "0"), P(s, "0")};
  s.extra_syzygies.assign(20, extra);
  CHECK_THROWS_AS(build_lambda(s), SizeError);
}
