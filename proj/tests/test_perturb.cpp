#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "idet/errors.hpp"
#include "idet/hessian.hpp"
#include "idet/perturb.hpp"
#include "idet/problem_io.hpp"
#include "support.hpp"

using namespace idet;
using idet::testing::load_corpus;

namespace {

SpectralData manual(std::vector<double> h, std::size_t p) {
  SpectralData s;
  s.point.assign(1, 0.0);
  s.H = std::move(h);
  s.eig = jacobi_eigen(s.H, p);
  return s;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-12) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

ProblemSpec x2y() {
  return parse_problem(
      "vars = x y\npsi = [x]\nH = [[y]]\nxcharts = [(t) -> (0, t)]\n", "x2y");
}

}  // namespace

TEST_CASE("Jacobi eigenvalues") {
  for (double c : {0.5, 3.0, -0.25}) {
    auto e = jacobi_eigen(std::vector<double>{1, 0, 0, c}, 2);
    CHECK(e.eigenvalues[0] == doctest::Approx(std::abs(c) < 1 ? c : 1.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(std::abs(c) < 1 ? 1.0 : c));
  }
  auto swap = jacobi_eigen(std::vector<double>{0, 1, 1, 0}, 2);
  auto ev = swap.eigenvalues;
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(1.0));

  auto one = jacobi_eigen(std::vector<double>{-4}, 1);
  CHECK(one.eigenvalues == std::vector<double>{-4});
  CHECK(one.P == std::vector<double>{1});

  CHECK_THROWS_AS(jacobi_eigen(std::vector<double>{1, 2, 3, 4}, 2), InputError);
  CHECK_THROWS_AS(jacobi_eigen(std::vector<double>{1, 2, 3}, 2), InputError);
}

TEST_CASE("Jacobi reconstructs a dense matrix") {
  std::vector<double> m = {4, 1, -2, 1, 2, 0.5, -2, 0.5, -3};
  auto e = jacobi_eigen(m, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double acc = 0, dot = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        acc += e.P[i * 3 + k] * e.eigenvalues[k] * e.P[j * 3 + k];
        dot += e.P[k * 3 + i] * e.P[k * 3 + j];
      }
      CHECK(std::abs(acc - m[i * 3 + j]) <= 1e-12);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
  for (std::size_t k = 1; k < 3; ++k)
    CHECK(std::abs(e.eigenvalues[k - 1]) <= std::abs(e.eigenvalues[k]));
}

TEST_CASE("V kills the smallest eigenvalue, W shifts all of them") {
  const double t = 0.25, eps = 1e-3;
  auto s = manual({1, 0, 0, t}, 2);
  auto pair = build_pair(s, eps);
  CHECK(pair.killed == 0);
  check_close(pair.V, {0, 0, 0, t});
  check_close(pair.W, {eps, 0, 0, eps});
  CHECK(pair.v_bound_holds);
  CHECK(max_norm(pair.V) <= std::abs(t) + 1e-12);
  CHECK_THROWS_AS(build_pair(s, 0.0), InputError);
  CHECK(max_norm(std::vector<double>{1, -7, 2, 0}) == 7);
}

TEST_CASE("a double eigenvalue still gives a rank one V") {
  auto s = manual({2, 0, 0, 2}, 2);
  auto pair = build_pair(s, 1e-3);
  const auto& v = pair.V;
  CHECK(std::abs(v[0] * v[3] - v[1] * v[2]) <= 1e-12);
  CHECK(std::abs(v[0] + v[3] - 2.0) <= 1e-12);
}

TEST_CASE("epsilon flips sign on a tie with an eigenvalue") {
  auto s = manual({1e-3, 0, 0, 5}, 2);
  auto pair = build_pair(s, 1e-3);
  CHECK(pair.epsilons[0] == doctest::Approx(-1e-3));
  CHECK(pair.epsilons[1] == doctest::Approx(1e-3));
}

TEST_CASE("pairs on the corpus") {
  auto dinf = load_corpus("d-infinity");
  std::vector<double> y = {0, 0, 1};
  auto sd = spectral_data(dinf, y);
  auto pair = build_pair(sd, default_eps_scale(sd));
  CHECK(default_eps_scale(sd) == doctest::Approx(2e-3));
  auto r = verify_pair(dinf, y, pair);
  CHECK(r.v_degenerate);
  CHECK(r.w_matches);
  CHECK(r.spectral_ok);
  CHECK(std::abs(r.det_minus_V) <= 1e-12);
  CHECK(check_hess_identity(r.perturbed).holds);
  CHECK(r.perturbed.id == "d-infinity-perturbed");

  std::vector<double> zero = {0, 0, 0};
  auto sz = spectral_data(dinf, zero);
  auto pz = build_pair(sz, default_eps_scale(sz));
  check_close(pz.V, {0, 0, 0, 0});
  CHECK(verify_pair(dinf, zero, pz).v_degenerate);

  std::vector<double> off = {0.1, 0, 0};
  CHECK_THROWS_AS(spectral_data(dinf, off), DomainError);
  CHECK_THROWS_AS(verify_pair(dinf, off, pair), DomainError);
}

TEST_CASE("x^2 y at (0, 1)") {
  auto s = x2y();
  std::vector<double> y = {0, 1};
  auto sd = spectral_data(s, y);
  const double eps = default_eps_scale(sd);
  auto pair = build_pair(sd, eps);
  auto r = verify_pair(s, y, pair);
  CHECK(r.det_minus_W == doctest::Approx(1 - eps));
  CHECK(r.det_minus_V == doctest::Approx(0.0));
  CHECK(r.eigen_product == doctest::Approx(1 - eps));
  CHECK(check_hess_identity(r.perturbed).holds);
}

TEST_CASE("perturbation suite along every chart") {
  for (const auto& name : idet::testing::corpus_names()) {
    CAPTURE(name);
    auto s = load_corpus(name);
    for (const auto& chart : s.xcharts) {
      const int count = chart.arity() == 0 ? 1 : 20;
      for (int k = 0; k < count; ++k) {
        std::vector<double> t(chart.arity(), -0.9 + 1.8 * k / 19.0);
        auto y = chart(std::span<const double>(t));
        auto sd = spectral_data(s, y);
        auto pair = build_pair(sd, default_eps_scale(sd));
        auto r = verify_pair(s, y, pair);
        CHECK(r.v_degenerate);
        CHECK(r.w_matches);
        CHECK(r.spectral_ok);
        CHECK(pair.v_bound_holds);
      }
    }
  }
}
