#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "idet/problem.hpp"
#include "idet/problem_io.hpp"

namespace idet::testing {

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "morse-transversal", "d-infinity",         "d-infinity-t2",
      "x2y2-fail",         "cusp-psi",           "full-rank-isolated",
      "p3-complete-intersection"};
  return names;
}

inline ProblemSpec load_corpus(const std::string& name) {
  return load_problem(std::string(IDET_CORPUS_DIR) + "/" + name + ".idp");
}

// Sum of 1-3 terms of degree in [min_deg, max_deg] with coefficients in -2..2.
inline Polynomial random_poly(std::mt19937_64& rng, std::size_t n, unsigned min_deg,
                              unsigned max_deg) {
  std::vector<Term> terms;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < count; ++k) {
    Monomial m(n);
    unsigned d = min_deg + static_cast<unsigned>(rng() % (max_deg - min_deg + 1));
    for (unsigned e = 0; e < d; ++e) {
      std::size_t v = rng() % n;
      m.set(v, m[v] + 1);
    }
    terms.push_back({m, Rational(static_cast<int>(rng() % 5) - 2)});
  }
  return Polynomial::from_terms(n, std::move(terms));
}

// n in 2..4, p in 1..min(3, n), psi of degree 1..2 without constant term,
// symmetric H with entries of degree <= 2.
inline ProblemSpec random_spec(std::mt19937_64& rng) {
  const std::size_t n = 2 + rng() % 3;
  const std::size_t p = 1 + rng() % std::min<std::size_t>(3, n);
  ProblemSpec s;
  s.id = "random";
  for (std::size_t i = 0; i < n; ++i) s.varnames.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < p; ++i) {
    Polynomial q = random_poly(rng, n, 1, 2);
    if (q.is_zero()) q = Polynomial::variable(n, i);
    s.psi.push_back(std::move(q));
  }
  s.H = PolyMatrix(p, p, n);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      Polynomial q = random_poly(rng, n, 0, 2);
      s.H(i, j) = q;
      s.H(j, i) = q;
    }
  return s;
}

inline Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
inline Polynomial cst(std::size_t n, const Rational& c) { return Polynomial::constant(n, c); }

}  // namespace idet::testing
