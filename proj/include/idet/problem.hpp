#pragma once

#include <string>
#include <vector>

#include "idet/poly_matrix.hpp"
#include "idet/polynomial.hpp"

namespace idet {

// Polynomial parametrization t -> gamma(t) of a piece of a set germ, with
// gamma(0) = 0. Components live in `params.size()` variables.
struct ChartMap {
  std::vector<std::string> params;
  std::vector<Polynomial> components;
  std::string label;

  std::size_t arity() const noexcept { return params.size(); }
  std::size_t dimension() const noexcept { return components.size(); }

  std::vector<double> operator()(std::span<const double> t) const;
  std::vector<Rational> operator()(std::span<const Rational> t) const;
};

struct YDescriptor {
  enum class Kind { Origin, Charts };
  Kind kind = Kind::Origin;
  std::vector<ChartMap> charts;

  bool is_origin() const noexcept { return kind == Kind::Origin; }
};

// Input data: psi = (psi_1..psi_p) in n variables, the symmetric matrix
// H = (f_ij) with f = sum f_ij psi_i psi_j, the set Y, charts of X = {psi = 0},
// and syzygies of psi beyond the trivial ones.
struct ProblemSpec {
  std::string id;
  std::vector<std::string> varnames;
  std::vector<Polynomial> psi;
  PolyMatrix H;
  YDescriptor Y;
  std::vector<ChartMap> xcharts;
  std::vector<std::vector<Polynomial>> extra_syzygies;

  std::size_t n() const noexcept { return varnames.size(); }
  std::size_t p() const noexcept { return psi.size(); }
};

// Checks every ProblemSpec invariant; throws InputError with a distinct code
// ("H-not-symmetric", "psi-constant-term", "chart-not-on-X", ...).
void validate(const ProblemSpec& spec);

bool operator==(const ChartMap& a, const ChartMap& b);
bool operator==(const YDescriptor& a, const YDescriptor& b);
bool operator==(const ProblemSpec& a, const ProblemSpec& b);

}  // namespace idet
