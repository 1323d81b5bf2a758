#pragma once

#include <optional>
#include <span>
#include <vector>

#include "idet/poly_matrix.hpp"
#include "idet/problem.hpp"

namespace idet {

// f = sum_{i,j} f_ij psi_i psi_j.
Polynomial assemble_f(const ProblemSpec& spec);

// psi' as a p x n matrix, entry (i, j) = d psi_i / d x_j.
PolyMatrix jacobian(const ProblemSpec& spec);

std::vector<Polynomial> gradient(const ProblemSpec& spec);

// All p x p minors of psi' followed by psi_1..psi_p; their common zeros are
// the degeneracy locus Sigma of X.
std::vector<Polynomial> sigma_generators(const ProblemSpec& spec);

struct HessIdentityResult {
  bool holds = false;
  // n x n matrix (1/2) f'' - psi'^T H psi'.
  PolyMatrix residual;
  // First entry (row, col) not in the ideal (psi), when !holds.
  std::optional<std::pair<std::size_t, std::size_t>> failing_entry;
};

// Verifies that (1/2) f'' and psi'^T H psi' agree modulo (psi), i.e. on X.
HessIdentityResult check_hess_identity(const ProblemSpec& spec);

// det H at an exact point of X. Throws DomainError if psi(point) != 0.
Rational eval_Df(const ProblemSpec& spec, std::span<const Rational> point);

// Floating point variants for sampling. A point counts as on X when
// |psi_i(point)| <= 1e-9 * (1 + |point|) for every i.
bool on_X(const ProblemSpec& spec, std::span<const double> point);
// Row-major p x p value of H at the point; no membership check.
std::vector<double> eval_H(const ProblemSpec& spec, std::span<const double> point);
// Throws DomainError if the point is not on X.
double eval_Df(const ProblemSpec& spec, std::span<const double> point);

// Determinant of a dense row-major matrix by partially pivoted elimination.
double determinant(std::vector<double> a, std::size_t n);

}  // namespace idet
