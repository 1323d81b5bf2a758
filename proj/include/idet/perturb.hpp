#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idet/problem.hpp"

namespace idet {

// Eigen-decomposition of a symmetric matrix: M = P diag(eigenvalues) P^T,
// eigenpairs sorted by increasing |lambda|. Matrices are row-major and P
// holds eigenvectors as columns.
struct Eigensystem {
  std::size_t size = 0;
  std::vector<double> eigenvalues;
  std::vector<double> P;
};

// Cyclic Jacobi. Throws InputError("not-symmetric") when |M_ij - M_ji| > 1e-12.
Eigensystem jacobi_eigen(std::span<const double> M, std::size_t p);

struct SpectralData {
  std::vector<double> point;
  std::vector<double> H;  // H(point), row-major p x p
  Eigensystem eig;
};

// Throws DomainError when the point is off X.
SpectralData spectral_data(const ProblemSpec& spec, std::span<const double> point);

// Largest absolute entry.
double max_norm(std::span<const double> m);

struct PerturbationPair {
  std::size_t p = 0;
  std::vector<double> V;  // kills the eigenvalue at `killed`
  std::vector<double> W;  // shifts every eigenvalue by -epsilons[i]
  std::vector<double> epsilons;
  std::size_t killed = 0;  // index of the minimal |lambda|
  bool v_bound_holds = false;  // |V_ij| <= |lambda_killed| + 1e-12
};

// 1e-3 (1 + |H(y)|_max).
double default_eps_scale(const SpectralData& s);

// Throws InputError when eps_scale <= 0.
PerturbationPair build_pair(const SpectralData& s, double eps_scale);

struct PairReport {
  double h_norm = 0.0;
  double det_minus_V = 0.0;
  double det_minus_W = 0.0;
  double eigen_product = 0.0;  // prod (lambda_i - eps_i)
  bool v_degenerate = false;   // |det(H - V)| <= 1e-8 (1 + |H|)^p
  bool w_matches = false;      // det(H - W) within relative 1e-6 of the product
  double orthogonality_error = 0.0;     // |P^T P - I|_max
  double diagonalization_error = 0.0;   // |P^T H P - diag|_max
  bool spectral_ok = false;
  ProblemSpec perturbed;  // H - V with rationalized constant entries
};

// Throws DomainError when y is off X.
PairReport verify_pair(const ProblemSpec& spec, std::span<const double> y,
                       const PerturbationPair& pair);

}  // namespace idet
