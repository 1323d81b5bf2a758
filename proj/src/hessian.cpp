#include "idet/hessian.hpp"

#include <cmath>

#include "idet/errors.hpp"
#include "idet/groebner.hpp"
#include "idet/subsets.hpp"

namespace idet {

Polynomial assemble_f(const ProblemSpec& spec) {
  const std::size_t p = spec.p();
  Polynomial f(spec.n());
  for (std::size_t i = 0; i < p; ++i) {
    // Symmetric: diagonal once, off-diagonal pairs twice.
    f += spec.H(i, i) * spec.psi[i] * spec.psi[i];
    for (std::size_t j = i + 1; j < p; ++j)
      f += Rational(2) * (spec.H(i, j) * spec.psi[i] * spec.psi[j]);
  }
  return f;
}

PolyMatrix jacobian(const ProblemSpec& spec) {
  const std::size_t n = spec.n();
  const std::size_t p = spec.p();
  PolyMatrix J(p, n, n);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < n; ++j) J(i, j) = spec.psi[i].diff(j);
  return J;
}

std::vector<Polynomial> gradient(const ProblemSpec& spec) {
  Polynomial f = assemble_f(spec);
  std::vector<Polynomial> g;
  g.reserve(spec.n());
  for (std::size_t j = 0; j < spec.n(); ++j) g.push_back(f.diff(j));
  return g;
}

std::vector<Polynomial> sigma_generators(const ProblemSpec& spec) {
  PolyMatrix J = jacobian(spec);
  std::vector<std::size_t> rows(spec.p());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<Polynomial> out;
  for_each_subset(spec.n(), spec.p(),
                  [&](std::span<const std::size_t> cols) { out.push_back(J.minor(rows, cols)); });
  out.insert(out.end(), spec.psi.begin(), spec.psi.end());
  return out;
}

HessIdentityResult check_hess_identity(const ProblemSpec& spec) {
  const std::size_t n = spec.n();
  Polynomial f = assemble_f(spec);
  PolyMatrix J = jacobian(spec);
  PolyMatrix pulled = J.transpose() * spec.H * J;

  HessIdentityResult result;
  result.residual = PolyMatrix(n, n, n);
  GroebnerBasis ideal = groebner(spec.psi, n);
  result.holds = true;
  for (std::size_t a = 0; a < n; ++a) {
    Polynomial fa = f.diff(a);
    for (std::size_t b = 0; b < n; ++b) {
      Polynomial r = Rational(1, 2) * fa.diff(b) - pulled(a, b);
      if (result.holds && !member(r, ideal)) {
        result.holds = false;
        result.failing_entry = {a, b};
      }
      result.residual(a, b) = std::move(r);
    }
  }
  return result;
}

Rational eval_Df(const ProblemSpec& spec, std::span<const Rational> point) {
  if (point.size() != spec.n()) throw InputError("varcount-mismatch", "point has wrong length");
  for (std::size_t i = 0; i < spec.p(); ++i) {
    if (spec.psi[i].eval(point) != 0) {
      throw DomainError("D_f is only defined on X: psi_" + std::to_string(i + 1) +
                        " does not vanish at the point");
    }
  }
  return determinant(spec.H.eval(point), spec.p());
}

bool on_X(const ProblemSpec& spec, std::span<const double> point) {
  double norm = 0.0;
  for (double v : point) norm += v * v;
  const double tol = 1e-9 * (1.0 + std::sqrt(norm));
  for (const auto& psi : spec.psi)
    if (std::abs(psi.eval(point)) > tol) return false;
  return true;
}

std::vector<double> eval_H(const ProblemSpec& spec, std::span<const double> point) {
  return spec.H.eval(point);
}

double eval_Df(const ProblemSpec& spec, std::span<const double> point) {
  if (point.size() != spec.n()) throw InputError("varcount-mismatch", "point has wrong length");
  if (!on_X(spec, point)) throw DomainError("D_f is only defined on X: point is off X");
  return determinant(eval_H(spec, point), spec.p());
}

double determinant(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw InputError("shape-mismatch", "determinant of a non-square matrix");
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (a[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      det = -det;
    }
    det *= a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      double factor = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
    }
  }
  return det;
}

}  // namespace idet
