#include "idet/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "idet/errors.hpp"
#include "idet/hessian.hpp"

namespace idet {

namespace {

constexpr int kMaxSweeps = 100;

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b,
                             std::size_t n, bool transpose_a = false) {
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double aik = transpose_a ? a[k * n + i] : a[i * n + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  return c;
}

// P diag(d) P^T.
std::vector<double> conjugate_diag(const std::vector<double>& P, const std::vector<double>& d,
                                   std::size_t n) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += P[i * n + k] * d[k] * P[j * n + k];
      out[i * n + j] = s;
    }
  return out;
}

}  // namespace

double max_norm(std::span<const double> m) {
  double r = 0.0;
  for (double v : m) r = std::max(r, std::abs(v));
  return r;
}

Eigensystem jacobi_eigen(std::span<const double> M, std::size_t p) {
  if (M.size() != p * p) throw InputError("H-shape", "matrix size does not match dimension");
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (std::abs(M[i * p + j] - M[j * p + i]) > 1e-12) {
        throw InputError("not-symmetric", "matrix is not symmetric at (" + std::to_string(i + 1) +
                                              "," + std::to_string(j + 1) + ")");
      }

  std::vector<double> a(M.begin(), M.end());
  std::vector<double> v(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) v[i * p + i] = 1.0;
  double fro = 0.0;
  for (double x : a) fro += x * x;
  fro = std::sqrt(fro);

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        if (i != j) s += a[i * p + j] * a[i * p + j];
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kMaxSweeps && off_mass() >= 1e-14 * fro; ++sweep) {
    for (std::size_t k = 0; k < p; ++k) {
      for (std::size_t l = k + 1; l < p; ++l) {
        double akl = a[k * p + l];
        if (akl == 0.0) continue;
        double theta = (a[l * p + l] - a[k * p + k]) / (2.0 * akl);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t r = 0; r < p; ++r) {
          double ark = a[r * p + k], arl = a[r * p + l];
          a[r * p + k] = c * ark - s * arl;
          a[r * p + l] = s * ark + c * arl;
        }
        for (std::size_t r = 0; r < p; ++r) {
          double akr = a[k * p + r], alr = a[l * p + r];
          a[k * p + r] = c * akr - s * alr;
          a[l * p + r] = s * akr + c * alr;
        }
        for (std::size_t r = 0; r < p; ++r) {
          double vrk = v[r * p + k], vrl = v[r * p + l];
          v[r * p + k] = c * vrk - s * vrl;
          v[r * p + l] = s * vrk + c * vrl;
        }
      }
    }
  }

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(a[x * p + x]) < std::abs(a[y * p + y]);
  });
  Eigensystem out;
  out.size = p;
  out.P.assign(p * p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    out.eigenvalues.push_back(a[order[c] * p + order[c]]);
    for (std::size_t r = 0; r < p; ++r) out.P[r * p + c] = v[r * p + order[c]];
  }
  return out;
}

SpectralData spectral_data(const ProblemSpec& spec, std::span<const double> point) {
  if (point.size() != spec.n()) throw InputError("varcount-mismatch", "point has wrong dimension");
  if (!on_X(spec, point)) throw DomainError("point is not on X");
  SpectralData s;
  s.point.assign(point.begin(), point.end());
  s.H = eval_H(spec, point);
  s.eig = jacobi_eigen(s.H, spec.p());
  return s;
}

double default_eps_scale(const SpectralData& s) { return 1e-3 * (1.0 + max_norm(s.H)); }

PerturbationPair build_pair(const SpectralData& s, double eps_scale) {
  if (!(eps_scale > 0.0)) throw InputError("bad-eps", "eps_scale must be positive");
  const std::size_t p = s.eig.size;
  const auto& lambda = s.eig.eigenvalues;
  PerturbationPair out;
  out.p = p;
  out.killed = 0;  // eigenvalues are sorted by |lambda|
  const double tie = 1e-6 * (1.0 + max_norm(s.H));
  for (std::size_t i = 0; i < p; ++i) {
    double e = eps_scale;
    if (std::abs(e - lambda[i]) <= tie) e = -e;
    out.epsilons.push_back(e);
  }
  std::vector<double> kill(p, 0.0);
  if (p > 0) kill[0] = lambda[0];
  out.V = conjugate_diag(s.eig.P, kill, p);
  out.W = conjugate_diag(s.eig.P, out.epsilons, p);
  // Symmetrize against rounding.
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      out.V[j * p + i] = out.V[i * p + j];
      out.W[j * p + i] = out.W[i * p + j];
    }
  out.v_bound_holds = p == 0 || max_norm(out.V) <= std::abs(lambda[0]) + 1e-12;
  return out;
}

PairReport verify_pair(const ProblemSpec& spec, std::span<const double> y,
                       const PerturbationPair& pair) {
  SpectralData s = spectral_data(spec, y);
  const std::size_t p = spec.p();
  if (pair.p != p) throw InputError("H-shape", "perturbation size differs from H");
  PairReport rep;
  rep.h_norm = max_norm(s.H);

  std::vector<double> hv(p * p), hw(p * p);
  for (std::size_t k = 0; k < p * p; ++k) {
    hv[k] = s.H[k] - pair.V[k];
    hw[k] = s.H[k] - pair.W[k];
  }
  rep.det_minus_V = determinant(hv, p);
  rep.det_minus_W = determinant(hw, p);
  rep.eigen_product = 1.0;
  for (std::size_t i = 0; i < p; ++i) rep.eigen_product *= s.eig.eigenvalues[i] - pair.epsilons[i];
  rep.v_degenerate =
      std::abs(rep.det_minus_V) <= 1e-8 * std::pow(1.0 + rep.h_norm, static_cast<double>(p));
  rep.w_matches =
      std::abs(rep.det_minus_W - rep.eigen_product) <= 1e-6 * std::abs(rep.eigen_product);

  std::vector<double> ptp = multiply(s.eig.P, s.eig.P, p, true);
  for (std::size_t i = 0; i < p; ++i) ptp[i * p + i] -= 1.0;
  rep.orthogonality_error = max_norm(ptp);
  std::vector<double> d = multiply(s.eig.P, multiply(s.H, s.eig.P, p), p, true);
  for (std::size_t i = 0; i < p; ++i) d[i * p + i] -= s.eig.eigenvalues[i];
  rep.diagonalization_error = max_norm(d);
  rep.spectral_ok = rep.orthogonality_error <= 1e-10 &&
                    rep.diagonalization_error <= 1e-8 * (1.0 + rep.h_norm);

  rep.perturbed = spec;
  rep.perturbed.id = spec.id + "-perturbed";
  PolyMatrix h = spec.H;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      Polynomial c = Polynomial::constant(spec.n(), rationalize(pair.V[i * p + j]));
      h(i, j) = spec.H(i, j) - c;
      if (j != i) h(j, i) = h(i, j);
    }
  rep.perturbed.H = std::move(h);
  return rep;
}

}  // namespace idet
