#include "idet/fitting.hpp"

#include <algorithm>

#include "idet/errors.hpp"
#include "idet/hessian.hpp"
#include "idet/subsets.hpp"

namespace idet {

std::vector<PolyVector> build_columns(const ProblemSpec& spec) {
  const std::size_t n = spec.n();
  const std::size_t p = spec.p();
  std::vector<PolyVector> cols(n, PolyVector(p, Polynomial(n)));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < p; ++i) {
      Polynomial acc(n);
      for (std::size_t k = 0; k < p; ++k) {
        acc += Rational(2) * (spec.H(i, k) * spec.psi[k].diff(j));
        acc += spec.H(i, k).diff(j) * spec.psi[k];
      }
      cols[j][i] = std::move(acc);
    }
  }
  return cols;
}

std::vector<PolyVector> trivial_syzygies(const ProblemSpec& spec) {
  const std::size_t n = spec.n();
  const std::size_t p = spec.p();
  std::vector<PolyVector> out;
  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t s = r + 1; s < p; ++s) {
      PolyVector v(p, Polynomial(n));
      v[r] = spec.psi[s];
      v[s] = -spec.psi[r];
      out.push_back(std::move(v));
    }
  }
  return out;
}

namespace {

bool canonical_less(const Polynomial& a, const Polynomial& b) {
  const std::size_t m = std::min(a.size(), b.size());
  for (std::size_t t = 0; t < m; ++t) {
    int c = grevlex_compare(a.terms()[t].mono, b.terms()[t].mono);
    if (c != 0) return c < 0;
    if (a.terms()[t].coeff != b.terms()[t].coeff) return a.terms()[t].coeff < b.terms()[t].coeff;
  }
  return a.size() < b.size();
}

}  // namespace

FittingData build_lambda(const ProblemSpec& spec) {
  const std::size_t n = spec.n();
  const std::size_t p = spec.p();
  std::vector<PolyVector> columns = build_columns(spec);
  std::vector<ColumnTag> tags;
  for (std::size_t j = 0; j < n; ++j) tags.push_back({ColumnTag::Kind::Hcol, j, 0});
  std::vector<PolyVector> syz = trivial_syzygies(spec);
  {
    std::size_t idx = 0;
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t s = r + 1; s < p; ++s, ++idx) {
        columns.push_back(syz[idx]);
        tags.push_back({ColumnTag::Kind::Syz, r, s});
      }
  }
  for (std::size_t e = 0; e < spec.extra_syzygies.size(); ++e) {
    columns.push_back(spec.extra_syzygies[e]);
    tags.push_back({ColumnTag::Kind::Extra, e, 0});
  }

  const std::size_t total = columns.size();
  if (binomial_capped(total, p, kMaxMinorSubsets) > kMaxMinorSubsets) {
    throw SizeError("Lambda has " + std::to_string(total) + " columns; C(" +
                    std::to_string(total) + ", " + std::to_string(p) + ") exceeds the cap of " +
                    std::to_string(kMaxMinorSubsets) + " minors");
  }

  FittingData data;
  data.lambda = PolyMatrix(p, total, n);
  for (std::size_t c = 0; c < total; ++c)
    for (std::size_t i = 0; i < p; ++i) data.lambda(i, c) = columns[c][i];
  data.column_tags = std::move(tags);

  std::vector<std::size_t> rows(p);
  for (std::size_t i = 0; i < p; ++i) rows[i] = i;
  std::vector<std::pair<Polynomial, std::vector<std::size_t>>> gens;
  for_each_subset(total, p, [&](std::span<const std::size_t> cols) {
    Polynomial m = data.lambda.minor(rows, cols);
    if (!m.is_zero()) gens.emplace_back(m.monic(), std::vector<std::size_t>(cols.begin(), cols.end()));
  });
  // Stable: among equal generators the lexicographically first subset wins.
  std::stable_sort(gens.begin(), gens.end(),
                   [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  for (auto& [g, cols] : gens) {
    if (!data.kf_gens.empty() && data.kf_gens.back() == g) continue;
    data.kf_gens.push_back(std::move(g));
    data.kf_subsets.push_back(std::move(cols));
  }
  return data;
}

bool column_contract_holds(const ProblemSpec& spec, const FittingData& data) {
  const std::size_t n = spec.n();
  std::vector<Polynomial> grad = gradient(spec);
  for (std::size_t c = 0; c < data.lambda.cols(); ++c) {
    Polynomial s(n);
    for (std::size_t i = 0; i < spec.p(); ++i) s += data.lambda(i, c) * spec.psi[i];
    const ColumnTag& tag = data.column_tags[c];
    if (tag.kind == ColumnTag::Kind::Hcol) {
      if (!(s == grad[tag.a])) return false;
    } else if (!s.is_zero()) {
      return false;
    }
  }
  return true;
}

GroebnerBasis jacobian_ideal_basis(const ProblemSpec& spec) {
  return groebner(gradient(spec), spec.n());
}

GroebnerBasis fitting_ideal_basis(const ProblemSpec& spec, const FittingData& data) {
  return groebner(data.kf_gens, spec.n());
}

DolResult verify_dol(const ProblemSpec& spec, const FittingData& data) {
  if (auto jf = try_groebner(gradient(spec), spec.n(), kVerificationLimits)) {
    return verify_dol(spec, data, *jf);
  }
  return verify_dol_by_adjugate(spec, data);
}

namespace {

// sigma of column c of Lambda: d f / d x_j for Hcol(j), zero otherwise.
Polynomial column_image(const FittingData& data, const std::vector<Polynomial>& grad,
                        std::size_t c) {
  const ColumnTag& tag = data.column_tags[c];
  if (tag.kind == ColumnTag::Kind::Hcol) return grad[tag.a];
  return Polynomial(data.lambda.nvars());
}

}  // namespace

DolResult verify_dol_by_adjugate(const ProblemSpec& spec, const FittingData& data) {
  DolResult r;
  r.method = MembershipMethod::CofactorIdentity;
  const std::size_t p = spec.p();
  std::vector<Polynomial> grad = gradient(spec);
  for (std::size_t g = 0; g < data.kf_gens.size(); ++g) {
    const auto& cols = data.kf_subsets[g];
    // kf_gens[g] = minor(cols) * scale.
    std::vector<std::size_t> all_rows(p);
    for (std::size_t i = 0; i < p; ++i) all_rows[i] = i;
    Polynomial full = data.lambda.minor(all_rows, cols);
    Rational scale = data.kf_gens[g].leading_coeff() / full.leading_coeff();
    for (std::size_t i = 0; i < p; ++i) {
      // adj(L_S)_{c,i} = (-1)^{c+i} det(L_S without row i and column c).
      std::vector<std::size_t> rows_wo_i;
      for (std::size_t k = 0; k < p; ++k)
        if (k != i) rows_wo_i.push_back(k);
      std::vector<Polynomial> images;
      std::vector<Polynomial> cofactors;
      for (std::size_t c = 0; c < p; ++c) {
        std::vector<std::size_t> cols_wo_c;
        for (std::size_t k = 0; k < p; ++k)
          if (k != c) cols_wo_c.push_back(cols[k]);
        Polynomial adj = data.lambda.minor(rows_wo_i, cols_wo_c);
        if ((c + i) % 2 == 1) adj = -adj;
        images.push_back(column_image(data, grad, cols[c]));
        cofactors.push_back(scale * adj);
      }
      if (!is_combination(data.kf_gens[g] * spec.psi[i], images, cofactors)) {
        r.failing = {g, i};
        return r;
      }
    }
  }
  r.holds = true;
  return r;
}

DolResult verify_dol(const ProblemSpec& spec, const FittingData& data, const GroebnerBasis& jf) {
  DolResult r;
  for (std::size_t g = 0; g < data.kf_gens.size(); ++g) {
    for (std::size_t i = 0; i < spec.p(); ++i) {
      if (!member(data.kf_gens[g] * spec.psi[i], jf)) {
        r.failing = {g, i};
        return r;
      }
    }
  }
  r.holds = true;
  return r;
}

MudetResult verify_mudet(const ProblemSpec& spec, const FittingData& data,
                         std::span<const std::size_t> cols) {
  return verify_mudet(spec, data, cols, groebner(spec.psi, spec.n()));
}

MudetResult verify_mudet(const ProblemSpec& spec, const FittingData& data,
                         std::span<const std::size_t> cols, const GroebnerBasis& psi_ideal) {
  const std::size_t p = spec.p();
  if (cols.size() != p) throw InputError("bad-index-set", "mudet needs exactly p column indices");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] >= spec.n() || (i > 0 && cols[i] <= cols[i - 1])) {
      throw InputError("bad-index-set", "mudet columns must be strictly increasing variable indices");
    }
  }
  std::vector<std::size_t> rows(p);
  for (std::size_t i = 0; i < p; ++i) rows[i] = i;
  // Hcol(j) is column j of Lambda.
  for (std::size_t c : cols) {
    if (data.column_tags.at(c).kind != ColumnTag::Kind::Hcol || data.column_tags[c].a != c) {
      throw InputError("bad-fitting-data", "Lambda columns are not in the expected layout");
    }
  }

  MudetResult r;
  r.cols.assign(cols.begin(), cols.end());
  r.mu = jacobian(spec).minor(rows, cols);
  r.det_h = spec.H.determinant();
  r.a_mu = data.lambda.minor(rows, cols);
  Rational two_p = 1;
  for (std::size_t i = 0; i < p; ++i) two_p *= 2;
  r.b_mu = two_p * (r.mu * r.det_h) - r.a_mu;
  r.holds = member(r.b_mu, psi_ideal);
  return r;
}

std::vector<MudetResult> verify_mudet_all(const ProblemSpec& spec, const FittingData& data) {
  GroebnerBasis psi_ideal = groebner(spec.psi, spec.n());
  std::vector<MudetResult> out;
  for_each_subset(spec.n(), spec.p(), [&](std::span<const std::size_t> cols) {
    out.push_back(verify_mudet(spec, data, cols, psi_ideal));
  });
  return out;
}

PsiPowerGradResult verify_psi_power_grad(const ProblemSpec& spec, const FittingData& data) {
  if (spec.p() < 2) return {};
  if (auto kf = try_groebner(data.kf_gens, spec.n(), kVerificationLimits)) {
    return verify_psi_power_grad(spec, data, *kf);
  }
  return verify_psi_power_grad_by_minors(spec, data);
}

namespace {

// Writes (sum_i y_i^2)^{p-2} = sum_i q_i(y) y_i^{p-2}, choosing for every
// monomial the first i whose exponent reaches p - 2. Empty when some monomial
// admits no such i (possible once p >= 5).
std::vector<Polynomial> split_psi_norm_power(std::size_t p) {
  const unsigned e = static_cast<unsigned>(p - 2);
  Polynomial norm(p);
  for (std::size_t i = 0; i < p; ++i) norm += Polynomial::variable(p, i).pow(2);
  Polynomial power = norm.pow(e);
  std::vector<std::vector<Term>> parts(p);
  for (const auto& t : power.terms()) {
    std::size_t i = 0;
    while (i < p && t.mono[i] < e) ++i;
    if (i == p) return {};
    Monomial rest = t.mono;
    rest.set(i, t.mono[i] - e);
    parts[i].push_back({rest, t.coeff});
  }
  std::vector<Polynomial> q;
  for (auto& part : parts) q.push_back(Polynomial::from_terms(p, std::move(part)));
  return q;
}

}  // namespace

PsiPowerGradResult verify_psi_power_grad_by_minors(const ProblemSpec& spec,
                                                   const FittingData& data) {
  PsiPowerGradResult r;
  const std::size_t p = spec.p();
  const std::size_t n = spec.n();
  if (p < 2) return r;
  r.method = MembershipMethod::CofactorIdentity;
  r.status = CheckStatus::Holds;
  std::vector<Polynomial> grad = gradient(spec);
  std::vector<std::size_t> rows(p);
  for (std::size_t i = 0; i < p; ++i) rows[i] = i;

  // Column of Lambda holding the trivial relation (r, s).
  auto syz_column = [&](std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < data.column_tags.size(); ++c) {
      const ColumnTag& t = data.column_tags[c];
      if (t.kind == ColumnTag::Kind::Syz && t.a == std::min(a, b) && t.b == std::max(a, b)) return c;
    }
    throw InputError("bad-fitting-data", "Lambda lacks a trivial relation column");
  };

  // minors[i][j] = +-psi_i^{p-2} d f/d x_j, each a generator of K_f.
  std::vector<std::vector<Polynomial>> minors(p, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < p && !r.failing; ++i) {
    Polynomial target_base = spec.psi[i].pow(static_cast<unsigned>(p - 2));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> cols{j};
      for (std::size_t k = 0; k < p; ++k)
        if (k != i) cols.push_back(syz_column(i, k));
      Polynomial m = data.lambda.minor(rows, cols);
      Polynomial target = target_base * grad[j];
      if (m == target) {
        minors[i][j] = m;
      } else if (m == -target) {
        minors[i][j] = target;
      } else {
        r.status = CheckStatus::Fails;
        r.failing = {i, j};
        break;
      }
    }
  }
  if (r.failing) return r;

  std::vector<Polynomial> q = split_psi_norm_power(p);
  if (q.empty()) return r;  // v_germ stays not-applicable
  Polynomial psi_sq(n);
  for (const auto& s : spec.psi) psi_sq += s * s;
  Polynomial grad_sq(n);
  for (const auto& g : grad) grad_sq += g * g;
  Polynomial v = psi_sq.pow(static_cast<unsigned>(p - 2)) * grad_sq;
  std::vector<Polynomial> gens;
  std::vector<Polynomial> cofactors;
  for (std::size_t i = 0; i < p; ++i) {
    Polynomial qi = q[i].compose(spec.psi);
    for (std::size_t j = 0; j < n; ++j) {
      gens.push_back(minors[i][j]);
      cofactors.push_back(qi * grad[j]);
    }
  }
  r.v_germ = is_combination(v, gens, cofactors) ? CheckStatus::Holds : CheckStatus::Fails;
  return r;
}

PsiPowerGradResult verify_psi_power_grad(const ProblemSpec& spec, const FittingData& /*data*/,
                                         const GroebnerBasis& kf) {
  PsiPowerGradResult r;
  const std::size_t p = spec.p();
  const std::size_t n = spec.n();
  if (p < 2) return r;
  std::vector<Polynomial> grad = gradient(spec);
  r.status = CheckStatus::Holds;
  for (std::size_t i = 0; i < p && !r.failing; ++i) {
    Polynomial power = spec.psi[i].pow(static_cast<unsigned>(p - 2));
    for (std::size_t j = 0; j < n; ++j) {
      if (!member(power * grad[j], kf)) {
        r.status = CheckStatus::Fails;
        r.failing = {i, j};
        break;
      }
    }
  }
  Polynomial psi_sq(n);
  for (const auto& s : spec.psi) psi_sq += s * s;
  Polynomial grad_sq(n);
  for (const auto& g : grad) grad_sq += g * g;
  Polynomial v = psi_sq.pow(static_cast<unsigned>(p - 2)) * grad_sq;
  r.v_germ = member(v, kf) ? CheckStatus::Holds : CheckStatus::Fails;
  return r;
}

const char* to_string(MembershipMethod m) {
  return m == MembershipMethod::GroebnerBasis ? "groebner" : "cofactor-identity";
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds: return "true";
    case CheckStatus::Fails: return "false";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

}  // namespace idet
