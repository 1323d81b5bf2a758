#include "idet/groebner.hpp"

#include <algorithm>

#include "idet/errors.hpp"

namespace idet {

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  unsigned sugar;
};

bool pair_before(const Pair& a, const Pair& b) {
  if (a.sugar != b.sugar) return a.sugar < b.sugar;
  int c = grevlex_compare(a.lcm, b.lcm);
  if (c != 0) return c < 0;
  if (a.j != b.j) return a.j < b.j;
  return a.i < b.i;
}

struct Budget {
  std::size_t reductions = 0;
  std::size_t limit = SIZE_MAX;
  bool exhausted() const { return reductions > limit; }
};

// Division by a list in caller-supplied priority order. Stops early (and
// returns garbage) once the budget is exhausted; callers must check.
Polynomial reduce_by(Polynomial p, const std::vector<const Polynomial*>& reducers,
                     ReductionTrace* trace, Budget* budget = nullptr) {
  const std::size_t n = p.nvars();
  std::vector<Term> rest;
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    bool reduced = false;
    for (std::size_t r = 0; r < reducers.size(); ++r) {
      const Polynomial& g = *reducers[r];
      if (!g.leading_monomial().divides(lt.mono)) continue;
      Rational c = lt.coeff / g.leading_coeff();
      Monomial q = g.leading_monomial().quotient_of(lt.mono);
      p = p.sub_scaled(c, q, g);
      if (trace) trace->push_back(r);
      reduced = true;
      break;
    }
    if (!reduced) {
      rest.push_back(lt);
      p = p.sub_scaled(lt.coeff, Monomial::one(n), Polynomial::monomial(lt.mono, Rational(1)));
    }
    if (budget && (++budget->reductions, budget->exhausted())) break;
  }
  return Polynomial::from_terms(n, std::move(rest));
}

std::size_t coeff_bits(const Polynomial& p) {
  std::size_t bits = 0;
  for (const auto& t : p.terms()) {
    std::size_t b = mpz_sizeinbase(t.coeff.get_num_mpz_t(), 2) +
                    mpz_sizeinbase(t.coeff.get_den_mpz_t(), 2);
    bits = std::max(bits, b);
  }
  return bits;
}

bool generator_order(const Polynomial& a, const Polynomial& b) {
  int c = grevlex_compare(a.leading_monomial(), b.leading_monomial());
  if (c != 0) return c < 0;
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t t = 0; t < a.size(); ++t) {
    int d = grevlex_compare(a.terms()[t].mono, b.terms()[t].mono);
    if (d != 0) return d < 0;
    if (a.terms()[t].coeff != b.terms()[t].coeff) return a.terms()[t].coeff < b.terms()[t].coeff;
  }
  return false;
}

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  if (f.nvars() != g.nvars()) throw InputError("varcount-mismatch", "S-polynomial of different rings");
  if (f.is_zero() || g.is_zero()) return Polynomial(f.nvars());
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = Polynomial::monomial(f.leading_monomial().quotient_of(l), 1 / f.leading_coeff()) * f;
  return a.sub_scaled(1 / g.leading_coeff(), g.leading_monomial().quotient_of(l), g);
}

std::optional<GroebnerBasis> try_groebner(std::span<const Polynomial> gens, std::size_t nvars,
                                          const GroebnerLimits& limits) {
  GroebnerBasis out;
  out.nvars_ = nvars;
  out.original_.assign(gens.begin(), gens.end());
  for (const auto& g : gens) {
    if (g.nvars() != nvars) throw InputError("varcount-mismatch", "generators disagree on ring");
  }

  std::vector<Polynomial> store;  // every polynomial ever added
  std::vector<unsigned> sugar;
  std::vector<bool> active;
  std::vector<Pair> pairs;
  Budget budget{0, limits.max_reductions};

  auto add = [&](Polynomial h, unsigned h_sugar) {
    h = h.monic();
    const std::size_t hi = store.size();
    store.push_back(std::move(h));
    sugar.push_back(h_sugar);
    active.push_back(true);
    const Monomial& lh = store[hi].leading_monomial();

    // Gebauer-Moeller: new pairs (g, h) not dominated by another new pair.
    std::vector<Pair> cand;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active[g]) continue;
      Monomial l = store[g].leading_monomial().lcm(lh);
      unsigned s = std::max(sugar[g] + l.degree() - store[g].leading_monomial().degree(),
                            h_sugar + l.degree() - lh.degree());
      cand.push_back({g, hi, l, s});
    }
    std::vector<Pair> fresh;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (store[cand[a].i].leading_monomial().coprime(lh)) continue;
      bool dominated = false;
      for (std::size_t b = 0; b < cand.size() && !dominated; ++b) {
        if (b == a || !cand[b].lcm.divides(cand[a].lcm)) continue;
        // Among equal lcms only the first survives.
        if (cand[b].lcm == cand[a].lcm && b > a) continue;
        dominated = true;
      }
      if (!dominated) fresh.push_back(cand[a]);
    }

    std::vector<Pair> old;
    for (auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && !(store[p.i].leading_monomial().lcm(lh) == p.lcm) &&
                  !(store[p.j].leading_monomial().lcm(lh) == p.lcm);
      if (!drop) old.push_back(p);
    }
    pairs = std::move(old);
    pairs.insert(pairs.end(), fresh.begin(), fresh.end());

    for (std::size_t g = 0; g < hi; ++g)
      if (active[g] && lh.divides(store[g].leading_monomial())) active[g] = false;
  };

  auto reducers = [&]() {
    std::vector<const Polynomial*> rs;
    for (std::size_t g = 0; g < store.size(); ++g)
      if (active[g]) rs.push_back(&store[g]);
    std::stable_sort(rs.begin(), rs.end(), [](const Polynomial* a, const Polynomial* b) {
      return grevlex_compare(a->leading_monomial(), b->leading_monomial()) < 0;
    });
    return rs;
  };

  auto over_budget = [&]() {
    return budget.exhausted() || store.size() > limits.max_basis ||
           (!store.empty() && coeff_bits(store.back()) > limits.max_coeff_bits);
  };

  auto unit_ideal = [&]() {
    out.generators_ = {Polynomial::constant(nvars, 1)};
    return out;
  };

  // Seed in canonical order so the result does not depend on how the
  // generators were listed.
  std::vector<Polynomial> seeds;
  for (const auto& g : gens)
    if (!g.is_zero()) seeds.push_back(g.monic());
  std::sort(seeds.begin(), seeds.end(), generator_order);
  for (auto& s : seeds) {
    unsigned deg = s.total_degree();
    Polynomial r = reduce_by(std::move(s), reducers(), nullptr, &budget);
    if (budget.exhausted()) return std::nullopt;
    if (r.is_zero()) continue;
    if (r.is_unit()) return unit_ideal();
    add(std::move(r), deg);
    if (over_budget()) return std::nullopt;
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), pair_before);
    Pair p = *best;
    pairs.erase(best);
    Polynomial s = s_polynomial(store[p.i], store[p.j]);
    Polynomial r = reduce_by(std::move(s), reducers(), nullptr, &budget);
    if (budget.exhausted()) return std::nullopt;
    if (r.is_zero()) continue;
    if (r.is_unit()) return unit_ideal();
    unsigned s_sugar = std::max(p.sugar, r.total_degree());
    add(std::move(r), s_sugar);
    if (over_budget()) return std::nullopt;
  }

  // Interreduce the minimal basis.
  std::vector<Polynomial> minimal;
  for (std::size_t g = 0; g < store.size(); ++g)
    if (active[g]) minimal.push_back(store[g]);
  std::sort(minimal.begin(), minimal.end(), generator_order);
  std::vector<Polynomial> reduced;
  for (std::size_t g = 0; g < minimal.size(); ++g) {
    std::vector<const Polynomial*> others;
    for (std::size_t h = 0; h < minimal.size(); ++h)
      if (h != g) others.push_back(&minimal[h]);
    const Term& lt = minimal[g].leading_term();
    Polynomial tail = minimal[g].sub_scaled(lt.coeff, Monomial::one(nvars),
                                            Polynomial::monomial(lt.mono, Rational(1)));
    Polynomial r = reduce_by(std::move(tail), others, nullptr);
    reduced.push_back(Polynomial::monomial(lt.mono, lt.coeff) + r);
  }
  out.generators_ = std::move(reduced);
  return out;
}

GroebnerBasis groebner(std::span<const Polynomial> gens, std::size_t nvars) {
  return *try_groebner(gens, nvars, GroebnerLimits{});
}

bool is_combination(const Polynomial& p, std::span<const Polynomial> gens,
                    std::span<const Polynomial> cofactors) {
  if (gens.size() != cofactors.size()) return false;
  Polynomial acc(p.nvars());
  for (std::size_t k = 0; k < gens.size(); ++k) acc += cofactors[k] * gens[k];
  return acc == p;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis, ReductionTrace* trace) {
  if (p.nvars() != basis.nvars()) {
    throw InputError("varcount-mismatch", "polynomial and basis live in different rings");
  }
  std::vector<const Polynomial*> rs;
  for (const auto& g : basis.generators()) rs.push_back(&g);
  return reduce_by(p, rs, trace);
}

bool member(const Polynomial& p, const GroebnerBasis& basis) {
  return normal_form(p, basis).is_zero();
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned k) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (k == 0) out.emplace_back(0);
    return out;
  }
  std::vector<unsigned> e(nvars, 0);
  // Compositions of k into nvars parts.
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(nvars, e);
      return;
    }
    for (unsigned a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

PowerCertificate power_certificate(const GroebnerBasis& basis, unsigned k_max,
                                   std::span<const Polynomial> cofactors) {
  const std::size_t n = basis.nvars();
  for (const auto& c : cofactors) {
    if (c.nvars() != n) throw InputError("varcount-mismatch", "cofactor ring differs from basis");
  }
  std::vector<Polynomial> mults;
  if (cofactors.empty()) {
    mults.push_back(Polynomial::constant(n, 1));
  } else {
    mults.assign(cofactors.begin(), cofactors.end());
  }

  PowerCertificate cert;
  cert.k_max = k_max;
  for (unsigned k = 0; k <= k_max; ++k) {
    std::vector<CertificateEntry> entries;
    bool ok = true;
    for (const auto& m : monomials_of_degree(n, k)) {
      Polynomial mono = Polynomial::monomial(m, Rational(1));
      for (const auto& c : mults) {
        Polynomial element = mono * c;
        ReductionTrace trace;
        Polynomial r = normal_form(element, basis, &trace);
        if (!r.is_zero()) {
          ok = false;
          if (k == k_max) {
            cert.obstruction = element;
            cert.obstruction_remainder = r;
          }
          break;
        }
        entries.push_back({std::move(element), std::move(trace)});
      }
      if (!ok) break;
    }
    if (ok) {
      cert.k = k;
      cert.witness = std::move(entries);
      return cert;
    }
  }
  return cert;
}

}  // namespace idet
