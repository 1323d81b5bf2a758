#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "idet/polynomial.hpp"

namespace idet {

enum class MonomialOrder { Grevlex };

// Deterministic work limits for Buchberger; exceeding any of them abandons
// the computation.
struct GroebnerLimits {
  std::size_t max_basis = SIZE_MAX;        // polynomials added to the basis
  std::size_t max_coeff_bits = SIZE_MAX;   // numerator + denominator bits
  std::size_t max_reductions = SIZE_MAX;   // single reduction steps
};

// Reduced Groebner basis under grevlex. Generators are monic and sorted by
// increasing leading monomial; division always uses the first generator whose
// leading monomial divides.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  std::size_t nvars() const noexcept { return nvars_; }
  MonomialOrder order() const noexcept { return MonomialOrder::Grevlex; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  const std::vector<Polynomial>& original() const noexcept { return original_; }
  bool is_unit_ideal() const noexcept {
    return generators_.size() == 1 && generators_.front().is_unit();
  }
  bool is_zero_ideal() const noexcept { return generators_.empty(); }

 private:
  friend std::optional<GroebnerBasis> try_groebner(std::span<const Polynomial>, std::size_t,
                                                   const GroebnerLimits&);
  std::size_t nvars_ = 0;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> original_;
};

// Limits used when a basis only serves to double-check an identity that also
// has an explicit certificate.
inline constexpr GroebnerLimits kVerificationLimits{300, 2048, 60000};
// Limits for the membership certificates reported to the user.
inline constexpr GroebnerLimits kReportLimits{1500, 16384, 2000000};

// Buchberger's algorithm (sugar selection, Gebauer-Moeller criteria). `nvars` is
// only consulted when `gens` is empty. Returns nullopt when a limit is hit.
std::optional<GroebnerBasis> try_groebner(std::span<const Polynomial> gens, std::size_t nvars,
                                          const GroebnerLimits& limits);
GroebnerBasis groebner(std::span<const Polynomial> gens, std::size_t nvars);
inline GroebnerBasis groebner(std::span<const Polynomial> gens) {
  return groebner(gens, gens.empty() ? 0 : gens.front().nvars());
}

// True when p == sum cofactors[k] * gens[k] exactly.
bool is_combination(const Polynomial& p, std::span<const Polynomial> gens,
                    std::span<const Polynomial> cofactors);

// Indices (into basis.generators()) of the reducers used, in order.
using ReductionTrace = std::vector<std::size_t>;

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis,
                       ReductionTrace* trace = nullptr);
bool member(const Polynomial& p, const GroebnerBasis& basis);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

struct CertificateEntry {
  Polynomial element;  // monomial, or monomial * cofactor
  ReductionTrace trace;
};

// Smallest k <= k_max with m^k (or m^k * cofactors) inside the ideal.
struct PowerCertificate {
  std::optional<unsigned> k;
  unsigned k_max = 0;
  // When k is set: one entry per degree-k monomial (and cofactor).
  std::vector<CertificateEntry> witness;
  // When k is unset: an element of degree k_max with nonzero normal form.
  std::optional<Polynomial> obstruction;
  std::optional<Polynomial> obstruction_remainder;
};

PowerCertificate power_certificate(const GroebnerBasis& basis, unsigned k_max,
                                   std::span<const Polynomial> cofactors = {});

// All monomials of total degree k in n variables, in decreasing grevlex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned k);

}  // namespace idet
