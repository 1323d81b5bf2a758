#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "idet/groebner.hpp"
#include "idet/poly_matrix.hpp"
#include "idet/problem.hpp"

namespace idet {

using PolyVector = std::vector<Polynomial>;

struct ColumnTag {
  enum class Kind { Hcol, Syz, Extra };
  Kind kind = Kind::Hcol;
  // Hcol: a = variable index. Syz: (a, b) = (r, s) with r < s. Extra: a = index.
  std::size_t a = 0;
  std::size_t b = 0;

  bool operator==(const ColumnTag&) const = default;
};

// The presentation matrix Lambda = [h^1..h^n | trivial syzygies | extra
// syzygies] and the generators of its ideal of maximal minors K_f.
struct FittingData {
  PolyMatrix lambda;
  std::vector<ColumnTag> column_tags;
  // Nonzero p x p minors, monic, deduplicated, canonically sorted.
  std::vector<Polynomial> kf_gens;
  // For each kf generator, the first column subset whose minor produced it.
  std::vector<std::vector<std::size_t>> kf_subsets;
};

inline constexpr std::size_t kMaxMinorSubsets = 5000;

// h^j_i = sum_k (2 f_ik d psi_k/d x_j + d f_ik/d x_j psi_k), one vector per j.
std::vector<PolyVector> build_columns(const ProblemSpec& spec);

// psi_s e_r - psi_r e_s for r < s.
std::vector<PolyVector> trivial_syzygies(const ProblemSpec& spec);

// Throws SizeError when C(n + q, p) exceeds kMaxMinorSubsets.
FittingData build_lambda(const ProblemSpec& spec);

// sigma(column) = d f / d x_j for Hcol(j) columns and 0 for syzygy columns.
bool column_contract_holds(const ProblemSpec& spec, const FittingData& data);

GroebnerBasis jacobian_ideal_basis(const ProblemSpec& spec);
GroebnerBasis fitting_ideal_basis(const ProblemSpec& spec, const FittingData& data);

// How an ideal membership was established: by normal form against a
// Groebner basis, or (when the basis exceeds its work limits) by an explicit
// cofactor identity checked exactly.
enum class MembershipMethod { GroebnerBasis, CofactorIdentity };

const char* to_string(MembershipMethod m);

struct DolResult {
  bool holds = false;
  MembershipMethod method = MembershipMethod::GroebnerBasis;
  // (index into kf_gens, psi index) of the first product outside J_f.
  std::optional<std::pair<std::size_t, std::size_t>> failing;
};

// K_f * I inside J_f: every kf generator times every psi_i lies in J_f.
// Falls back to the adjugate identity det(L_S) psi_i = sum_c adj(L_S)_{c,i}
// sigma(L_S col c) when the basis of J_f exceeds kVerificationLimits.
DolResult verify_dol(const ProblemSpec& spec, const FittingData& data);
// Cofactor route only; exposed for cross-checking.
DolResult verify_dol_by_adjugate(const ProblemSpec& spec, const FittingData& data);
DolResult verify_dol(const ProblemSpec& spec, const FittingData& data, const GroebnerBasis& jf);

struct MudetResult {
  std::vector<std::size_t> cols;
  Polynomial mu;      // minor of psi' on cols
  Polynomial det_h;   // det(f_ij)
  Polynomial a_mu;    // minor of Lambda on the Hcol columns cols
  Polynomial b_mu;    // 2^p mu det_h - a_mu
  bool holds = false; // b_mu in (psi)
};

// Checks 2^p mu det(f_ij) = a_mu + b_mu with b_mu in (psi) for one
// strictly increasing choice of p variable indices.
MudetResult verify_mudet(const ProblemSpec& spec, const FittingData& data,
                         std::span<const std::size_t> cols);
MudetResult verify_mudet(const ProblemSpec& spec, const FittingData& data,
                         std::span<const std::size_t> cols, const GroebnerBasis& psi_ideal);
// One result per p-subset of the variables.
std::vector<MudetResult> verify_mudet_all(const ProblemSpec& spec, const FittingData& data);

enum class CheckStatus { Holds, Fails, NotApplicable };

struct PsiPowerGradResult {
  CheckStatus status = CheckStatus::NotApplicable;
  MembershipMethod method = MembershipMethod::GroebnerBasis;
  // (i, j) of the first psi_i^{p-2} d f/d x_j outside K_f.
  std::optional<std::pair<std::size_t, std::size_t>> failing;
  // |psi|^{2(p-2)} |grad f|^2 lies in K_f.
  CheckStatus v_germ = CheckStatus::NotApplicable;
};

// psi_i^{p-2} d f / d x_j in K_f for all i, j; not applicable when p < 2.
// Without a basis of K_f within kVerificationLimits, each element is matched
// against the minor on columns h^j and the trivial relations through psi_i.
PsiPowerGradResult verify_psi_power_grad(const ProblemSpec& spec, const FittingData& data);
PsiPowerGradResult verify_psi_power_grad_by_minors(const ProblemSpec& spec,
                                                   const FittingData& data);
PsiPowerGradResult verify_psi_power_grad(const ProblemSpec& spec, const FittingData& data,
                                         const GroebnerBasis& kf);

const char* to_string(CheckStatus s);

}  // namespace idet
