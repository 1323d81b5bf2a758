#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idet/fitting.hpp"
#include "idet/hessian.hpp"
#include "idet/loja.hpp"
#include "idet/problem.hpp"

namespace idet {

inline constexpr unsigned kDefaultKMax = 8;

// Outcome of a power certificate attempt against a budgeted basis.
struct PowerResult {
  enum class Status { Found, NoneUpToKMax, BasisLimit };
  Status status = Status::BasisLimit;
  PowerCertificate cert;
};

const char* to_string(PowerResult::Status s);

struct SymbolicReport {
  bool hess_identity = false;
  std::optional<std::pair<std::size_t, std::size_t>> hess_failing;
  bool contract = false;
  std::size_t lambda_columns = 0;
  std::size_t kf_generators = 0;
  DolResult dol;
  std::vector<MudetResult> mudet;
  bool mudet_all = false;
  PsiPowerGradResult psi_power_grad;
  unsigned k_max = kDefaultKMax;
  PowerResult ifit;  // m^k inside K_f
  PowerResult ijac;  // m^k I inside J_f
};

enum class SymbolicVerdict { Certified, Inconclusive };

struct NumericReport {
  SamplePlan plan;
  std::optional<LojaEstimate> grad;
  std::optional<LojaEstimate> df;
  Verdict combined = Verdict::Inconclusive;
  std::string note;
};

enum class FinalVerdict { Certified, NumericalEvidence, NotDetermined, Inconclusive };

const char* to_string(SymbolicVerdict v);
const char* to_string(FinalVerdict v);

struct Report {
  std::string id;
  std::vector<std::string> varnames;
  std::size_t n = 0;
  std::size_t p = 0;
  bool y_origin = true;
  std::size_t extra_syzygies = 0;
  std::optional<SymbolicReport> symbolic;
  std::optional<NumericReport> numeric;
  std::optional<SymbolicVerdict> symbolic_verdict;
  FinalVerdict verdict = FinalVerdict::Inconclusive;
  bool anomaly = false;
  std::string anomaly_reason;
  std::vector<std::string> assumptions;
};

// Symbolic pipeline. Throws SizeError when the minor enumeration is capped.
Report run_check(const ProblemSpec& spec, unsigned k_max = kDefaultKMax);
// Numeric pipeline. Throws InputError when the spec has no xcharts.
Report run_loja(const ProblemSpec& spec, const SamplePlan& plan = {});
// Both pipelines (run concurrently) and the fused verdict. Missing xcharts
// leave the numeric side inconclusive instead of throwing.
Report run_report(const ProblemSpec& spec, unsigned k_max = kDefaultKMax,
                  const SamplePlan& plan = {});

// True when the attached numeric witness (if any) still checks out: the
// gradient vanishes exactly (|grad f|^2 < 1e-24 in rational arithmetic) or
// |D_f| < 1e-12, at a point farther than 100 grid bounds from the set.
bool witness_revalidates(const ProblemSpec& spec, const Report& report);

// One `key = value` per line, stable key order.
std::string render_kv(const Report& report);
std::string render_human(const Report& report);

}  // namespace idet
