#include "idet/report.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "idet/errors.hpp"

namespace idet {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string point_text(const std::vector<double>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += num(x[i]);
  }
  return out + ")";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

PowerResult power_in(const std::optional<GroebnerBasis>& basis, unsigned k_max,
                     std::span<const Polynomial> cofactors = {}) {
  PowerResult r;
  if (!basis) return r;
  r.cert = power_certificate(*basis, k_max, cofactors);
  r.status = r.cert.k ? PowerResult::Status::Found : PowerResult::Status::NoneUpToKMax;
  return r;
}

Verdict combine(const NumericReport& nr) {
  if (!nr.grad || !nr.df) return Verdict::Inconclusive;
  if (nr.grad->verdict == Verdict::Fails || nr.df->verdict == Verdict::Fails) return Verdict::Fails;
  if (nr.grad->verdict == Verdict::Holds && nr.df->verdict == Verdict::Holds) return Verdict::Holds;
  return Verdict::Inconclusive;
}

void describe_assumptions(Report& rep) {
  rep.assumptions.clear();
  rep.assumptions.push_back("regdense: regular points of X assumed dense in X (not checked)");
  std::string onY = "onY: zeros of D_f on X assumed inside Y";
  if (rep.numeric && rep.numeric->df && rep.numeric->df->samples_used > 0) {
    onY += "; smallest sampled |D_f| off Y = " + num(rep.numeric->df->residual_floor);
  }
  rep.assumptions.push_back(onY);
  rep.assumptions.push_back(
      "syzygies: K_f built from the trivial relations plus " + std::to_string(rep.extra_syzygies) +
      " supplied syzygies; an incomplete list can only shrink K_f");
}

void fuse(Report& rep) {
  const bool certified = rep.symbolic_verdict == SymbolicVerdict::Certified;
  const Verdict numeric = rep.numeric ? rep.numeric->combined : Verdict::Inconclusive;
  bool witness = false;
  if (rep.numeric) {
    witness = (rep.numeric->grad && rep.numeric->grad->witness) ||
              (rep.numeric->df && rep.numeric->df->witness);
  }
  if (certified) {
    rep.verdict = FinalVerdict::Certified;
  } else if (numeric == Verdict::Fails && witness) {
    rep.verdict = FinalVerdict::NotDetermined;
  } else if (numeric == Verdict::Holds) {
    rep.verdict = FinalVerdict::NumericalEvidence;
  } else {
    rep.verdict = FinalVerdict::Inconclusive;
  }
  rep.anomaly = false;
  rep.anomaly_reason.clear();
  if (certified && rep.numeric && numeric != Verdict::Holds) {
    rep.anomaly = true;
    rep.anomaly_reason = std::string("symbolic certificate but numeric estimate ") +
                         to_string(numeric) + "; check sample plan or syzygy list";
  }
  describe_assumptions(rep);
}

Report skeleton(const ProblemSpec& spec) {
  Report rep;
  rep.id = spec.id;
  rep.varnames = spec.varnames;
  rep.n = spec.n();
  rep.p = spec.p();
  rep.y_origin = spec.Y.is_origin();
  rep.extra_syzygies = spec.extra_syzygies.size();
  return rep;
}

SymbolicReport symbolic(const ProblemSpec& spec, unsigned k_max) {
  SymbolicReport s;
  s.k_max = k_max;
  HessIdentityResult hess = check_hess_identity(spec);
  s.hess_identity = hess.holds;
  s.hess_failing = hess.failing_entry;

  FittingData data = build_lambda(spec);
  s.lambda_columns = data.lambda.cols();
  s.kf_generators = data.kf_gens.size();
  s.contract = column_contract_holds(spec, data);

  const std::size_t n = spec.n();
  auto jf = try_groebner(gradient(spec), n, kReportLimits);
  auto kf = try_groebner(data.kf_gens, n, kReportLimits);

  s.dol = jf ? verify_dol(spec, data, *jf) : verify_dol_by_adjugate(spec, data);
  s.mudet = verify_mudet_all(spec, data);
  s.mudet_all = true;
  for (const auto& m : s.mudet) s.mudet_all = s.mudet_all && m.holds;
  s.psi_power_grad =
      kf ? verify_psi_power_grad(spec, data, *kf) : verify_psi_power_grad_by_minors(spec, data);

  s.ifit = power_in(kf, k_max);
  s.ijac = power_in(jf, k_max, spec.psi);
  return s;
}

// m^k inside K_f suffices for any Y, but only Y = origin is reported as a
// certificate.
SymbolicVerdict symbolic_verdict(const SymbolicReport& s, const ProblemSpec& spec) {
  return s.ifit.status == PowerResult::Status::Found && spec.Y.is_origin()
             ? SymbolicVerdict::Certified
             : SymbolicVerdict::Inconclusive;
}

NumericReport numeric(const ProblemSpec& spec, const SamplePlan& plan) {
  NumericReport nr;
  nr.plan = plan;
  nr.grad = estimate_gradient_exponent(spec, plan);
  nr.df = estimate_Df_exponent(spec, plan);
  nr.combined = combine(nr);
  return nr;
}

}  // namespace

const char* to_string(PowerResult::Status s) {
  switch (s) {
    case PowerResult::Status::Found: return "found";
    case PowerResult::Status::NoneUpToKMax: return "none-up-to-k-max";
    case PowerResult::Status::BasisLimit: return "basis-limit";
  }
  return "basis-limit";
}

const char* to_string(SymbolicVerdict v) {
  return v == SymbolicVerdict::Certified ? "certified" : "inconclusive";
}

const char* to_string(FinalVerdict v) {
  switch (v) {
    case FinalVerdict::Certified: return "infinitely-determined (certified, sufficient)";
    case FinalVerdict::NumericalEvidence: return "infinitely-determined (numerical evidence)";
    case FinalVerdict::NotDetermined: return "not-determined (witness)";
    case FinalVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Report run_check(const ProblemSpec& spec, unsigned k_max) {
  Report rep = skeleton(spec);
  rep.symbolic = symbolic(spec, k_max);
  rep.symbolic_verdict = symbolic_verdict(*rep.symbolic, spec);
  fuse(rep);
  return rep;
}

Report run_loja(const ProblemSpec& spec, const SamplePlan& plan) {
  plan.validate();
  if (spec.xcharts.empty()) throw InputError("empty-charts", "numeric checks need xcharts");
  Report rep = skeleton(spec);
  rep.numeric = numeric(spec, plan);
  fuse(rep);
  return rep;
}

Report run_report(const ProblemSpec& spec, unsigned k_max, const SamplePlan& plan) {
  plan.validate();
  auto sym = std::async(std::launch::async, [&] { return symbolic(spec, k_max); });
  std::optional<NumericReport> nr;
  if (spec.xcharts.empty()) {
    nr.emplace();
    nr->plan = plan;
    nr->note = "no xcharts; numeric checks skipped";
  } else {
    nr = numeric(spec, plan);
  }
  Report rep = skeleton(spec);
  rep.symbolic = sym.get();
  rep.numeric = std::move(nr);
  rep.symbolic_verdict = symbolic_verdict(*rep.symbolic, spec);
  fuse(rep);
  return rep;
}

bool witness_revalidates(const ProblemSpec& spec, const Report& report) {
  if (!report.numeric) return false;
  const auto& nr = *report.numeric;
  if (nr.grad && nr.grad->witness) {
    const Witness& w = *nr.grad->witness;
    if (!(exact_gradient_norm_sq(spec, w.point) < Rational(1, 1000000) * Rational(1, 1000000) *
                                                    Rational(1, 1000000) * Rational(1, 1000000))) {
      return false;
    }
    double dx = SetDistance(spec.xcharts, nr.plan.chart_grid)(w.point);
    double dy = distance_to_set(w.point, spec.Y, nr.plan.chart_grid).distance;
    if (!(std::min(dx, dy) > 100.0 * nr.grad->grid_bound)) return false;
  }
  if (nr.df && nr.df->witness) {
    const Witness& w = *nr.df->witness;
    if (!(std::abs(eval_Df(spec, w.point)) < 1e-12)) return false;
    if (!(distance_to_set(w.point, spec.Y, nr.plan.chart_grid).distance > 100.0 * nr.df->grid_bound))
      return false;
  }
  return true;
}

std::string render_kv(const Report& r) {
  std::ostringstream os;
  auto kv = [&](const std::string& k, const std::string& v) { os << k << " = " << v << "\n"; };
  kv("id", r.id);
  kv("n", std::to_string(r.n));
  kv("p", std::to_string(r.p));
  kv("Y", r.y_origin ? "origin" : "charts");
  for (std::size_t i = 0; i < r.assumptions.size(); ++i)
    kv("assumption." + std::to_string(i + 1), r.assumptions[i]);

  if (r.symbolic) {
    const auto& s = *r.symbolic;
    kv("symbolic.hess_identity", bool_text(s.hess_identity));
    if (s.hess_failing) {
      kv("symbolic.hess_identity.failing",
         "(" + std::to_string(s.hess_failing->first + 1) + "," +
             std::to_string(s.hess_failing->second + 1) + ")");
    }
    kv("symbolic.contract", bool_text(s.contract));
    kv("symbolic.lambda.columns", std::to_string(s.lambda_columns));
    kv("symbolic.kf.generators", std::to_string(s.kf_generators));
    kv("symbolic.dol", bool_text(s.dol.holds));
    kv("symbolic.dol.method", to_string(s.dol.method));
    for (const auto& m : s.mudet) {
      std::string key = "symbolic.mudet.";
      for (std::size_t i = 0; i < m.cols.size(); ++i) key += (i ? "_" : "") + std::to_string(m.cols[i] + 1);
      kv(key, bool_text(m.holds));
    }
    kv("symbolic.mudet.all", bool_text(s.mudet_all));
    kv("symbolic.psi_power_grad", to_string(s.psi_power_grad.status));
    kv("symbolic.psi_power_grad.method", to_string(s.psi_power_grad.method));
    kv("symbolic.v_germ", to_string(s.psi_power_grad.v_germ));
    kv("symbolic.k_max", std::to_string(s.k_max));
    for (const auto& [name, pr] : {std::pair{"ifit", &s.ifit}, std::pair{"ijac", &s.ijac}}) {
      std::string base = std::string("symbolic.") + name;
      kv(base + ".status", to_string(pr->status));
      kv(base + ".k", pr->cert.k ? std::to_string(*pr->cert.k) : "none");
      if (pr->cert.obstruction) {
        kv(base + ".obstruction", pr->cert.obstruction->to_string(r.varnames));
        kv(base + ".obstruction_remainder", pr->cert.obstruction_remainder->to_string(r.varnames));
      }
    }
  }
  if (r.symbolic_verdict) kv("symbolic.verdict", to_string(*r.symbolic_verdict));

  if (r.numeric) {
    const auto& nr = *r.numeric;
    kv("numeric.plan.rmin", num(nr.plan.rmin));
    kv("numeric.plan.rmax", num(nr.plan.rmax));
    kv("numeric.plan.shells", std::to_string(nr.plan.shells));
    kv("numeric.plan.per_shell", std::to_string(nr.plan.per_shell));
    kv("numeric.plan.seed", std::to_string(nr.plan.seed));
    kv("numeric.plan.chart_grid", std::to_string(nr.plan.chart_grid));
    if (!nr.note.empty()) kv("numeric.note", nr.note);
    for (const auto& [name, est] : {std::pair{"grad", &nr.grad}, std::pair{"df", &nr.df}}) {
      if (!*est) continue;
      const LojaEstimate& e = **est;
      std::string base = std::string("numeric.") + name;
      kv(base + ".verdict", to_string(e.verdict));
      kv(base + ".alpha_hat", num(e.alpha_hat));
      kv(base + ".logC_hat", num(e.logC_hat));
      kv(base + ".support_points", std::to_string(e.support_points));
      kv(base + ".residual_floor", num(e.residual_floor));
      kv(base + ".grid_bound", num(e.grid_bound));
      kv(base + ".samples", std::to_string(e.samples));
      kv(base + ".samples_used", std::to_string(e.samples_used));
      if (e.witness) {
        kv(base + ".witness.point", point_text(e.witness->point));
        kv(base + ".witness.value", num(e.witness->value));
        kv(base + ".witness.distance", num(e.witness->distance));
      }
      if (!e.note.empty()) kv(base + ".note", e.note);
    }
    kv("numeric.verdict", to_string(nr.combined));
  }
  if (r.symbolic && r.numeric) {
    kv("verdict", to_string(r.verdict));
    kv("anomaly", r.anomaly ? r.anomaly_reason : "none");
  }
  return os.str();
}

std::string render_human(const Report& r) {
  std::ostringstream os;
  os << "Problem " << r.id << ": n = " << r.n << ", p = " << r.p
     << ", Y = " << (r.y_origin ? "origin" : "charts") << "\n";
  if (r.anomaly) os << "\n*** ANOMALY: " << r.anomaly_reason << " ***\n";
  if (r.symbolic && r.numeric) os << "\nVerdict: " << to_string(r.verdict) << "\n";

  if (r.symbolic) {
    const auto& s = *r.symbolic;
    os << "\nSymbolic checks\n";
    os << "  Hessian identity on X      " << bool_text(s.hess_identity) << "\n";
    os << "  lifting columns contract   " << bool_text(s.contract) << "\n";
    os << "  K_f I inside J_f           " << bool_text(s.dol.holds) << " (" << to_string(s.dol.method)
       << ")\n";
    os << "  mudet identity             " << bool_text(s.mudet_all) << " (" << s.mudet.size()
       << " column choices)\n";
    os << "  psi^(p-2) grad f in K_f    " << to_string(s.psi_power_grad.status) << "\n";
    os << "  K_f: " << s.kf_generators << " generators from " << s.lambda_columns << " columns\n";
    auto power = [&](const char* label, const PowerResult& pr) {
      os << "  " << label;
      if (pr.cert.k) {
        os << "k = " << *pr.cert.k << "\n";
      } else if (pr.status == PowerResult::Status::BasisLimit) {
        os << "not decided (basis over budget)\n";
      } else {
        os << "none up to " << s.k_max << "\n";
      }
    };
    power("m^k inside K_f             ", s.ifit);
    power("m^k I inside J_f           ", s.ijac);
    if (r.symbolic_verdict) os << "  symbolic verdict           " << to_string(*r.symbolic_verdict) << "\n";
  }

  if (r.numeric) {
    const auto& nr = *r.numeric;
    os << "\nNumerical evidence (rmin " << num(nr.plan.rmin) << ", rmax " << num(nr.plan.rmax)
       << ", " << nr.plan.shells << " shells x " << nr.plan.per_shell << ", seed " << nr.plan.seed
       << ")\n";
    if (!nr.note.empty()) os << "  " << nr.note << "\n";
    auto est = [&](const char* label, const std::optional<LojaEstimate>& e) {
      if (!e) return;
      os << "  " << label << to_string(e->verdict) << ", alpha ~ " << num(e->alpha_hat)
         << ", log C ~ " << num(e->logC_hat) << " (" << e->support_points << " envelope points)\n";
      if (e->witness) {
        os << "    witness " << point_text(e->witness->point) << ": value " << num(e->witness->value)
           << ", distance " << num(e->witness->distance) << "\n";
      }
      if (!e->note.empty()) os << "    " << e->note << "\n";
    };
    est("|grad f| vs dist(X u Y)    ", nr.grad);
    est("|D_f| on X vs dist(Y)      ", nr.df);
    os << "  numeric verdict            " << to_string(nr.combined) << "\n";
  }

  if (!r.assumptions.empty()) {
    os << "\nAssumptions\n";
    for (const auto& a : r.assumptions) os << "  - " << a << "\n";
  }
  return os.str();
}

}  // namespace idet
