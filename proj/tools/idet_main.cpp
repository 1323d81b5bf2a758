#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "idet/errors.hpp"
#include "idet/hessian.hpp"
#include "idet/perturb.hpp"
#include "idet/problem_io.hpp"
#include "idet/report.hpp"

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string vec_text(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out + ")";
}

std::string mat_text(const std::vector<double>& m, std::size_t p) {
  std::string out = "[";
  for (std::size_t r = 0; r < p; ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < p; ++c) out += (c ? ", " : "") + num(m[r * p + c]);
    out += "]";
  }
  return out + "]";
}

// "a,b,c" with decimal or a/b entries.
std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t slash = item.find('/');
      std::size_t used = 0;
      if (slash == std::string::npos) {
        out.push_back(std::stod(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      } else {
        double a = std::stod(item.substr(0, slash));
        double b = std::stod(item.substr(slash + 1));
        out.push_back(a / b);
      }
    } catch (const std::logic_error&) {
      throw idet::InputError("bad-point", "cannot read coordinate '" + item + "'");
    }
  }
  return out;
}

struct PlanFlags {
  idet::SamplePlan plan;
  void add(CLI::App* app) {
    app->add_option("--rmin", plan.rmin, "Smallest shell radius")->capture_default_str();
    app->add_option("--rmax", plan.rmax, "Largest shell radius")->capture_default_str();
    app->add_option("--shells", plan.shells, "Number of shells")->capture_default_str();
    app->add_option("--per-shell", plan.per_shell, "Samples per shell")->capture_default_str();
    app->add_option("--seed", plan.seed, "Random seed")->capture_default_str();
    app->add_option("--chart-grid", plan.chart_grid, "Chart grid points per parameter")
        ->capture_default_str();
  }
};

int run_perturb(const idet::ProblemSpec& spec, const std::string& point_text, double eps,
                const std::string& emit) {
  std::vector<double> y = parse_point(point_text);
  idet::SpectralData s = idet::spectral_data(spec, y);
  double scale = eps > 0.0 ? eps : idet::default_eps_scale(s);
  idet::PerturbationPair pair = idet::build_pair(s, scale);
  idet::PairReport rep = idet::verify_pair(spec, y, pair);
  const std::size_t p = spec.p();
  bool perturbed_hess = idet::check_hess_identity(rep.perturbed).holds;

  auto kv = [](const std::string& k, const std::string& v) { std::cout << k << " = " << v << "\n"; };
  kv("id", spec.id);
  kv("point", vec_text(s.point));
  kv("H", mat_text(s.H, p));
  kv("eigenvalues", vec_text(s.eig.eigenvalues));
  kv("killed_index", std::to_string(pair.killed + 1));
  kv("eps_scale", num(scale));
  kv("epsilons", vec_text(pair.epsilons));
  kv("V", mat_text(pair.V, p));
  kv("W", mat_text(pair.W, p));
  kv("v_bound", pair.v_bound_holds ? "true" : "false");
  kv("det_H_minus_V", num(rep.det_minus_V));
  kv("det_H_minus_W", num(rep.det_minus_W));
  kv("eigen_product", num(rep.eigen_product));
  kv("v_degenerate", rep.v_degenerate ? "true" : "false");
  kv("w_matches", rep.w_matches ? "true" : "false");
  kv("orthogonality_error", num(rep.orthogonality_error));
  kv("diagonalization_error", num(rep.diagonalization_error));
  kv("spectral_ok", rep.spectral_ok ? "true" : "false");
  std::string h = "[";
  for (std::size_t r = 0; r < p; ++r) {
    h += r ? ", [" : "[";
    for (std::size_t c = 0; c < p; ++c)
      h += (c ? ", " : "") + rep.perturbed.H(r, c).to_string(spec.varnames);
    h += "]";
  }
  kv("perturbed.H", h + "]");
  kv("perturbed.hess_identity", perturbed_hess ? "true" : "false");
  if (!emit.empty()) {
    std::ofstream out(emit);
    if (!out) throw idet::InputError("io", "cannot write " + emit);
    out << "# " << rep.perturbed.id << "\n" << idet::serialize(rep.perturbed);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinite determinacy checks for functions vanishing to second order on X"};
  app.require_subcommand(1);

  std::string file;
  unsigned k_max = idet::kDefaultKMax;
  bool human = false;
  PlanFlags flags;
  std::string point;
  double eps = 0.0;
  std::string emit;

  auto* check = app.add_subcommand("check", "Symbolic identities and power certificates");
  check->add_option("file", file, "Problem file")->required();
  check->add_option("--k-max", k_max, "Largest power tried")->capture_default_str();
  check->add_flag("--human", human, "Readable output instead of key = value lines");

  auto* loja = app.add_subcommand("loja", "Numerical Lojasiewicz exponent estimates");
  loja->add_option("file", file, "Problem file")->required();
  flags.add(loja);
  loja->add_flag("--human", human, "Readable output instead of key = value lines");

  auto* perturb = app.add_subcommand("perturb", "Spectral perturbation at a point of X");
  perturb->add_option("file", file, "Problem file")->required();
  perturb->add_option("--point", point, "Point of X, comma separated")->required();
  perturb->add_option("--eps", eps, "Perturbation size (default 1e-3 (1 + |H|))");
  perturb->add_option("--emit-spec", emit, "Write the perturbed problem to this file");

  auto* report = app.add_subcommand("report", "Symbolic and numeric checks with a fused verdict");
  report->add_option("file", file, "Problem file")->required();
  report->add_option("--k-max", k_max, "Largest power tried")->capture_default_str();
  flags.add(report);
  report->add_flag("--human", human, "Readable output instead of key = value lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    idet::ProblemSpec spec = idet::load_problem(file);
    if (perturb->parsed()) return run_perturb(spec, point, eps, emit);
    idet::Report rep;
    if (check->parsed()) rep = idet::run_check(spec, k_max);
    if (loja->parsed()) rep = idet::run_loja(spec, flags.plan);
    if (report->parsed()) rep = idet::run_report(spec, k_max, flags.plan);
    std::cout << (human ? idet::render_human(rep) : idet::render_kv(rep));
    return 0;
  } catch (const idet::InputError& e) {
    std::cerr << file;
    if (e.line() > 0) std::cerr << ":" << e.line() << ":" << e.column();
    std::cerr << ": error[" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const idet::DomainError& e) {
    std::cerr << "error[off-X]: " << e.what() << "\n";
    return 2;
  } catch (const idet::SizeError& e) {
    std::cerr << "error[size-cap]: " << e.what() << "\n";
    return 3;
  }
}
