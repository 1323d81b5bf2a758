#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "idet/errors.hpp"
#include "idet/problem_io.hpp"
#include "idet/report.hpp"
#include "support.hpp"

using namespace idet;
using idet::testing::load_corpus;

namespace {

InputError parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const InputError& e) {
    return e;
  }
  FAIL("expected an input error for: " << text);
  return InputError("", "");
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  std::string cmd = std::string(IDET_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string corpus_file(const std::string& name) {
  return std::string(IDET_CORPUS_DIR) + "/" + name + ".idp";
}

const char* kDinf =
    "vars = x y z\n"
    "psi = [x, y]\n"
    "H = [[1, 0], [0, z]]\n"
    "xcharts = [(t) -> (0, 0, t)]\n";

}  // namespace

TEST_CASE("parse a problem") {
  auto s = parse_problem(kDinf, "d-infinity");
  CHECK(s.id == "d-infinity");
  CHECK(s.n() == 3);
  CHECK(s.p() == 2);
  CHECK(s.Y.is_origin());
  REQUIRE(s.xcharts.size() == 1);
  CHECK(s.xcharts[0].label == "X1");
  CHECK(s == load_corpus("d-infinity"));
  auto multi = parse_problem(
      "# comment\nvars = x y\npsi = [x]   # trailing\nH = [[\n  y^2 - 1/3*x\n]]\n"
      "Y = charts [(s) -> (0, s)]\nxcharts = [(t) -> (0, t)]\n");
  CHECK_FALSE(multi.Y.is_origin());
  CHECK(multi.H(0, 0) == parse_polynomial("y^2 - 1/3*x", multi.varnames));
}

TEST_CASE("input errors carry a code and a position") {
  auto e = parse_error("vars = x y z\npsi = [x, y]\nH = [[1, z], [0, z]]\n");
  CHECK(e.code() == "H-not-symmetric");
  CHECK(e.line() == 3);
  CHECK(e.column() >= 1);

  auto c = parse_error("vars = x y z\npsi = [x, y]\nH = [[1, 0], [0, z]]\nxcharts = [(t) -> (t, 0, 0)]\n");
  CHECK(c.code() == "chart-not-on-X");
  CHECK(c.line() == 4);

  auto syn = parse_error("vars = x y\npsi = [x +]\nH = [[1]]\n");
  CHECK(syn.code() == "syntax");
  CHECK(syn.line() == 2);
  CHECK(syn.column() == 11);

  CHECK(parse_error("vars = x\npsi = [q]\nH = [[1]]\n").code() == "unknown-variable");
  CHECK(parse_error("psi = [x]\n").code() == "vars-first");
  CHECK(parse_error("vars = x x\n").code() == "duplicate-name");
  CHECK(parse_error("vars = x\nvars = x\n").code() == "duplicate-statement");
  CHECK(parse_error("vars = x\nfoo = 1\n").code() == "unknown-statement");
  CHECK(parse_error("vars = x\npsi = [x]\n").code() == "missing-H");
  CHECK(parse_error("vars = x\nH = [[1]]\n").code() == "missing-psi");
  CHECK(parse_error("vars = x\npsi = [x]\nH = [[1, 0]]\n").code() == "H-shape");
  CHECK(parse_error("vars = x\npsi = [x]\nH = [[x^65]]\n").code() == "exponent-too-large");
  CHECK(parse_error("vars = x\npsi = [x]\nH = [[1/0]]\n").code() == "division-by-zero");
  CHECK(parse_error("vars = a b c d e f g h i\npsi = [a]\nH = [[1]]\n").code() == "too-many-vars");
  CHECK(parse_error("vars = x\npsi = [x + 1]\nH = [[1]]\n").code() == "psi-constant-term");
}

TEST_CASE("serialize round-trips the corpus") {
  for (const auto& name : idet::testing::corpus_names()) {
    CAPTURE(name);
    auto s = load_corpus(name);
    auto text = serialize(s);
    CHECK(parse_problem(text, s.id) == s);
    CHECK(serialize(parse_problem(text, s.id)) == text);
  }
}

TEST_CASE("check on the corpus") {
  auto morse = run_check(load_corpus("morse-transversal"));
  REQUIRE(morse.symbolic);
  CHECK(morse.symbolic->ifit.status == PowerResult::Status::Found);
  CHECK(*morse.symbolic->ifit.cert.k == 0);
  CHECK(morse.symbolic_verdict == SymbolicVerdict::Certified);

  auto dinf = run_check(load_corpus("d-infinity"));
  CHECK(*dinf.symbolic->ifit.cert.k == 1);
  CHECK(*dinf.symbolic->ijac.cert.k == 1);
  CHECK(dinf.symbolic->dol.holds);
  CHECK(dinf.symbolic->mudet_all);

  auto cusp = run_check(load_corpus("cusp-psi"));
  CHECK(*cusp.symbolic->ifit.cert.k == 2);

  auto x2y2 = run_check(load_corpus("x2y2-fail"));
  CHECK(x2y2.symbolic->ifit.status == PowerResult::Status::NoneUpToKMax);
  CHECK(x2y2.symbolic_verdict == SymbolicVerdict::Inconclusive);
}

TEST_CASE("loja needs charts of X") {
  auto s = load_corpus("morse-transversal");
  auto r = run_loja(s);
  REQUIRE(r.numeric);
  CHECK(r.numeric->combined == Verdict::Holds);
  s.xcharts.clear();
  CHECK_THROWS_AS(run_loja(s), InputError);
  auto rep = run_report(s);
  CHECK(rep.numeric->combined == Verdict::Inconclusive);
  CHECK(rep.verdict == FinalVerdict::Certified);
}

TEST_CASE("fused verdicts on the corpus") {
  struct Want {
    const char* name;
    FinalVerdict verdict;
  };
  for (const auto& [name, verdict] :
       {Want{"morse-transversal", FinalVerdict::Certified}, Want{"d-infinity", FinalVerdict::Certified},
        Want{"d-infinity-t2", FinalVerdict::NotDetermined}, Want{"x2y2-fail", FinalVerdict::NotDetermined},
        Want{"cusp-psi", FinalVerdict::Certified}, Want{"full-rank-isolated", FinalVerdict::Certified},
        Want{"p3-complete-intersection", FinalVerdict::Certified}}) {
    CAPTURE(name);
    auto s = load_corpus(name);
    auto r = run_report(s);
    CHECK(r.verdict == verdict);
    CHECK_FALSE(r.anomaly);
    CHECK(witness_revalidates(s, r));
    if (verdict == FinalVerdict::NotDetermined) {
      REQUIRE(r.numeric->grad);
      CHECK(r.numeric->grad->witness);
    }
  }
}

TEST_CASE("a certified problem with weak numerics is flagged") {
  auto s = load_corpus("d-infinity");
  SamplePlan plan;
  plan.chart_grid = 2;
  plan.rmax = 0.001;
  auto r = run_report(s, kDefaultKMax, plan);
  REQUIRE(r.numeric->combined == Verdict::Inconclusive);
  CHECK(r.verdict == FinalVerdict::Certified);
  CHECK(r.anomaly);
  CHECK_FALSE(r.anomaly_reason.empty());
  CHECK(render_kv(r).find("anomaly = none") == std::string::npos);
}

TEST_CASE("reports are deterministic") {
  for (const auto& name : idet::testing::corpus_names()) {
    auto s = load_corpus(name);
    CHECK(render_kv(run_report(s)) == render_kv(run_report(s)));
  }
  auto a = run_cli("report " + corpus_file("d-infinity-t2"));
  auto b = run_cli("report " + corpus_file("d-infinity-t2"));
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("verdict = not-determined (witness)") != std::string::npos);
}

TEST_CASE("command line exit codes") {
  CHECK(run_cli("check " + corpus_file("cusp-psi")).status == 0);
  CHECK(run_cli("check " + corpus_file("cusp-psi") + " --human").status == 0);
  CHECK(run_cli("loja " + corpus_file("morse-transversal") + " --shells 4 --per-shell 16").status == 0);
  auto pert = run_cli("perturb " + corpus_file("d-infinity") + " --point 0,0,0.5");
  CHECK(pert.status == 0);
  CHECK(pert.out.find("perturbed.hess_identity = true") != std::string::npos);
  CHECK(run_cli("perturb " + corpus_file("d-infinity") + " --point 0.5,0,0").status == 2);
  CHECK(run_cli("loja " + corpus_file("morse-transversal") + " --shells 2").status == 2);
  CHECK(run_cli("frobnicate").status == 2);
  auto missing = run_cli("check /nonexistent/file.idp");
  CHECK(missing.status == 2);
}
