#include "idet/problem.hpp"

#include "idet/errors.hpp"

namespace idet {

std::vector<double> ChartMap::operator()(std::span<const double> t) const {
  std::vector<double> x;
  x.reserve(components.size());
  for (const auto& c : components) x.push_back(c.eval(t));
  return x;
}

std::vector<Rational> ChartMap::operator()(std::span<const Rational> t) const {
  std::vector<Rational> x;
  x.reserve(components.size());
  for (const auto& c : components) x.push_back(c.eval(t));
  return x;
}

namespace {

void check_chart_shape(const ChartMap& chart, std::size_t n, const std::string& what) {
  if (chart.components.size() != n) {
    throw InputError("chart-dimension", what + " chart '" + chart.label + "' has " +
                                            std::to_string(chart.components.size()) +
                                            " components, expected " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = chart.components[i];
    if (c.nvars() != chart.arity()) {
      throw InputError("varcount-mismatch", what + " chart '" + chart.label +
                                                "' component ring differs from its parameters");
    }
    if (c.constant_term() != 0) {
      throw InputError("chart-not-at-origin", what + " chart '" + chart.label + "' component " +
                                                  std::to_string(i + 1) + " is nonzero at t = 0");
    }
  }
}

}  // namespace

void validate(const ProblemSpec& spec) {
  const std::size_t n = spec.n();
  const std::size_t p = spec.p();
  if (n == 0) throw InputError("missing-vars", "no variables declared");
  if (n > kMaxVars) throw InputError("too-many-vars", "too many variables");
  if (p == 0) throw InputError("missing-psi", "psi must have at least one component");
  if (p > n) {
    throw InputError("p-exceeds-n", "psi has " + std::to_string(p) + " components but only " +
                                        std::to_string(n) + " variables");
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (spec.psi[i].nvars() != n) throw InputError("varcount-mismatch", "psi ring mismatch");
    if (spec.psi[i].constant_term() != 0) {
      throw InputError("psi-constant-term",
                       "psi_" + std::to_string(i + 1) + " has a nonzero constant term");
    }
  }
  if (spec.H.rows() != p || spec.H.cols() != p) {
    throw InputError("H-shape", "H must be " + std::to_string(p) + "x" + std::to_string(p));
  }
  for (const auto& e : spec.H.entries()) {
    if (e.nvars() != n) throw InputError("varcount-mismatch", "H entry ring mismatch");
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      if (!(spec.H(i, j) == spec.H(j, i))) {
        throw InputError("H-not-symmetric", "H is not symmetric at (" + std::to_string(i + 1) +
                                                "," + std::to_string(j + 1) + ")");
      }
    }
  }
  if (!spec.Y.is_origin()) {
    if (spec.Y.charts.empty()) throw InputError("empty-charts", "Y = charts needs at least one chart");
    for (const auto& c : spec.Y.charts) check_chart_shape(c, n, "Y");
  }
  for (const auto& c : spec.xcharts) {
    check_chart_shape(c, n, "X");
    for (std::size_t i = 0; i < p; ++i) {
      Polynomial pulled = spec.psi[i].compose(c.components);
      if (!pulled.is_zero()) {
        throw InputError("chart-not-on-X", "chart '" + c.label + "' leaves X: psi_" +
                                               std::to_string(i + 1) + " o gamma = " +
                                               pulled.to_string(c.params));
      }
    }
  }
  for (std::size_t s = 0; s < spec.extra_syzygies.size(); ++s) {
    const auto& syz = spec.extra_syzygies[s];
    if (syz.size() != p) {
      throw InputError("syzygy-length", "syzygy " + std::to_string(s + 1) + " has " +
                                            std::to_string(syz.size()) + " entries, expected " +
                                            std::to_string(p));
    }
    Polynomial acc(n);
    for (std::size_t i = 0; i < p; ++i) {
      if (syz[i].nvars() != n) throw InputError("varcount-mismatch", "syzygy ring mismatch");
      acc += syz[i] * spec.psi[i];
    }
    if (!acc.is_zero()) {
      throw InputError("syzygy-not-annihilating",
                       "syzygy " + std::to_string(s + 1) + " does not annihilate psi");
    }
  }
}

bool operator==(const ChartMap& a, const ChartMap& b) {
  return a.params == b.params && a.components == b.components && a.label == b.label;
}

bool operator==(const YDescriptor& a, const YDescriptor& b) {
  return a.kind == b.kind && a.charts == b.charts;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  return a.id == b.id && a.varnames == b.varnames && a.psi == b.psi && a.H == b.H &&
         a.Y == b.Y && a.xcharts == b.xcharts && a.extra_syzygies == b.extra_syzygies;
}

}  // namespace idet
