#include "idet/loja.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <random>

#include "idet/errors.hpp"
#include "idet/hessian.hpp"

namespace idet {

namespace {

// Total grid nodes per chart; higher-arity charts get a coarser grid.
constexpr std::size_t kMaxGridNodes = 1u << 14;
constexpr int kDescentSteps = 20;
constexpr double kVanishing = 1e-12;
constexpr double kWitnessFactor = 100.0;
// Witnesses closer than this fraction of rmin are taken to have converged onto the set.
constexpr double kWitnessFloor = 1e-3;

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::mt19937_64 shell_engine(std::uint64_t seed, std::size_t shell, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shell), stream};
  return std::mt19937_64(seq);
}

std::vector<double> random_on_sphere(std::mt19937_64& eng, std::size_t dim, double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> u(dim);
  double s = 0.0;
  do {
    for (auto& v : u) v = gauss(eng);
    s = norm(u);
  } while (s == 0.0);
  for (auto& v : u) v *= radius / s;
  return u;
}

// Solves a x = b in place by partial pivoting; false when singular.
bool solve(std::vector<double> a, std::vector<double>& b, std::size_t n) {
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return false;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      double m = a[r * n + c] / a[c * n + c];
      if (m == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= m * a[c * n + k];
      b[r] -= m * b[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    double s = b[c];
    for (std::size_t k = c + 1; k < n; ++k) s -= a[c * n + k] * b[k];
    b[c] = s / a[c * n + c];
  }
  return true;
}

struct Sample {
  std::vector<double> point;
  double g = 0.0;
  double r = 0.0;
};

struct Fit {
  double alpha = 0.0;
  double logC = 0.0;
  std::vector<EnvelopePoint> envelope;
};

// Per-decade minima of g over samples with r > bound, then least squares.
std::optional<Fit> envelope_fit(const std::vector<Sample>& samples, double bound) {
  std::map<long, const Sample*> bins;
  for (const auto& s : samples) {
    if (!(s.r > bound) || !(s.g > 0.0) || !std::isfinite(s.g)) continue;
    long decade = static_cast<long>(std::floor(std::log10(s.r)));
    auto [it, inserted] = bins.try_emplace(decade, &s);
    if (!inserted && s.g < it->second->g) it->second = &s;
  }
  if (bins.size() < 2) return std::nullopt;
  Fit fit;
  for (const auto& [decade, s] : bins) fit.envelope.push_back({std::log(s->r), std::log(s->g)});
  double mx = 0.0, my = 0.0;
  for (const auto& e : fit.envelope) {
    mx += e.log_r;
    my += e.log_g;
  }
  const double m = static_cast<double>(fit.envelope.size());
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& e : fit.envelope) {
    sxy += (e.log_r - mx) * (e.log_g - my);
    sxx += (e.log_r - mx) * (e.log_r - mx);
  }
  if (sxx <= 0.0) return std::nullopt;
  fit.alpha = std::max(0.0, sxy / sxx);
  if (!std::isfinite(fit.alpha)) return std::nullopt;
  fit.logC = std::numeric_limits<double>::infinity();
  for (const auto& e : fit.envelope) fit.logC = std::min(fit.logC, e.log_g - fit.alpha * e.log_r);
  return fit;
}

void finish(LojaEstimate& est, const std::vector<Sample>& samples) {
  est.samples = samples.size();
  double floor_used = std::numeric_limits<double>::infinity();
  double floor_all = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    floor_all = std::min(floor_all, s.g);
    if (s.r > est.grid_bound) {
      ++est.samples_used;
      floor_used = std::min(floor_used, s.g);
    }
  }
  est.residual_floor = est.samples_used > 0 ? floor_used : floor_all;
  if (samples.empty()) est.residual_floor = 0.0;

  auto fit = envelope_fit(samples, est.grid_bound);
  if (fit) {
    est.alpha_hat = fit->alpha;
    est.logC_hat = fit->logC;
    est.support_points = fit->envelope.size();
    est.envelope = std::move(fit->envelope);
  }
  if (est.witness) {
    est.verdict = Verdict::Fails;
  } else if (fit) {
    est.verdict = Verdict::Holds;
  } else {
    est.verdict = Verdict::Inconclusive;
    if (est.note.empty()) {
      est.note = est.samples_used == 0 ? "all samples within grid bound of the set"
                                       : "fewer than two radius decades above grid bound";
    }
  }
}

}  // namespace

void SamplePlan::validate() const {
  if (!(rmin > 0.0) || !(rmin < rmax) || !(rmax <= 1.0)) {
    throw InputError("bad-plan", "sample radii must satisfy 0 < rmin < rmax <= 1");
  }
  if (shells < 4) throw InputError("bad-plan", "at least 4 shells are required");
  if (per_shell < 16) throw InputError("bad-plan", "at least 16 samples per shell are required");
  if (chart_grid < 2) throw InputError("bad-plan", "chart grid needs at least 2 points");
}

std::vector<double> SamplePlan::radii() const {
  std::vector<double> out(shells);
  const double ratio = std::log(rmax / rmin);
  for (std::size_t s = 0; s < shells; ++s) {
    out[s] = rmin * std::exp(ratio * static_cast<double>(s) / static_cast<double>(shells - 1));
  }
  out.back() = rmax;
  return out;
}

SetDistance SetDistance::origin(std::size_t n) {
  SetDistance d;
  d.n_ = n;
  d.origin_ = true;
  return d;
}

SetDistance::SetDistance(const std::vector<ChartMap>& charts, std::size_t grid) {
  if (charts.empty()) throw InputError("empty-charts", "chart-defined set without charts");
  if (grid < 2) throw InputError("bad-plan", "chart grid needs at least 2 points");
  n_ = charts.front().dimension();
  for (const auto& chart : charts) {
    if (chart.dimension() != n_) throw InputError("chart-dimension", "charts disagree on dimension");
    Grid g;
    g.arity = chart.arity();
    for (const auto& c : chart.components) g.components.emplace_back(c);
    if (g.arity == 0) {
      g.res = 1;
      g.images = chart(std::span<const double>{});
      grids_.push_back(std::move(g));
      resolutions_.push_back(1);
      continue;
    }
    g.res = grid;
    while (g.res > 2 && ipow(g.res, g.arity) > kMaxGridNodes) {
      g.res = static_cast<std::size_t>(
          std::floor(std::pow(static_cast<double>(kMaxGridNodes), 1.0 / static_cast<double>(g.arity))));
      g.res = std::max<std::size_t>(g.res, 2);
      if (ipow(g.res, g.arity) <= kMaxGridNodes) break;
      --g.res;
    }
    g.step = 2.0 / static_cast<double>(g.res - 1);
    const std::size_t nodes = ipow(g.res, g.arity);
    g.params.resize(nodes * g.arity);
    g.images.resize(nodes * n_);
    std::vector<double> t(g.arity);
    for (std::size_t node = 0; node < nodes; ++node) {
      std::size_t rest = node;
      for (std::size_t k = 0; k < g.arity; ++k) {
        t[k] = -1.0 + g.step * static_cast<double>(rest % g.res);
        rest /= g.res;
      }
      std::copy(t.begin(), t.end(), g.params.begin() + node * g.arity);
      for (std::size_t i = 0; i < n_; ++i) g.images[node * n_ + i] = g.components[i](t);
    }
    // Largest image gap between grid neighbours along any axis.
    double gap = 0.0;
    for (std::size_t node = 0; node < nodes; ++node) {
      std::size_t stride = 1;
      for (std::size_t k = 0; k < g.arity; ++k, stride *= g.res) {
        if ((node / stride) % g.res + 1 == g.res) continue;
        std::span<const double> a(g.images.data() + node * n_, n_);
        std::span<const double> b(g.images.data() + (node + stride) * n_, n_);
        gap = std::max(gap, std::sqrt(sq_dist(a, b)));
      }
    }
    bound_ = std::max(bound_, gap * std::sqrt(static_cast<double>(g.arity)) / 2.0);
    resolutions_.push_back(g.res);
    grids_.push_back(std::move(g));
  }
}

double SetDistance::chart_distance(const Grid& g, std::span<const double> x) const {
  const std::size_t nodes = g.images.size() / n_;
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t node = 0; node < nodes; ++node) {
    double d = sq_dist(x, std::span<const double>(g.images.data() + node * n_, n_));
    if (d < best_d) {
      best_d = d;
      best = node;
    }
  }
  if (g.arity == 0) return best_d;

  std::vector<double> t(g.params.begin() + best * g.arity, g.params.begin() + (best + 1) * g.arity);
  std::vector<double> trial(g.arity), img(n_);
  auto value = [&](const std::vector<double>& p) {
    for (std::size_t i = 0; i < n_; ++i) img[i] = g.components[i](p);
    return sq_dist(x, img);
  };
  double step = g.step / 2.0;
  for (int it = 0; it < kDescentSteps; ++it) {
    double cand_d = best_d;
    std::vector<double> cand;
    for (std::size_t k = 0; k < g.arity; ++k) {
      for (double dir : {-1.0, 1.0}) {
        trial = t;
        trial[k] += dir * step;
        double d = value(trial);
        if (d < cand_d) {
          cand_d = d;
          cand = trial;
        }
      }
    }
    if (cand.empty()) {
      step /= 2.0;
    } else {
      t = std::move(cand);
      best_d = cand_d;
    }
  }
  return best_d;
}

double SetDistance::operator()(std::span<const double> x) const {
  if (x.size() != n_) throw InputError("varcount-mismatch", "point dimension differs from set");
  if (origin_) return norm(x);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : grids_) best = std::min(best, chart_distance(g, x));
  return std::sqrt(best);
}

DistanceResult distance_to_set(std::span<const double> x, const std::vector<ChartMap>& charts,
                               std::size_t grid) {
  SetDistance d(charts, grid);
  return {d(x), d.bound()};
}

DistanceResult distance_to_set(std::span<const double> x, const YDescriptor& set, std::size_t grid) {
  if (set.is_origin()) return {norm(x), 0.0};
  return distance_to_set(x, set.charts, grid);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

LojaEstimate estimate_gradient_exponent(const ProblemSpec& spec, const SamplePlan& plan) {
  plan.validate();
  if (spec.xcharts.empty()) throw InputError("empty-charts", "X needs at least one chart");
  const std::size_t n = spec.n();

  std::vector<Polynomial> grad = gradient(spec);
  std::vector<FloatPolynomial> fgrad;
  std::vector<FloatPolynomial> fhess;  // row-major n x n
  for (const auto& g : grad) fgrad.emplace_back(g);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fhess.emplace_back(grad[i].diff(j));

  const SetDistance dx(spec.xcharts, plan.chart_grid);
  const SetDistance dy =
      spec.Y.is_origin() ? SetDistance::origin(n) : SetDistance(spec.Y.charts, plan.chart_grid);
  auto dist = [&](std::span<const double> x) { return std::min(dx(x), dy(x)); };
  auto grad_norm = [&](std::span<const double> x) {
    double s = 0.0;
    for (const auto& g : fgrad) {
      double v = g(x);
      s += v * v;
    }
    return std::sqrt(s);
  };

  LojaEstimate est;
  est.grid_bound = std::max(dx.bound(), dy.bound());
  const double witness_r = std::max(kWitnessFactor * est.grid_bound, kWitnessFloor * plan.rmin);

  const auto radii = plan.radii();
  std::vector<std::future<std::vector<Sample>>> jobs;
  for (std::size_t s = 0; s < radii.size(); ++s) {
    jobs.push_back(std::async(std::launch::async, [&, s] {
      auto eng = shell_engine(plan.seed, s, 0);
      std::vector<Sample> out;
      out.reserve(plan.per_shell);
      for (std::size_t k = 0; k < plan.per_shell; ++k) {
        Sample smp;
        smp.point = random_on_sphere(eng, n, radii[s]);
        smp.g = grad_norm(smp.point);
        smp.r = dist(smp.point);
        out.push_back(std::move(smp));
      }
      return out;
    }));
  }
  std::vector<std::vector<Sample>> shells;
  for (auto& j : jobs) shells.push_back(j.get());

  std::vector<Sample> all;
  for (const auto& sh : shells) all.insert(all.end(), sh.begin(), sh.end());
  for (const auto& smp : all) {
    if (smp.g < kVanishing && smp.r > witness_r) {
      est.witness = Witness{smp.point, smp.g, smp.r};
      break;
    }
  }

  // Sampling almost never lands on a critical curve; polish the lowest
  // samples of each shell towards grad f = 0 and keep what stays off X u Y.
  if (!est.witness) {
    auto refine = [&](std::vector<double> x) {
      std::vector<double> g(n), a(n * n), h(n * n), rhs(n), trial(n);
      auto eval_g = [&](const std::vector<double>& p) {
        for (std::size_t i = 0; i < n; ++i) g[i] = fgrad[i](p);
        double c = 0.0;
        for (double v : g) c += v * v;
        return c;
      };
      double cost = eval_g(x);
      double mu = -1.0;
      for (int it = 0; it < 100 && cost > 1e-40; ++it) {
        for (std::size_t k = 0; k < n * n; ++k) h[k] = fhess[k](x);
        for (std::size_t i = 0; i < n; ++i) {
          double s = 0.0;
          for (std::size_t k = 0; k < n; ++k) s += h[k * n + i] * g[k];
          rhs[i] = -s;
          for (std::size_t j = 0; j < n; ++j) {
            double t = 0.0;
            for (std::size_t k = 0; k < n; ++k) t += h[k * n + i] * h[k * n + j];
            a[i * n + j] = t;
          }
        }
        if (mu < 0.0) {
          double dmax = 0.0;
          for (std::size_t i = 0; i < n; ++i) dmax = std::max(dmax, a[i * n + i]);
          mu = 1e-3 * std::max(dmax, 1e-30);
        }
        for (std::size_t i = 0; i < n; ++i) a[i * n + i] += mu;
        std::vector<double> delta = rhs;
        if (!solve(a, delta, n)) {
          mu *= 4.0;
          continue;
        }
        for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + delta[i];
        std::vector<double> g_old = g;
        double c = eval_g(trial);
        if (c < cost) {
          x = trial;
          cost = c;
          mu /= 3.0;
          if (norm(delta) < 1e-18) break;
        } else {
          g = std::move(g_old);
          mu *= 4.0;
          if (mu > 1e30) break;
        }
      }
      return x;
    };

    for (std::size_t s = 0; s < shells.size() && !est.witness; ++s) {
      std::vector<const Sample*> order;
      for (const auto& smp : shells[s]) order.push_back(&smp);
      std::stable_sort(order.begin(), order.end(),
                       [](const Sample* a, const Sample* b) { return a->g < b->g; });
      for (std::size_t c = 0; c < std::min<std::size_t>(3, order.size()); ++c) {
        std::vector<double> x = refine(order[c]->point);
        if (norm(x) > plan.rmax) continue;
        double g = grad_norm(x);
        if (!(g < kVanishing)) continue;
        double r = dist(x);
        if (r > witness_r) {
          est.witness = Witness{std::move(x), g, r};
          break;
        }
      }
    }
  }

  finish(est, all);
  return est;
}

LojaEstimate estimate_Df_exponent(const ProblemSpec& spec, const SamplePlan& plan) {
  plan.validate();
  if (spec.xcharts.empty()) throw InputError("empty-charts", "X needs at least one chart");
  const std::size_t n = spec.n();
  const std::size_t p = spec.p();

  const SetDistance dy =
      spec.Y.is_origin() ? SetDistance::origin(n) : SetDistance(spec.Y.charts, plan.chart_grid);
  std::vector<FloatPolynomial> hf;
  for (const auto& e : spec.H.entries()) hf.emplace_back(e);
  auto df = [&](std::span<const double> y) {
    std::vector<double> m(p * p);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = hf[k](y);
    return determinant(std::move(m), p);
  };

  LojaEstimate est;
  est.grid_bound = dy.bound();
  const double witness_r = std::max(kWitnessFactor * est.grid_bound, kWitnessFloor * plan.rmin);
  const auto radii = plan.radii();

  bool any_positive_arity = false;
  std::vector<Sample> all;
  for (std::size_t c = 0; c < spec.xcharts.size(); ++c) {
    const ChartMap& chart = spec.xcharts[c];
    const std::size_t d = chart.arity();
    if (d == 0) continue;  // the chart is the origin itself
    any_positive_arity = true;

    std::vector<std::future<std::vector<Sample>>> jobs;
    for (std::size_t s = 0; s < radii.size(); ++s) {
      jobs.push_back(std::async(std::launch::async, [&, s, c, d] {
        std::vector<std::vector<double>> params;
        if (d == 1) {
          params = {{-radii[s]}, {radii[s]}};
        } else {
          auto eng = shell_engine(plan.seed, s, static_cast<std::uint32_t>(c + 1));
          for (std::size_t k = 0; k < plan.per_shell; ++k)
            params.push_back(random_on_sphere(eng, d, radii[s]));
        }
        std::vector<Sample> out;
        for (const auto& t : params) {
          Sample smp;
          smp.point = chart(t);
          smp.g = std::abs(df(smp.point));
          smp.r = dy(smp.point);
          out.push_back(std::move(smp));
        }
        return out;
      }));
    }
    std::vector<Sample> chart_samples;
    for (auto& j : jobs) {
      auto v = j.get();
      chart_samples.insert(chart_samples.end(), v.begin(), v.end());
    }

    // One-parameter charts: bracket sign changes of D_f between shells.
    if (d == 1 && !est.witness) {
      for (double side : {-1.0, 1.0}) {
        for (std::size_t s = 0; s + 1 < radii.size() && !est.witness; ++s) {
          double lo = side * radii[s], hi = side * radii[s + 1];
          double flo = df(chart(std::vector<double>{lo}));
          double fhi = df(chart(std::vector<double>{hi}));
          if (!(flo * fhi < 0.0)) continue;
          for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = df(chart(std::vector<double>{mid}));
            if (fm == 0.0) {
              lo = hi = mid;
              break;
            }
            if ((fm < 0.0) == (flo < 0.0)) {
              lo = mid;
              flo = fm;
            } else {
              hi = mid;
            }
          }
          std::vector<double> y = chart(std::vector<double>{0.5 * (lo + hi)});
          double g = std::abs(df(y));
          double r = dy(y);
          if (g < kVanishing && r > witness_r) est.witness = Witness{std::move(y), g, r};
        }
      }
    }
    all.insert(all.end(), chart_samples.begin(), chart_samples.end());
  }

  if (!est.witness) {
    for (const auto& smp : all) {
      if (smp.g < kVanishing && smp.r > witness_r) {
        est.witness = Witness{smp.point, smp.g, smp.r};
        break;
      }
    }
  }

  if (!any_positive_arity) {
    // X is the single point 0, which lies in Y: the inequality is vacuous.
    est.verdict = Verdict::Holds;
    est.note = "X = {0}; condition holds vacuously";
    return est;
  }
  finish(est, all);
  return est;
}

Rational exact_gradient_norm_sq(const ProblemSpec& spec, std::span<const double> point) {
  std::vector<Rational> x;
  for (double v : point) x.emplace_back(v);
  Rational s = 0;
  for (const auto& g : gradient(spec)) {
    Rational v = g.eval(x);
    s += v * v;
  }
  return s;
}

}  // namespace idet
