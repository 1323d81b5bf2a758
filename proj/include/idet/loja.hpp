#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idet/problem.hpp"

namespace idet {

struct SamplePlan {
  double rmin = 1e-4;
  double rmax = 0.5;
  std::size_t shells = 12;
  std::size_t per_shell = 128;
  std::uint64_t seed = 42;
  std::size_t chart_grid = 512;  // grid points per parameter dimension

  // Throws InputError unless 0 < rmin < rmax <= 1, shells >= 4,
  // per_shell >= 16 and chart_grid >= 2.
  void validate() const;
  // Geometrically spaced shell radii from rmin to rmax.
  std::vector<double> radii() const;
};

// Distance oracle for a set given by charts (or the origin). Chart parameters
// range over [-1, 1]^d; the grid minimum is refined by a 20-step pattern
// descent with step halving. The result never underestimates the distance to
// the parametrized piece and exceeds it by at most bound() (estimated from the
// spacing of adjacent grid images).
class SetDistance {
 public:
  static SetDistance origin(std::size_t n);
  // Throws InputError when `charts` is empty.
  SetDistance(const std::vector<ChartMap>& charts, std::size_t grid);

  double operator()(std::span<const double> x) const;
  double bound() const noexcept { return bound_; }
  // Grid resolution actually used per chart (reduced for high arity).
  const std::vector<std::size_t>& resolutions() const noexcept { return resolutions_; }

 private:
  SetDistance() = default;

  struct Grid {
    std::size_t arity = 0;
    std::size_t res = 1;
    double step = 0.0;
    std::vector<double> params;  // res^arity rows of `arity`
    std::vector<double> images;  // res^arity rows of n
    std::vector<FloatPolynomial> components;
  };

  double chart_distance(const Grid& g, std::span<const double> x) const;

  std::size_t n_ = 0;
  bool origin_ = false;
  double bound_ = 0.0;
  std::vector<Grid> grids_;
  std::vector<std::size_t> resolutions_;
};

struct DistanceResult {
  double distance = 0.0;
  double bound = 0.0;
};

DistanceResult distance_to_set(std::span<const double> x, const std::vector<ChartMap>& charts,
                               std::size_t grid);
DistanceResult distance_to_set(std::span<const double> x, const YDescriptor& set, std::size_t grid);

enum class Verdict { Holds, Fails, Inconclusive };
const char* to_string(Verdict v);

struct Witness {
  std::vector<double> point;
  double value = 0.0;     // |grad f| or |D_f| at the point
  double distance = 0.0;  // distance to the reference set
};

struct EnvelopePoint {
  double log_r = 0.0;
  double log_g = 0.0;
};

// |g(x)| >= C dist(x, W)^alpha fitted on the lower envelope of the samples.
struct LojaEstimate {
  double alpha_hat = 0.0;
  double logC_hat = 0.0;
  std::size_t support_points = 0;
  double residual_floor = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
  double grid_bound = 0.0;
  std::size_t samples = 0;       // all evaluated samples
  std::size_t samples_used = 0;  // samples farther than grid_bound from the set
  std::vector<EnvelopePoint> envelope;
  std::string note;
};

// |grad f| against dist(x, X u Y) on spheres of radii plan.radii().
LojaEstimate estimate_gradient_exponent(const ProblemSpec& spec, const SamplePlan& plan);

// |D_f| on X (sampled through xcharts) against dist(., Y).
LojaEstimate estimate_Df_exponent(const ProblemSpec& spec, const SamplePlan& plan);

// Re-evaluates |grad f|^2 exactly at the (binary-exact) witness point.
Rational exact_gradient_norm_sq(const ProblemSpec& spec, std::span<const double> point);

}  // namespace idet
