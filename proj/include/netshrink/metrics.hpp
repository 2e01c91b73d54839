#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace netshrink {

// `steps` uniformly spaced points on [lo, hi], endpoints exact.
std::vector<double> uniform_grid(double lo, double hi, std::size_t steps);

// `steps` logarithmically spaced points on [lo, hi], lo > 0.
std::vector<double> log_grid(double lo, double hi, std::size_t steps);

enum class Interpolation { kLinear, kCubicSpline };

// Piecewise-linear interpolation; exact at the knots. xs must be strictly
// increasing with |xs| = |ys| >= 2. Queries outside [xs.front(), xs.back()]
// raise a domain error.
std::vector<double> linear_interpolate(std::span<const double> xs, std::span<const double> ys,
                                       std::span<const double> x_new);

// Natural cubic spline through the knots, same contract as linear_interpolate.
std::vector<double> cubic_spline_interpolate(std::span<const double> xs,
                                             std::span<const double> ys,
                                             std::span<const double> x_new);

struct Quadrature {
  double value = 0.0;
  // Set when the point count was even: Simpson covered all but the last
  // interval, which was added by the trapezoid rule.
  bool trapezoid_tail = false;
};

// Composite Simpson rule on uniformly spaced xs (|xs| >= 3).
Quadrature simpson_integrate(std::span<const double> ys, std::span<const double> xs);

struct OverlapReport {
  double f_overlap = 1.0;   // 1 / (1 + s_delta)
  double s_delta = 0.0;     // integral of |rho0 - rhol| over beta
  std::size_t fine_grid_points = 0;
};

constexpr std::size_t kDefaultFineGridPoints = 401;

// Overlap of two spreading-ability curves sampled on the same beta array:
// both are interpolated onto a uniform fine grid over [beta.front(),
// beta.back()], the absolute gap is integrated with Simpson's rule and
// mapped to 1 / (1 + gap).
OverlapReport f_overlap(std::span<const double> beta, std::span<const double> rho0,
                        std::span<const double> rhol,
                        std::size_t fine_grid_points = kDefaultFineGridPoints,
                        Interpolation method = Interpolation::kLinear);

// Mean of |a_i - b_i|.
double mean_absolute_error(std::span<const double> a, std::span<const double> b);

}  // namespace netshrink
