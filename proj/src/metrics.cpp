#include "netshrink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netshrink/error.hpp"

namespace netshrink {
namespace {

void check_knots(std::span<const double> xs, std::span<const double> ys) {
  require(xs.size() == ys.size(), ErrorKind::kUsage, "interpolation knots: |xs| != |ys|");
  require(xs.size() >= 2, ErrorKind::kUsage, "interpolation needs at least two knots");
  for (std::size_t k = 1; k < xs.size(); ++k) {
    require(xs[k] > xs[k - 1], ErrorKind::kUsage, "interpolation knots must strictly increase");
  }
}

// Index k of the segment [xs[k], xs[k+1]] containing x.
std::size_t segment(std::span<const double> xs, double x) {
  require(x >= xs.front() && x <= xs.back(), ErrorKind::kDomain,
          "interpolation query " + std::to_string(x) + " outside knot range");
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto k = static_cast<std::size_t>(it - xs.begin());
  return std::min(k == 0 ? 0 : k - 1, xs.size() - 2);
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
  require(steps >= 1, ErrorKind::kConfig, "grid needs at least one point");
  require(hi >= lo, ErrorKind::kConfig, "grid upper bound below lower bound");
  if (steps == 1) return {lo};
  std::vector<double> grid(steps);
  const double span = hi - lo;
  for (std::size_t k = 0; k < steps; ++k) {
    grid[k] = lo + span * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  grid.back() = hi;
  return grid;
}

std::vector<double> log_grid(double lo, double hi, std::size_t steps) {
  require(lo > 0.0 && hi >= lo, ErrorKind::kConfig, "log grid needs 0 < lo <= hi");
  auto exponents = uniform_grid(std::log10(lo), std::log10(hi), steps);
  for (auto& e : exponents) e = std::pow(10.0, e);
  exponents.front() = lo;
  exponents.back() = hi;
  return exponents;
}

std::vector<double> linear_interpolate(std::span<const double> xs, std::span<const double> ys,
                                       std::span<const double> x_new) {
  check_knots(xs, ys);
  std::vector<double> out;
  out.reserve(x_new.size());
  for (double x : x_new) {
    const std::size_t k = segment(xs, x);
    if (x == xs[k]) {
      out.push_back(ys[k]);
    } else if (x == xs[k + 1]) {
      out.push_back(ys[k + 1]);
    } else {
      const double t = (x - xs[k]) / (xs[k + 1] - xs[k]);
      out.push_back(ys[k] + t * (ys[k + 1] - ys[k]));
    }
  }
  return out;
}

std::vector<double> cubic_spline_interpolate(std::span<const double> xs,
                                             std::span<const double> ys,
                                             std::span<const double> x_new) {
  check_knots(xs, ys);
  const std::size_t n = xs.size();
  // Second derivatives with natural end conditions (Thomas algorithm).
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = xs[i] - xs[i - 1];
      const double h1 = xs[i + 1] - xs[i];
      diag[i - 1] = 2.0 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < n - 2; ++i) {
      const double lower = xs[i + 1] - xs[i];
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i-- > 0;) {
      const double next = i + 1 < n - 2 ? m[i + 2] : 0.0;
      m[i + 1] = (rhs[i] - upper[i] * next) / diag[i];
    }
  }
  std::vector<double> out;
  out.reserve(x_new.size());
  for (double x : x_new) {
    const std::size_t k = segment(xs, x);
    const double h = xs[k + 1] - xs[k];
    const double a = (xs[k + 1] - x) / h;
    const double b = (x - xs[k]) / h;
    out.push_back(a * ys[k] + b * ys[k + 1] +
                  ((a * a * a - a) * m[k] + (b * b * b - b) * m[k + 1]) * h * h / 6.0);
  }
  return out;
}

Quadrature simpson_integrate(std::span<const double> ys, std::span<const double> xs) {
  require(xs.size() == ys.size(), ErrorKind::kUsage, "simpson: |xs| != |ys|");
  require(xs.size() >= 3, ErrorKind::kUsage, "simpson needs at least three points");
  const std::size_t n = xs.size();
  const double h = (xs.back() - xs.front()) / static_cast<double>(n - 1);
  require(h > 0.0, ErrorKind::kUsage, "simpson needs increasing abscissae");
  for (std::size_t k = 1; k < n; ++k) {
    require(std::abs((xs[k] - xs[k - 1]) - h) <= 1e-6 * h, ErrorKind::kUsage,
            "simpson needs uniformly spaced abscissae");
  }

  Quadrature q;
  const std::size_t simpson_points = (n % 2 == 1) ? n : n - 1;
  double sum = ys[0] + ys[simpson_points - 1];
  for (std::size_t k = 1; k + 1 < simpson_points; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * ys[k];
  q.value = sum * h / 3.0;
  if (simpson_points != n) {
    q.trapezoid_tail = true;
    q.value += 0.5 * h * (ys[n - 2] + ys[n - 1]);
  }
  return q;
}

OverlapReport f_overlap(std::span<const double> beta, std::span<const double> rho0,
                        std::span<const double> rhol, std::size_t fine_grid_points,
                        Interpolation method) {
  require(beta.size() == rho0.size() && beta.size() == rhol.size(), ErrorKind::kUsage,
          "f_overlap: beta, rho0 and rhol must have equal length");
  require(fine_grid_points >= 3, ErrorKind::kConfig, "f_overlap fine grid needs >= 3 points");
  const auto fine = uniform_grid(beta.front(), beta.back(), fine_grid_points);
  const auto a = method == Interpolation::kLinear ? linear_interpolate(beta, rho0, fine)
                                                  : cubic_spline_interpolate(beta, rho0, fine);
  const auto b = method == Interpolation::kLinear ? linear_interpolate(beta, rhol, fine)
                                                  : cubic_spline_interpolate(beta, rhol, fine);
  std::vector<double> gap(fine.size());
  for (std::size_t k = 0; k < gap.size(); ++k) gap[k] = std::abs(a[k] - b[k]);

  OverlapReport report;
  report.s_delta = simpson_integrate(gap, fine).value;
  report.f_overlap = 1.0 / (1.0 + report.s_delta);
  report.fine_grid_points = fine_grid_points;
  return report;
}

double mean_absolute_error(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::kUsage, "MAE of sequences of different length");
  require(!a.empty(), ErrorKind::kUsage, "MAE of empty sequences");
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) total += std::abs(a[k] - b[k]);
  return total / static_cast<double>(a.size());
}

}  // namespace netshrink
