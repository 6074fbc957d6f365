#include "torsion/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "torsion/liegroup.hpp"

namespace torsion {

double surface_value(double x, double y, double z) {
  const double r2 = y * y + z * z;
  const double x2 = x * x;
  return r2 * r2 - 4.0 * x2 * x2 * z * z;
}

std::array<double, 3> surface_gradient(double x, double y, double z) {
  const double r2 = y * y + z * z;
  const double x3 = x * x * x;
  return {-16.0 * x3 * z * z, 4.0 * y * r2, 4.0 * z * r2 - 8.0 * x3 * x * z};
}

double gradient_norm(const SurfacePoint& p) {
  const auto g = surface_gradient(p.x, p.y, p.z);
  return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

SurfacePoint surface_point(double a, double phi, int branch) {
  const double a2 = a * a;
  SurfacePoint p{a, a2 * std::sin(phi), (branch >= 0 ? 1.0 : -1.0) * a2 * (1.0 + std::cos(phi)), 0.0};
  p.residual = std::abs(surface_value(p.x, p.y, p.z));
  return p;
}

std::vector<SurfacePoint> sample_surface(double a_min, double a_max, std::size_t count, std::uint64_t seed) {
  if (!(a_min >= 0.0) || !(a_max > 0.0) || a_min > a_max) {
    throw std::invalid_argument("sample_surface: need 0 <= a_min <= a_max and a_max > 0");
  }
  if (count < 1) throw std::invalid_argument("sample_surface: count must be >= 1");
  auto rng = make_rng(seed, 5);
  std::uniform_real_distribution<double> a_dist(a_min, a_max);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution branch_dist(0.5);
  std::vector<SurfacePoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = a_dist(rng);
    const double phi = phi_dist(rng);
    out.push_back(surface_point(a, phi, branch_dist(rng) ? 1 : -1));
  }
  return out;
}

VerificationReport tangent_cone_bound_check(std::span<const SurfacePoint> points, Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  double worst_excess = -std::numeric_limits<double>::infinity();
  long long violations = 0;
  auto excess_at = [&](std::ptrdiff_t i) {
    const SurfacePoint& p = points[static_cast<std::size_t>(i)];
    return std::hypot(p.y, p.z) - 2.0 * p.x * p.x;
  };
  if (exec.mode == Execution::Mode::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double e = excess_at(i);
      worst_excess = std::max(worst_excess, e);
      violations += e > 1e-9;
    }
  } else {
    const int threads = exec.jobs > 0 ? exec.jobs : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) reduction(max : worst_excess) reduction(+ : violations)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double e = excess_at(i);
      worst_excess = std::max(worst_excess, e);
      violations += e > 1e-9;
    }
  }
  TrialRecord t;
  t.inputs_digest = digest(std::to_string(points.size()));
  t.status = violations == 0 ? Status::pass : Status::fail;
  t.residual = std::max(0.0, worst_excess);
  t.metrics = {{"points", static_cast<double>(points.size())},
               {"violations", static_cast<double>(violations)},
               {"max_excess", n ? worst_excess : 0.0}};
  return VerificationReport::single("tangent_cone_bound", std::move(t));
}

VerificationReport singular_locus_scan(std::span<const SurfacePoint> axis_points,
                                       std::span<const SurfacePoint> circle_points, double tol_grad, double a_min) {
  double max_axis = 0.0;
  int axis_bad = 0;
  for (const auto& p : axis_points) {
    const double g = gradient_norm(p);
    max_axis = std::max(max_axis, g);
    axis_bad += g > tol_grad;
  }
  double min_circle = std::numeric_limits<double>::infinity();
  int circle_bad = 0;
  int checked = 0;
  int excluded = 0;
  for (const auto& p : circle_points) {
    // near the tangent point the gradient degenerates continuously
    if (std::abs(p.z) < p.x * p.x / 100.0 || std::abs(p.x) < a_min) {
      ++excluded;
      continue;
    }
    ++checked;
    const double g = gradient_norm(p);
    min_circle = std::min(min_circle, g);
    circle_bad += !(g > tol_grad);
  }
  TrialRecord t;
  t.inputs_digest = digest(std::to_string(axis_points.size()) + ":" + std::to_string(circle_points.size()));
  t.status = axis_bad == 0 && circle_bad == 0 ? Status::pass : Status::fail;
  t.residual = max_axis;
  t.metrics = {{"axis_points", static_cast<double>(axis_points.size())},
               {"max_axis_gradient", max_axis},
               {"circle_points_checked", checked},
               {"circle_points_excluded", excluded},
               {"min_circle_gradient", checked ? min_circle : 0.0},
               {"axis_failures", axis_bad},
               {"circle_failures", circle_bad}};
  return VerificationReport::single("singular_locus", std::move(t));
}

double branch_separation(double a, int samples, double exclusion) {
  std::vector<SurfacePoint> upper, lower;
  for (int i = 0; i < samples; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / samples;
    if (std::abs(phi - std::numbers::pi) < exclusion) continue;
    upper.push_back(surface_point(a, phi, 1));
    lower.push_back(surface_point(a, phi, -1));
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : upper)
    for (const auto& q : lower) best = std::min(best, std::hypot(p.x - q.x, p.y - q.y, p.z - q.z));
  return best;
}

std::string point_cloud_csv(std::span<const SurfacePoint> points) {
  std::ostringstream out;
  out.precision(17);
  out << "x,y,z,residual,grad_norm\n";
  for (const auto& p : points) out << p.x << ',' << p.y << ',' << p.z << ',' << p.residual << ',' << gradient_norm(p) << '\n';
  return out.str();
}

}  // namespace torsion
