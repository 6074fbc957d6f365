#ifndef TORSION_SURFACE_HPP
#define TORSION_SURFACE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "torsion/report.hpp"
#include "torsion/sweep.hpp"

namespace torsion {

// The quartic-in-(y,z) surface F(x,y,z) = (y^2 + z^2)^2 - 4 x^4 z^2 = 0. Each
// slice x = a is a pair of circles of radius a^2 touching at (a, 0, 0), and the
// whole x-axis is singular.

struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double residual = 0.0;  // |F(x, y, z)|
};

double surface_value(double x, double y, double z);
std::array<double, 3> surface_gradient(double x, double y, double z);
double gradient_norm(const SurfacePoint& p);

/// Point on the slice x = a: y = a^2 sin(phi), z = branch * a^2 (1 + cos(phi)), branch = +-1.
SurfacePoint surface_point(double a, double phi, int branch);

/// `count` points with a uniform in [a_min, a_max], phi uniform in [0, 2 pi), random branch.
/// Throws std::invalid_argument unless 0 <= a_min <= a_max, a_max > 0 and count >= 1.
std::vector<SurfacePoint> sample_surface(double a_min, double a_max, std::size_t count, std::uint64_t seed);

/// sqrt(y^2 + z^2) <= 2 x^2 + 1e-9 for every point.
VerificationReport tangent_cone_bound_check(std::span<const SurfacePoint> points,
                                            Execution exec = Execution::parallel());

/// Gradient vanishes (<= tol_grad) on the axis points and exceeds tol_grad on every
/// circle point outside the band |z| < x^2/100 with |x| >= a_min.
VerificationReport singular_locus_scan(std::span<const SurfacePoint> axis_points,
                                       std::span<const SurfacePoint> circle_points, double tol_grad,
                                       double a_min = 0.5);

/// Minimum distance between the + and - circles of one slice, excluding a
/// neighbourhood of the tangent point (|phi - pi| < exclusion).
double branch_separation(double a, int samples = 720, double exclusion = 0.5);

std::string point_cloud_csv(std::span<const SurfacePoint> points);

}  // namespace torsion

#endif  // TORSION_SURFACE_HPP
