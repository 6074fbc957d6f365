#ifndef TORSION_CURVES_HPP
#define TORSION_CURVES_HPP

#include <string>
#include <vector>

#include "torsion/classify.hpp"
#include "torsion/liegroup.hpp"
#include "torsion/report.hpp"

namespace torsion {

/// Raised by connect_within_component when the endpoints lie in different components.
class DifferentComponents : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Conjugation curve c(t) = exp(tX) g exp(-tX) sampled at shrinking step sizes.
struct CurveSample {
  std::vector<double> times;  // strictly decreasing
  std::vector<GroupElement> points;
  GroupElement base;
};

CurveSample conjugation_curve(const GroupElement& g, const AlgebraElement& x, const std::vector<double>& steps);

/// Finite differences of the conjugation curve against D = X g - g X, the right
/// translate of (1 - Ad(g)) X. Passes when the error is O(h): consecutive error
/// ratios within a factor 3 of the step ratios, or all errors at roundoff level.
/// Throws std::invalid_argument when fewer than two steps are given.
VerificationReport tangent_space_check(const GroupElement& g, const AlgebraElement& x,
                                       const std::vector<double>& steps = {1e-2, 1e-3, 1e-4});

/// ||(sum_i Ad(g)^i)(1 - Ad(g)) X|| <= 1e-9. Rejected when g^n != e.
VerificationReport curve_kernel_check(const GroupElement& g, int n, const AlgebraElement& x,
                                      const Tolerances& tol = {});

/// With gamma(t) = exp(tX) g exp(-tX) and alpha(t) = gamma(t) g^{-1}, checks that
/// alpha (g alpha g^-1) ... (g^{n-1} alpha g^{-(n-1)}) = e within n * tol.membership.
VerificationReport product_identity_check(const GroupElement& g, int n, const AlgebraElement& x, double t,
                                          const Tolerances& tol = {});

/// Waypoints g(s) = h(s) g1 h(s)^{-1}, s in [0, 1], from g1 to g2.
struct ComponentPath {
  CanonicalInvariant invariant;
  std::vector<double> s;
  std::vector<GroupElement> points;
  double endpoint_residual = 0.0;  // ||g(1) - g2||
};

/// Throws DifferentComponents when the invariants of g1 and g2 differ.
ComponentPath connect_within_component(const GroupElement& g1, const GroupElement& g2, int n, int waypoints = 20);

/// Real or complex logarithm L of a compact-group element with exp(L) = h and
/// exp(sL) in the group (U(m) for U/SU, SO(m) for SO). Eigenvalue -1 is sent to
/// angle pi, paired into a rotation plane for SO.
CMatrix skew_log(const GroupSpec& spec, const CMatrix& h);

/// Checks every waypoint: g(s)^n = e within n * tol and invariant_of(g(s)) constant.
VerificationReport path_check(const ComponentPath& path, int n, const Tolerances& tol = {});

std::string path_csv(const ComponentPath& path);

}  // namespace torsion

#endif  // TORSION_CURVES_HPP
