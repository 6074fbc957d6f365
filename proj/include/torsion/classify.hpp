#ifndef TORSION_CLASSIFY_HPP
#define TORSION_CLASSIFY_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsion/liegroup.hpp"
#include "torsion/report.hpp"
#include "torsion/sweep.hpp"

namespace torsion {

/// Raised when a matrix is not (numerically) of order dividing the requested n.
class NotTorsion : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reduced fraction in [0, 1): an eigenphase 2*pi*num/den.
/// Ordering is lexicographic on (num, den).
struct Fraction {
  int num = 0;
  int den = 1;

  /// (k mod n)/n in lowest terms; n >= 1.
  static Fraction make(long long k, long long n);

  double value() const { return static_cast<double>(num) / den; }
  Fraction negated() const { return make(-num, den); }  // 1 - x, or 0
  std::string str() const;

  friend auto operator<=>(const Fraction&, const Fraction&) = default;
};

/// A point of the maximal torus all of whose phases are rational.
/// U/SU: one phase per diagonal entry (SU phases sum to an integer).
/// SO(m): one angle per 2x2 rotation block. SL(2,R): the SO(2) angle.
struct TorusTorsionPoint {
  GroupSpec spec;
  std::vector<Fraction> phases;
};

/// Diagonal / block-rotation matrix of the point, as an element of its group.
GroupElement realize(const TorusTorsionPoint& point);

/// lcm of the phase denominators: the exact order of realize(point).
int exact_order(const TorusTorsionPoint& point);

/// Weyl-orbit normal form. `parity` is only set for SO(2r), r >= 2, when no
/// block angle is 0 or 1/2 (the even-sign-change Weyl group splits the orbit).
struct CanonicalInvariant {
  std::vector<Fraction> phases;
  std::optional<int> parity;

  /// "k1/n1,k2/n2,...[,even|odd]"
  std::string str() const;

  friend auto operator<=>(const CanonicalInvariant&, const CanonicalInvariant&) = default;
};

std::vector<TorusTorsionPoint> enumerate_torsion(const GroupSpec& spec, int n);

CanonicalInvariant canonicalize(const TorusTorsionPoint& point);

/// The torus point that realises an invariant (first block negated for odd parity).
TorusTorsionPoint canonical_point(const GroupSpec& spec, const CanonicalInvariant& inv);

struct ComponentDescriptor {
  GroupSpec spec;
  int n = 1;
  CanonicalInvariant canonical;
  GroupElement representative;
  int dimension = 0;
  int exact_order = 1;
  int torus_points = 0;  // size of the Weyl orbit inside E_n(T)
};

/// One descriptor per Weyl orbit of E_n(T), sorted by invariant. SL(2,R) goes
/// through its maximal compact SO(2). Dimensions are rank(I - Ad(rep)).
std::vector<ComponentDescriptor> catalog_components(const GroupSpec& spec, int n, const Tolerances& tol = {},
                                                    Execution exec = Execution::serial());

int count_components(const GroupSpec& spec, int n);

/// Invariant sets: catalog(n) and catalog(m) intersect in exactly catalog(gcd(n, m)).
VerificationReport gcd_intersection_check(const GroupSpec& spec, int n, int m);

/// g = conjugator * torus(angles) * conjugator^{-1}; the conjugator is unitary for
/// U/SU and in SO(m) for SO. Angles in (-pi, pi]; one per eigenvalue (U/SU) or block (SO).
struct TorusFrame {
  CMatrix conjugator;
  std::vector<double> angles;
};

/// Throws NumericalError for non-compact groups or defective decompositions.
TorusFrame torus_frame(const GroupElement& g);

/// Matrix of the torus element with the given angles (radians).
CMatrix torus_matrix(const GroupSpec& spec, const std::vector<double>& angles);

/// Canonical invariant of an arbitrary element with g^n = e. Throws NotTorsion
/// when an eigenphase is not within 1e-6/n of a multiple of 1/n.
CanonicalInvariant invariant_of(const GroupElement& g, int n);

/// Conjugator Q (in U(m) or SO(m)) with g = Q realize(canonical_point(inv)) Q^{-1}.
struct AlignedFrame {
  CanonicalInvariant invariant;
  CMatrix conjugator;
};
AlignedFrame aligned_frame(const GroupElement& g, int n);

/// Rotation sense of an elliptic SL(2,R) element: sign det[Re v, Im v] for the
/// eigenvector v of the eigenvalue with positive imaginary part; 0 for +-I.
/// Throws NotTorsion for hyperbolic or parabolic elements.
int sl2_orientation(const GroupElement& g, double tol = 1e-9);

struct TorsionSample {
  TorusTorsionPoint point;
  GroupElement element;  // h * realize(point) * h^{-1}
};

/// Uniform torus torsion point of order dividing n, conjugated by a random element.
TorsionSample random_torsion_element(const GroupSpec& spec, int n, std::uint64_t seed);

struct TorsionApproximant {
  GroupElement element;
  TorusTorsionPoint point;  // phases with denominator dividing N, in the frame of g
  double distance = 0.0;    // Frobenius
  double bound = 0.0;       // pi * sqrt(rank) * distortion / N
};

/// Rounds each eigenphase of g to a multiple of 1/N (largest-remainder rounding for SU
/// so the determinant stays 1). The result has order dividing N.
TorsionApproximant nearest_torsion_approximant(const GroupElement& g, int N);

/// Per-family constant c with distance <= c / N.
double density_constant(const GroupSpec& spec);

/// Samples g = h R(2 pi k/n) h^{-1} in SL(2,R) and clusters by (trace, orientation).
/// Passes iff exactly n classes appear and every sample's class maps back to its k.
VerificationReport sl2_component_census(int n, std::size_t samples, std::uint64_t seed,
                                        Execution exec = Execution::parallel());

/// Samples random conjugates of random torus torsion points and clusters them by
/// invariant_of; passes iff the cluster set equals the catalog's invariant set.
VerificationReport cluster_census(const GroupSpec& spec, int n, std::size_t samples, std::uint64_t seed,
                                  Execution exec = Execution::parallel());

/// Catalog export schemas.
std::string catalog_csv(const std::vector<ComponentDescriptor>& catalog);
nlohmann::json catalog_json(const std::vector<ComponentDescriptor>& catalog);
nlohmann::json matrix_json(const CMatrix& m, bool complex_entries);

}  // namespace torsion

#endif  // TORSION_CLASSIFY_HPP
