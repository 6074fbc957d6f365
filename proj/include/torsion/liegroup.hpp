#ifndef TORSION_LIEGROUP_HPP
#define TORSION_LIEGROUP_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace torsion {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Raised for group families or sizes outside the supported range.
class UnsupportedGroup : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine is handed data it cannot process
/// (singular matrix, defective eigendecomposition, shape mismatch).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Family { U, SU, SO, SL2R };

std::string to_string(Family f);
/// Parses "U", "SU", "SO" or "SL2R" (case-insensitive); throws UnsupportedGroup otherwise.
Family parse_family(const std::string& name);

/// Tolerances shared by the verifiers. All Frobenius-norm based.
struct Tolerances {
  double membership = 1e-9;
  double rank = 1e-9;       // relative to the largest singular value
  double subspace = 1e-7;   // max principal angle, radians
};

/// A classical matrix group: U(m), SU(m), SO(m) or SL(2,R).
class GroupSpec {
public:
  /// Throws UnsupportedGroup unless U/SU with 1 <= m <= 5 (SU needs m >= 2),
  /// SO with 2 <= m <= 5, or SL2R with m = 2.
  GroupSpec(Family family, int size);

  static GroupSpec sl2r() { return {Family::SL2R, 2}; }

  Family family() const { return family_; }
  int size() const { return size_; }
  bool is_complex() const { return family_ == Family::U || family_ == Family::SU; }
  bool is_compact() const { return family_ != Family::SL2R; }
  int algebra_dim() const;
  int torus_rank() const;
  std::string name() const;  // e.g. "SU(3)"

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

private:
  Family family_;
  int size_;
};

struct GroupElement {
  GroupSpec spec;
  CMatrix matrix;
};

/// Coordinates of a Lie algebra element in the basis returned by algebra_basis().
struct AlgebraElement {
  RVector coords;
};

/// Fixed basis of the Lie algebra with the Gram matrix of <X,Y> = Re tr(X^* Y).
struct AlgebraBasis {
  GroupSpec spec;
  std::vector<CMatrix> matrices;
  RMatrix gram;

  int dim() const { return static_cast<int>(matrices.size()); }
  /// sum_k coords(k) * B_k
  CMatrix to_matrix(const AlgebraElement& x) const;
  /// Coordinates of a matrix already lying in the algebra (least squares via gram).
  AlgebraElement coordinates(const CMatrix& x) const;
};

double trace_inner(const CMatrix& a, const CMatrix& b);

/// Orthonormal, deterministic basis of the Lie algebra of `spec`.
AlgebraBasis algebra_basis(const GroupSpec& spec);

/// Frobenius residual of the algebra constraint for the family.
double algebra_constraint_residual(const GroupSpec& spec, const CMatrix& x);

/// Frobenius membership residual: unitarity/orthogonality plus determinant defect.
double membership_residual(const GroupSpec& spec, const CMatrix& g);

GroupElement identity(const GroupSpec& spec);

/// Matrix exponential by scaling and squaring with a diagonal [8/8] Pade approximant.
CMatrix expm(const CMatrix& a);

GroupElement exp_element(const GroupSpec& spec, const AlgebraElement& x);

/// Matrix of Ad(g): X -> g X g^{-1} in the fixed algebra basis.
RMatrix adjoint_matrix(const GroupElement& g);

/// Inverse of a group element; uses the adjoint for compact families.
CMatrix group_inverse(const GroupElement& g);

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement conjugate(const GroupElement& h, const GroupElement& g);  // h g h^{-1}
CMatrix matrix_power(const CMatrix& g, int k);

/// Polar factors g = k * exp(p) of an SL(2,R) element.
struct CartanFactors {
  GroupElement k;  // in SO(2)
  RMatrix p;       // symmetric, traceless
};

/// Closed-form 2x2 polar decomposition. Throws NumericalError when det g is not ~1
/// or g is numerically singular.
CartanFactors cartan_decompose(const GroupElement& g);

/// Smallest d in [1, n_max] with ||g^d - I|| <= tol, if any.
std::optional<int> element_order(const GroupElement& g, int n_max, double tol = 1e-9);

/// Deterministic random element: Haar-style QR for compact families,
/// det-normalised Gaussian for SL(2,R).
GroupElement random_element(const GroupSpec& spec, std::uint64_t seed);

/// Random algebra element with i.i.d. standard normal coordinates.
AlgebraElement random_algebra_element(const GroupSpec& spec, std::uint64_t seed);

/// Generator used by every seeded routine; `stream` separates independent draws
/// that share a seed.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// 2x2 rotation by `angle` radians, counter-clockwise.
RMatrix rotation2(double angle);

}  // namespace torsion

#endif  // TORSION_LIEGROUP_HPP
