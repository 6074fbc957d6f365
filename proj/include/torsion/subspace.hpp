#ifndef TORSION_SUBSPACE_HPP
#define TORSION_SUBSPACE_HPP

#include "torsion/liegroup.hpp"
#include "torsion/report.hpp"

namespace torsion {

/// Orthonormal basis (columns of `vectors`) of a subspace of R^d. May be empty.
struct SubspaceBasis {
  int ambient_dim = 0;
  RMatrix vectors;  // ambient_dim x k
  double tol = 0.0;

  int dim() const { return static_cast<int>(vectors.cols()); }
  bool empty() const { return dim() == 0; }
};

/// max(1, ||Ad||_2). I - Ad can be pure roundoff (g = 1), so rank thresholds for
/// matrices built from Ad are floored at this scale.
double adjoint_scale(const RMatrix& ad);

/// Column space, keeping singular directions with sigma > tol * max(sigma_max, scale).
SubspaceBasis image_basis(const RMatrix& a, double tol = 1e-9, double scale = 0.0);

/// Null space, keeping right singular directions with sigma <= tol * max(sigma_max, scale).
/// The zero matrix has the whole space as kernel.
SubspaceBasis kernel_basis(const RMatrix& a, double tol = 1e-9, double scale = 0.0);

/// Principal angles between the spans, ascending; min(dim P, dim Q) of them.
/// Small angles come from sines and large ones from cosines so both ends are accurate.
RVector principal_angles(const SubspaceBasis& p, const SubspaceBasis& q);

struct SubspaceComparison {
  bool equal = false;
  bool dimension_mismatch = false;
  double residual = 0.0;  // max principal angle; pi/2 on dimension mismatch
};

/// Throws NumericalError on ambient dimension mismatch.
SubspaceComparison subspace_equal(const SubspaceBasis& p, const SubspaceBasis& q, double angle_tol = 1e-7);

/// sum_{i<n} A^i
RMatrix power_sum(const RMatrix& a, int n);

/// ker(1 + Ad(g) + ... + Ad(g)^{n-1}) == Im(1 - Ad(g)) for g of order dividing n.
/// Rejected (not failed) when g^n != e.
VerificationReport verify_kernel_image_identity(const GroupElement& g, int n, const Tolerances& tol = {});

/// ker(1 - Ad(g)) and ker(sum Ad(g)^i) meet only in 0.
VerificationReport verify_zero_intersection(const GroupElement& g, int n, const Tolerances& tol = {});

/// ||g^n - I||
double power_residual(const GroupElement& g, int n);

}  // namespace torsion

#endif  // TORSION_SUBSPACE_HPP
