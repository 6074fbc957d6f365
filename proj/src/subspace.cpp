#include "torsion/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace torsion {

namespace {

struct Svd {
  RMatrix u;
  RVector sigma;
  RMatrix v;
};

Svd full_svd(const RMatrix& a) {
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

int count_above(const RVector& sigma, double threshold) {
  int k = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > threshold) ++k;
  return k;
}

std::vector<double> element_bytes(const GroupElement& g, int n) {
  std::vector<double> v;
  v.reserve(2 * g.matrix.size() + 2);
  v.push_back(static_cast<double>(static_cast<int>(g.spec.family())));
  v.push_back(static_cast<double>(n));
  for (Eigen::Index i = 0; i < g.matrix.size(); ++i) {
    v.push_back(g.matrix.data()[i].real());
    v.push_back(g.matrix.data()[i].imag());
  }
  return v;
}

TrialRecord precondition_rejected(const GroupElement& g, int n, double residual) {
  TrialRecord t;
  t.inputs_digest = digest_doubles(element_bytes(g, n));
  t.status = Status::rejected;
  t.metrics["power_residual"] = residual;
  t.note = "precondition g^n = e violated";
  return t;
}

}  // namespace

double adjoint_scale(const RMatrix& ad) {
  if (ad.size() == 0) return 1.0;
  return std::max(1.0, Eigen::JacobiSVD<RMatrix>(ad).singularValues()(0));
}

SubspaceBasis image_basis(const RMatrix& a, double tol, double scale) {
  const int d = static_cast<int>(a.rows());
  if (a.size() == 0) return {d, RMatrix(d, 0), tol};
  const Svd s = full_svd(a);
  const double smax = s.sigma.size() ? s.sigma(0) : 0.0;
  if (smax == 0.0) return {d, RMatrix(d, 0), tol};
  const int k = count_above(s.sigma, tol * std::max(smax, scale));
  return {d, s.u.leftCols(k), tol};
}

SubspaceBasis kernel_basis(const RMatrix& a, double tol, double scale) {
  const int d = static_cast<int>(a.cols());
  if (a.size() == 0) return {d, RMatrix::Identity(d, d), tol};
  const Svd s = full_svd(a);
  const double smax = s.sigma.size() ? s.sigma(0) : 0.0;
  if (smax == 0.0) return {d, RMatrix::Identity(d, d), tol};
  const int k = count_above(s.sigma, tol * std::max(smax, scale));
  return {d, s.v.rightCols(d - k), tol};
}

RVector principal_angles(const SubspaceBasis& p, const SubspaceBasis& q) {
  if (p.ambient_dim != q.ambient_dim) throw NumericalError("principal_angles: ambient dimension mismatch");
  const SubspaceBasis& big = p.dim() >= q.dim() ? p : q;
  const SubspaceBasis& small = p.dim() >= q.dim() ? q : p;
  const int k = small.dim();
  if (k == 0) return RVector(0);

  const RMatrix cross = big.vectors.transpose() * small.vectors;
  const RVector cosines = Eigen::JacobiSVD<RMatrix>(cross).singularValues();  // descending
  const RMatrix residual = small.vectors - big.vectors * cross;
  RVector sines = Eigen::JacobiSVD<RMatrix>(residual).singularValues();  // descending
  std::sort(sines.data(), sines.data() + sines.size());

  RVector angles(k);
  for (int i = 0; i < k; ++i) {
    const double c = i < cosines.size() ? std::min(cosines(i), 1.0) : 0.0;
    const double s = i < sines.size() ? std::min(sines(i), 1.0) : 1.0;
    angles(i) = (c * c >= 0.5) ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.data(), angles.data() + k);
  return angles;
}

SubspaceComparison subspace_equal(const SubspaceBasis& p, const SubspaceBasis& q, double angle_tol) {
  if (p.ambient_dim != q.ambient_dim) throw NumericalError("subspace_equal: ambient dimension mismatch");
  if (p.dim() != q.dim()) return {false, true, std::numbers::pi / 2};
  const RVector angles = principal_angles(p, q);
  const double worst = angles.size() ? angles.maxCoeff() : 0.0;
  return {worst <= angle_tol, false, worst};
}

RMatrix power_sum(const RMatrix& a, int n) {
  const auto d = a.rows();
  RMatrix sum = RMatrix::Zero(d, d);
  RMatrix power = RMatrix::Identity(d, d);
  for (int i = 0; i < n; ++i) {
    sum += power;
    power = power * a;
  }
  return sum;
}

double power_residual(const GroupElement& g, int n) {
  const auto m = g.matrix.rows();
  return (matrix_power(g.matrix, n) - CMatrix::Identity(m, m)).norm();
}

VerificationReport verify_kernel_image_identity(const GroupElement& g, int n, const Tolerances& tol) {
  const double pres = power_residual(g, n);
  if (n < 1 || pres > n * tol.membership) {
    return VerificationReport::single("kernel_image_identity", precondition_rejected(g, n, pres));
  }
  const RMatrix ad = adjoint_matrix(g);
  const int d = static_cast<int>(ad.rows());
  const RMatrix one_minus = RMatrix::Identity(d, d) - ad;
  const RMatrix sum = power_sum(ad, n);
  const double scale = adjoint_scale(ad);

  const SubspaceBasis image = image_basis(one_minus, tol.rank, scale);
  const SubspaceBasis kernel = kernel_basis(sum, tol.rank, scale);
  const SubspaceComparison cmp = subspace_equal(image, kernel, tol.subspace);

  double containment = 0.0;
  for (int j = 0; j < image.dim(); ++j) containment = std::max(containment, (sum * image.vectors.col(j)).norm());

  TrialRecord t;
  t.inputs_digest = digest_doubles(element_bytes(g, n));
  t.status = cmp.equal ? Status::pass : Status::fail;
  t.residual = cmp.residual;
  t.metrics = {{"dim_image", image.dim()},
               {"dim_kernel", kernel.dim()},
               {"principal_angle", cmp.residual},
               {"containment", containment},
               {"power_residual", pres}};
  if (cmp.dimension_mismatch) t.note = "dimension mismatch";
  return VerificationReport::single("kernel_image_identity", std::move(t));
}

VerificationReport verify_zero_intersection(const GroupElement& g, int n, const Tolerances& tol) {
  const double pres = power_residual(g, n);
  if (n < 1 || pres > n * tol.membership) {
    return VerificationReport::single("zero_intersection", precondition_rejected(g, n, pres));
  }
  const RMatrix ad = adjoint_matrix(g);
  const int d = static_cast<int>(ad.rows());
  const double scale = adjoint_scale(ad);
  const SubspaceBasis fixed = kernel_basis(RMatrix::Identity(d, d) - ad, tol.rank, scale);
  const SubspaceBasis averaged = kernel_basis(power_sum(ad, n), tol.rank, scale);

  double smallest = std::numbers::pi / 2;
  int intersection = 0;
  if (!fixed.empty() && !averaged.empty()) {
    const RVector angles = principal_angles(fixed, averaged);
    smallest = angles(0);
    for (int i = 0; i < angles.size(); ++i)
      if (angles(i) < tol.subspace) ++intersection;
  }

  TrialRecord t;
  t.inputs_digest = digest_doubles(element_bytes(g, n));
  t.status = intersection == 0 ? Status::pass : Status::fail;
  // residual is how close the two kernels come to sharing a direction
  t.residual = std::cos(smallest);
  t.metrics = {{"dim_fixed_kernel", fixed.dim()},
               {"dim_sum_kernel", averaged.dim()},
               {"intersection_dim", intersection},
               {"min_principal_angle", smallest},
               {"power_residual", pres}};
  return VerificationReport::single("zero_intersection", std::move(t));
}

}  // namespace torsion
