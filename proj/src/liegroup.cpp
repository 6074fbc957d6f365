#include "torsion/liegroup.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

namespace torsion {

namespace {

constexpr Complex kI{0.0, 1.0};

CMatrix unit(int m, int r, int c) {
  CMatrix e = CMatrix::Zero(m, m);
  e(r, c) = 1.0;
  return e;
}

void append_offdiagonal(std::vector<CMatrix>& out, int m, bool with_imaginary) {
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      out.push_back(s * (unit(m, j, k) - unit(m, k, j)));
      if (with_imaginary) out.push_back(s * kI * (unit(m, j, k) + unit(m, k, j)));
    }
  }
}

void drop_imaginary(CMatrix& g) { g = g.real().cast<Complex>(); }

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::U: return "U";
    case Family::SU: return "SU";
    case Family::SO: return "SO";
    case Family::SL2R: return "SL2R";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "U") return Family::U;
  if (up == "SU") return Family::SU;
  if (up == "SO") return Family::SO;
  if (up == "SL2R" || up == "SL2") return Family::SL2R;
  throw UnsupportedGroup("unsupported group family '" + name + "' (expected U, SU, SO or SL2R)");
}

GroupSpec::GroupSpec(Family family, int size) : family_(family), size_(size) {
  bool ok = false;
  switch (family) {
    case Family::U: ok = size >= 1 && size <= 5; break;
    case Family::SU: ok = size >= 2 && size <= 5; break;
    case Family::SO: ok = size >= 2 && size <= 5; break;
    case Family::SL2R: ok = size == 2; break;
  }
  if (!ok) {
    throw UnsupportedGroup("unsupported group " + to_string(family) + "(" + std::to_string(size) +
                           "): supported are U(1..5), SU(2..5), SO(2..5), SL2R(2)");
  }
}

int GroupSpec::algebra_dim() const {
  const int m = size_;
  switch (family_) {
    case Family::U: return m * m;
    case Family::SU: return m * m - 1;
    case Family::SO: return m * (m - 1) / 2;
    case Family::SL2R: return 3;
  }
  return 0;
}

int GroupSpec::torus_rank() const {
  switch (family_) {
    case Family::U: return size_;
    case Family::SU: return size_ - 1;
    case Family::SO: return size_ / 2;
    case Family::SL2R: return 1;
  }
  return 0;
}

std::string GroupSpec::name() const {
  if (family_ == Family::SL2R) return "SL(2,R)";
  return to_string(family_) + "(" + std::to_string(size_) + ")";
}

double trace_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

CMatrix AlgebraBasis::to_matrix(const AlgebraElement& x) const {
  if (x.coords.size() != dim()) throw NumericalError("algebra element has wrong length");
  const int m = spec.size();
  CMatrix out = CMatrix::Zero(m, m);
  for (int k = 0; k < dim(); ++k) out += x.coords(k) * matrices[k];
  return out;
}

AlgebraElement AlgebraBasis::coordinates(const CMatrix& x) const {
  RVector rhs(dim());
  for (int k = 0; k < dim(); ++k) rhs(k) = trace_inner(matrices[k], x);
  return {gram.ldlt().solve(rhs)};
}

AlgebraBasis algebra_basis(const GroupSpec& spec) {
  const int m = spec.size();
  std::vector<CMatrix> mats;
  switch (spec.family()) {
    case Family::U:
      for (int j = 0; j < m; ++j) mats.push_back(kI * unit(m, j, j));
      append_offdiagonal(mats, m, true);
      break;
    case Family::SU:
      // generalised Gell-Mann diagonal generators
      for (int l = 1; l < m; ++l) {
        CMatrix h = CMatrix::Zero(m, m);
        for (int j = 0; j < l; ++j) h(j, j) = 1.0;
        h(l, l) = -static_cast<double>(l);
        mats.push_back(kI * h / std::sqrt(static_cast<double>(l * (l + 1))));
      }
      append_offdiagonal(mats, m, true);
      break;
    case Family::SO:
      append_offdiagonal(mats, m, false);
      break;
    case Family::SL2R: {
      const double s = 1.0 / std::sqrt(2.0);
      mats.push_back(s * (unit(2, 0, 0) - unit(2, 1, 1)));
      mats.push_back(s * (unit(2, 0, 1) + unit(2, 1, 0)));
      mats.push_back(s * (unit(2, 0, 1) - unit(2, 1, 0)));
      break;
    }
  }
  const int d = static_cast<int>(mats.size());
  RMatrix gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gram(a, b) = trace_inner(mats[a], mats[b]);
  return {spec, std::move(mats), std::move(gram)};
}

double algebra_constraint_residual(const GroupSpec& spec, const CMatrix& x) {
  switch (spec.family()) {
    case Family::U: return (x + x.adjoint()).norm();
    case Family::SU: return (x + x.adjoint()).norm() + std::abs(x.trace());
    case Family::SO: return (x + x.transpose()).norm() + x.imag().norm();
    case Family::SL2R: return std::abs(x.trace()) + x.imag().norm();
  }
  return 0.0;
}

double membership_residual(const GroupSpec& spec, const CMatrix& g) {
  const int m = spec.size();
  if (g.rows() != m || g.cols() != m) return std::numeric_limits<double>::infinity();
  const CMatrix id = CMatrix::Identity(m, m);
  switch (spec.family()) {
    case Family::U: return (g.adjoint() * g - id).norm();
    case Family::SU: return (g.adjoint() * g - id).norm() + std::abs(g.determinant() - 1.0);
    case Family::SO:
      return (g.transpose() * g - id).norm() + std::abs(g.determinant() - 1.0) + g.imag().norm();
    case Family::SL2R: return std::abs(g.determinant() - 1.0) + g.imag().norm();
  }
  return 0.0;
}

GroupElement identity(const GroupSpec& spec) {
  return {spec, CMatrix::Identity(spec.size(), spec.size())};
}

CMatrix expm(const CMatrix& a) {
  constexpr int q = 8;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix x = a / std::ldexp(1.0, squarings);

  // c_k = (2q-k)! q! / ((2q)! k! (q-k)!), built by the recurrence c_k = c_{k-1} (q-k+1) / (k (2q-k+1))
  const int m = static_cast<int>(a.rows());
  CMatrix num = CMatrix::Identity(m, m);
  CMatrix den = CMatrix::Identity(m, m);
  CMatrix power = CMatrix::Identity(m, m);
  double c = 1.0;
  for (int k = 1; k <= q; ++k) {
    c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    power = power * x;
    num += c * power;
    den += ((k % 2 == 0) ? c : -c) * power;
  }
  CMatrix result = den.partialPivLu().solve(num);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

GroupElement exp_element(const GroupSpec& spec, const AlgebraElement& x) {
  const AlgebraBasis basis = algebra_basis(spec);
  CMatrix g = expm(basis.to_matrix(x));
  if (!spec.is_complex()) drop_imaginary(g);
  return {spec, std::move(g)};
}

CMatrix group_inverse(const GroupElement& g) {
  if (g.spec.is_compact()) return g.matrix.adjoint();
  const Complex det = g.matrix.determinant();
  if (std::abs(det) < 1e-12) throw NumericalError("group element is numerically singular");
  return g.matrix.inverse();
}

RMatrix adjoint_matrix(const GroupElement& g) {
  const AlgebraBasis basis = algebra_basis(g.spec);
  const CMatrix inv = group_inverse(g);
  const int d = basis.dim();
  RMatrix ad(d, d);
  const auto solver = basis.gram.ldlt();
  for (int j = 0; j < d; ++j) {
    const CMatrix y = g.matrix * basis.matrices[j] * inv;
    RVector rhs(d);
    for (int k = 0; k < d; ++k) rhs(k) = trace_inner(basis.matrices[k], y);
    ad.col(j) = solver.solve(rhs);
  }
  return ad;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  return {a.spec, a.matrix * b.matrix};
}

GroupElement conjugate(const GroupElement& h, const GroupElement& g) {
  return {g.spec, h.matrix * g.matrix * group_inverse(h)};
}

CMatrix matrix_power(const CMatrix& g, int k) {
  CMatrix out = CMatrix::Identity(g.rows(), g.cols());
  for (int i = 0; i < k; ++i) out = out * g;
  return out;
}

CartanFactors cartan_decompose(const GroupElement& g) {
  if (g.spec.family() != Family::SL2R) throw NumericalError("cartan_decompose expects an SL(2,R) element");
  const RMatrix m = g.matrix.real();
  const double det = m.determinant();
  if (!(std::abs(det) > 1e-12)) throw NumericalError("cartan_decompose: matrix is numerically singular");
  if (std::abs(det - 1.0) > 1e-8 * std::max(1.0, m.squaredNorm())) {
    throw NumericalError("cartan_decompose: determinant is not 1");
  }
  // M + cof(M) is a multiple of the orthogonal polar factor for 2x2 with det > 0
  const double u = m(0, 0) + m(1, 1);
  const double v = m(1, 0) - m(0, 1);
  const double r = std::hypot(u, v);
  if (r < 1e-300) throw NumericalError("cartan_decompose: degenerate polar factor");
  RMatrix k(2, 2);
  k << u / r, -v / r, v / r, u / r;

  RMatrix s = k.transpose() * m;
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(s);
  const RVector lambda = eig.eigenvalues();
  if (lambda.minCoeff() <= 0.0) throw NumericalError("cartan_decompose: symmetric factor not positive");
  const RMatrix p =
      eig.eigenvectors() * lambda.array().log().matrix().asDiagonal() * eig.eigenvectors().transpose();
  return {{GroupSpec(Family::SO, 2), k.cast<Complex>()}, 0.5 * (p + p.transpose())};
}

std::optional<int> element_order(const GroupElement& g, int n_max, double tol) {
  const int m = g.spec.size();
  const CMatrix id = CMatrix::Identity(m, m);
  CMatrix power = id;
  for (int d = 1; d <= n_max; ++d) {
    power = power * g.matrix;
    if ((power - id).norm() <= tol) return d;
  }
  return std::nullopt;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x746f7273u};
  return std::mt19937_64(seq);
}

GroupElement random_element(const GroupSpec& spec, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int m = spec.size();

  if (spec.family() == Family::SL2R) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      RMatrix a(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = normal(rng);
      const double det = a.determinant();
      if (std::abs(det) < 1e-6) continue;
      if (det < 0) a.row(0) *= -1.0;
      a /= std::sqrt(std::abs(det));
      return {spec, a.cast<Complex>()};
    }
    throw NumericalError("random_element: too many rejected SL(2,R) draws");
  }

  CMatrix a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double re = normal(rng);
      const double im = spec.is_complex() ? normal(rng) : 0.0;
      a(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase ambiguity of QR so the distribution is Haar
  for (int j = 0; j < m; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  switch (spec.family()) {
    case Family::U: break;
    case Family::SU: {
      const Complex det = q.determinant();
      q *= std::exp(Complex(0.0, -std::arg(det) / m));
      break;
    }
    case Family::SO:
      drop_imaginary(q);
      if (q.determinant().real() < 0) q.col(0) *= -1.0;
      break;
    case Family::SL2R: break;
  }
  return {spec, std::move(q)};
}

AlgebraElement random_algebra_element(const GroupSpec& spec, std::uint64_t seed) {
  auto rng = make_rng(seed, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  RVector x(spec.algebra_dim());
  for (int k = 0; k < x.size(); ++k) x(k) = normal(rng);
  return {x};
}

RMatrix rotation2(double angle) {
  RMatrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

}  // namespace torsion
