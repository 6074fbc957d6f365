#include "torsion/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torsion/subspace.hpp"

namespace torsion {

namespace {

std::vector<double> element_bytes(const GroupElement& g, const AlgebraElement& x, double extra) {
  std::vector<double> v{extra};
  for (Eigen::Index i = 0; i < g.matrix.size(); ++i) {
    v.push_back(g.matrix.data()[i].real());
    v.push_back(g.matrix.data()[i].imag());
  }
  for (Eigen::Index i = 0; i < x.coords.size(); ++i) v.push_back(x.coords(i));
  return v;
}

TrialRecord rejected(const GroupElement& g, const AlgebraElement& x, int n, double residual) {
  TrialRecord t;
  t.inputs_digest = digest_doubles(element_bytes(g, x, n));
  t.status = Status::rejected;
  t.metrics["power_residual"] = residual;
  t.note = "precondition g^n = e violated";
  return t;
}

CMatrix keep_field(const GroupSpec& spec, CMatrix m) {
  if (!spec.is_complex()) m = m.real().cast<Complex>();
  return m;
}

}  // namespace

CurveSample conjugation_curve(const GroupElement& g, const AlgebraElement& x, const std::vector<double>& steps) {
  const CMatrix xm = algebra_basis(g.spec).to_matrix(x);
  CurveSample c{steps, {}, g};
  for (double h : steps) {
    c.points.push_back({g.spec, keep_field(g.spec, expm(h * xm) * g.matrix * expm(-h * xm))});
  }
  return c;
}

VerificationReport tangent_space_check(const GroupElement& g, const AlgebraElement& x, const std::vector<double>& steps) {
  if (steps.size() < 2) throw std::invalid_argument("tangent_space_check: need at least two step sizes");
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i] < steps[i - 1]) || steps[i] <= 0) {
      throw std::invalid_argument("tangent_space_check: steps must be positive and strictly decreasing");
    }
  }
  const CMatrix xm = algebra_basis(g.spec).to_matrix(x);
  // right translate of (1 - Ad(g)) X: (X - g X g^{-1}) g
  const CMatrix tangent = xm * g.matrix - g.matrix * xm;
  const CurveSample curve = conjugation_curve(g, x, steps);

  std::vector<double> errors;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    errors.push_back(((curve.points[i].matrix - g.matrix) / steps[i] - tangent).norm());
  }
  const double worst_error = *std::max_element(errors.begin(), errors.end());
  double constant = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) constant = std::max(constant, errors[i] / steps[i]);

  TrialRecord t;
  t.inputs_digest = digest_doubles(element_bytes(g, x, static_cast<double>(steps.size())));
  t.residual = constant;
  t.metrics = {{"tangent_norm", tangent.norm()}, {"error_constant", constant}, {"max_error", worst_error}};
  for (std::size_t i = 0; i < errors.size(); ++i) t.metrics["error_" + std::to_string(i)] = errors[i];

  if (worst_error <= 1e-9) {
    t.status = Status::pass;
    t.note = "errors at roundoff level";
  } else {
    double worst_ratio = 1.0;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      const double quality = (errors[i] / errors[i + 1]) / (steps[i] / steps[i + 1]);
      const double spread = quality >= 1.0 ? quality : 1.0 / quality;
      worst_ratio = std::max(worst_ratio, std::isfinite(spread) ? spread : 1e300);
    }
    t.metrics["worst_ratio_factor"] = worst_ratio;
    t.status = worst_ratio <= 3.0 ? Status::pass : Status::fail;
  }
  return VerificationReport::single("tangent_space", std::move(t));
}

VerificationReport curve_kernel_check(const GroupElement& g, int n, const AlgebraElement& x, const Tolerances& tol) {
  const double pres = power_residual(g, n);
  if (n < 1 || pres > n * tol.membership) return VerificationReport::single("curve_kernel", rejected(g, x, n, pres));
  const RMatrix ad = adjoint_matrix(g);
  const RVector velocity = x.coords - ad * x.coords;  // alpha'(0) for the conjugation curve
  const double r = (power_sum(ad, n) * velocity).norm();

  TrialRecord t;
  t.inputs_digest = digest_doubles(element_bytes(g, x, n));
  t.status = r <= 1e-9 ? Status::pass : Status::fail;
  t.residual = r;
  t.metrics = {{"kernel_residual", r}, {"velocity_norm", velocity.norm()}, {"power_residual", pres}};
  return VerificationReport::single("curve_kernel", std::move(t));
}

VerificationReport product_identity_check(const GroupElement& g, int n, const AlgebraElement& x, double t_param,
                                          const Tolerances& tol) {
  const double pres = power_residual(g, n);
  if (n < 1 || pres > n * tol.membership) {
    return VerificationReport::single("product_identity", rejected(g, x, n, pres));
  }
  const CMatrix xm = algebra_basis(g.spec).to_matrix(x);
  const int m = g.spec.size();
  const CMatrix gamma = expm(t_param * xm) * g.matrix * expm(-t_param * xm);
  const CMatrix g_inv = group_inverse(g);
  const CMatrix alpha = gamma * g_inv;

  CMatrix product = CMatrix::Identity(m, m);
  CMatrix gi = CMatrix::Identity(m, m);
  CMatrix gi_inv = CMatrix::Identity(m, m);
  for (int i = 0; i < n; ++i) {
    product = product * (gi * alpha * gi_inv);
    gi = gi * g.matrix;
    gi_inv = g_inv * gi_inv;
  }
  const double r = (product - CMatrix::Identity(m, m)).norm();

  TrialRecord t;
  t.inputs_digest = digest_doubles(element_bytes(g, x, t_param));
  t.status = r <= n * tol.membership ? Status::pass : Status::fail;
  t.residual = r;
  t.metrics = {{"product_residual", r}, {"t", t_param}, {"power_residual", pres}};
  return VerificationReport::single("product_identity", std::move(t));
}

CMatrix skew_log(const GroupSpec& spec, const CMatrix& h) {
  if (spec.family() == Family::SL2R) throw UnsupportedGroup("skew_log: SL(2,R) is not compact");
  const GroupSpec frame_spec = spec.is_complex() ? GroupSpec(Family::U, spec.size()) : spec;
  const TorusFrame f = torus_frame({frame_spec, h});
  const int m = spec.size();
  CMatrix generator = CMatrix::Zero(m, m);
  if (spec.is_complex()) {
    for (int j = 0; j < m; ++j) generator(j, j) = Complex(0.0, f.angles[static_cast<std::size_t>(j)]);
  } else {
    for (std::size_t j = 0; j < f.angles.size(); ++j) {
      const int b = 2 * static_cast<int>(j);
      generator(b + 1, b) = f.angles[j];
      generator(b, b + 1) = -f.angles[j];
    }
  }
  return f.conjugator * generator * f.conjugator.adjoint();
}

ComponentPath connect_within_component(const GroupElement& g1, const GroupElement& g2, int n, int waypoints) {
  if (!(g1.spec == g2.spec)) throw std::invalid_argument("connect_within_component: groups differ");
  if (waypoints < 2) throw std::invalid_argument("connect_within_component: need at least two waypoints");
  const GroupSpec& spec = g1.spec;
  const AlignedFrame a1 = aligned_frame(g1, n);
  const AlignedFrame a2 = aligned_frame(g2, n);
  if (a1.invariant != a2.invariant) {
    throw DifferentComponents("different components: " + a1.invariant.str() + " vs " + a2.invariant.str());
  }

  ComponentPath path{a1.invariant, {}, {}, 0.0};
  std::vector<CMatrix> conjugators;
  if (spec.family() == Family::SL2R) {
    // h = k exp(p); move along the rotation angle and the symmetric factor together
    const CMatrix h = a2.conjugator * a1.conjugator.inverse();
    const CartanFactors kp = cartan_decompose({spec, h});
    const double angle = std::atan2(kp.k.matrix(1, 0).real(), kp.k.matrix(0, 0).real());
    for (int j = 0; j < waypoints; ++j) {
      const double s = static_cast<double>(j) / (waypoints - 1);
      conjugators.push_back(rotation2(s * angle).cast<Complex>() * expm((s * kp.p).cast<Complex>()));
      path.s.push_back(s);
    }
  } else {
    const CMatrix h = a2.conjugator * a1.conjugator.adjoint();
    const CMatrix log_h = skew_log(spec, h);
    for (int j = 0; j < waypoints; ++j) {
      const double s = static_cast<double>(j) / (waypoints - 1);
      conjugators.push_back(expm(s * log_h));
      path.s.push_back(s);
    }
  }
  for (const auto& c : conjugators) {
    const CMatrix inv = spec.is_compact() ? CMatrix(c.adjoint()) : CMatrix(c.inverse());
    path.points.push_back({spec, keep_field(spec, c * g1.matrix * inv)});
  }
  path.endpoint_residual = (path.points.back().matrix - g2.matrix).norm();
  return path;
}

VerificationReport path_check(const ComponentPath& path, int n, const Tolerances& tol) {
  const double limit = n * tol.membership;
  VerificationReport report;
  report.check = "component_path";
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const GroupElement& p = path.points[i];
    TrialRecord t;
    t.seed = i;
    t.inputs_digest = digest(path.invariant.str() + ":" + std::to_string(i));
    const double pres = power_residual(p, n);
    const double mres = membership_residual(p.spec, p.matrix);
    std::string inv;
    try {
      inv = invariant_of(p, n).str();
    } catch (const std::exception& e) {
      inv = std::string("error: ") + e.what();
    }
    const bool ok = pres <= limit && mres <= limit && inv == path.invariant.str();
    t.status = ok ? Status::pass : Status::fail;
    t.residual = std::max(pres, mres);
    t.metrics = {{"s", path.s[i]}, {"power_residual", pres}, {"membership_residual", mres}};
    t.note = inv;
    report.trials.push_back(std::move(t));
  }
  report.finalize();
  report.details = {{"invariant", path.invariant.str()},
                    {"waypoints", path.points.size()},
                    {"endpoint_residual", path.endpoint_residual}};
  return report;
}

std::string path_csv(const ComponentPath& path) {
  std::ostringstream out;
  out.precision(17);
  out << "index,s,row,col,re,im\n";
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const CMatrix& m = path.points[i].matrix;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        out << i << ',' << path.s[i] << ',' << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
  }
  return out.str();
}

}  // namespace torsion
