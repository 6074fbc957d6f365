#include "torsion/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "torsion/subspace.hpp"

namespace torsion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_zero_or_half(const Fraction& f) { return f.num == 0 || f.den == 2; }
bool above_half(const Fraction& f) { return 2 * f.num > f.den; }

std::vector<double> radians(const std::vector<Fraction>& phases) {
  std::vector<double> out;
  out.reserve(phases.size());
  for (const auto& f : phases) out.push_back(kTwoPi * f.num / f.den);
  return out;
}

Fraction to_fraction(double angle, int n) {
  const double x = angle / kTwoPi * n;
  const double k = std::round(x);
  if (std::abs(x - k) > 1e-6) {
    throw NotTorsion("eigenphase " + std::to_string(angle) + " is not a multiple of 2pi/" + std::to_string(n));
  }
  return Fraction::make(static_cast<long long>(k), n);
}

/// Mixed-radix counter over [0, n)^len.
template <class Visit>
void for_each_tuple(int len, int n, Visit&& visit) {
  std::vector<int> digits(static_cast<std::size_t>(len), 0);
  while (true) {
    visit(digits);
    int pos = len - 1;
    while (pos >= 0 && ++digits[pos] == n) digits[pos--] = 0;
    if (pos < 0) return;
  }
}

TorusTorsionPoint point_from_digits(const GroupSpec& spec, const std::vector<int>& digits, int n) {
  TorusTorsionPoint p{spec, {}};
  p.phases.reserve(digits.size());
  for (int k : digits) p.phases.push_back(Fraction::make(k, n));
  return p;
}

// SL(2,R) elliptic normal form: g = P R(theta) P^{-1}, det P = 1.
struct Sl2Frame {
  Fraction phase;
  RMatrix conjugator;
};

Sl2Frame sl2_frame(const GroupElement& g, int n) {
  const RMatrix a = g.matrix.real();
  const double scale = std::max(1.0, a.norm());
  const RMatrix id = RMatrix::Identity(2, 2);
  if ((a - id).norm() <= 1e-8 * scale) return {Fraction::make(0, 1), id};
  if ((a + id).norm() <= 1e-8 * scale) {
    if (n % 2 != 0) throw NotTorsion("-I does not have order dividing " + std::to_string(n));
    return {Fraction::make(1, 2), id};
  }
  const double tr = a.trace();
  if (std::abs(tr) >= 2.0) throw NotTorsion("SL(2,R) element is not elliptic");

  Eigen::EigenSolver<RMatrix> es(a);
  const int idx = es.eigenvalues()(0).imag() > 0 ? 0 : 1;
  const Eigen::VectorXcd v = es.eigenvectors().col(idx);
  const Complex lambda = es.eigenvalues()(idx);
  RMatrix p(2, 2);
  p.col(0) = v.real();
  p.col(1) = v.imag();
  const double theta = std::arg(lambda);  // in (0, pi)
  double angle = 0.0;
  if (p.determinant() < 0) {
    // g [x, -y] = [x, -y] R(theta)
    p.col(1) *= -1.0;
    angle = theta;
  } else {
    // g [x, y] = [x, y] R(-theta)
    angle = -theta;
  }
  p /= std::sqrt(p.determinant());
  return {to_fraction(angle, n), p};
}

}  // namespace

Fraction Fraction::make(long long k, long long n) {
  if (n < 1) throw std::invalid_argument("fraction denominator must be positive");
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return {0, 1};
  const long long g = std::gcd(k, n);
  return {static_cast<int>(k / g), static_cast<int>(n / g)};
}

std::string Fraction::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::string CanonicalInvariant::str() const {
  std::string out;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (i) out += ',';
    out += phases[i].str();
  }
  if (parity) out += *parity ? ",odd" : ",even";
  return out;
}

CMatrix torus_matrix(const GroupSpec& spec, const std::vector<double>& angles) {
  const int m = spec.size();
  CMatrix t = CMatrix::Identity(m, m);
  if (spec.is_complex()) {
    for (int j = 0; j < m; ++j) t(j, j) = std::polar(1.0, angles[static_cast<std::size_t>(j)]);
    return t;
  }
  for (int j = 0; j < static_cast<int>(angles.size()); ++j) {
    t.block(2 * j, 2 * j, 2, 2) = rotation2(angles[static_cast<std::size_t>(j)]).cast<Complex>();
  }
  return t;
}

GroupElement realize(const TorusTorsionPoint& point) {
  return {point.spec, torus_matrix(point.spec, radians(point.phases))};
}

int exact_order(const TorusTorsionPoint& point) {
  int order = 1;
  for (const auto& f : point.phases) order = std::lcm(order, f.den);
  return order;
}

std::vector<TorusTorsionPoint> enumerate_torsion(const GroupSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("enumerate_torsion: n must be >= 1");
  std::vector<TorusTorsionPoint> out;
  switch (spec.family()) {
    case Family::U:
      for_each_tuple(spec.size(), n, [&](const auto& d) { out.push_back(point_from_digits(spec, d, n)); });
      break;
    case Family::SU:
      for_each_tuple(spec.size(), n, [&](const auto& d) {
        if (std::accumulate(d.begin(), d.end(), 0) % n == 0) out.push_back(point_from_digits(spec, d, n));
      });
      break;
    case Family::SO:
      for_each_tuple(spec.torus_rank(), n, [&](const auto& d) { out.push_back(point_from_digits(spec, d, n)); });
      break;
    case Family::SL2R:
      for (int k = 0; k < n; ++k) out.push_back(point_from_digits(spec, {k}, n));
      break;
  }
  return out;
}

CanonicalInvariant canonicalize(const TorusTorsionPoint& point) {
  const GroupSpec& spec = point.spec;
  CanonicalInvariant inv;
  inv.phases = point.phases;
  // SO(2) and SL(2,R): trivial Weyl group
  if (spec.family() == Family::SL2R || (spec.family() == Family::SO && spec.size() == 2)) return inv;

  if (spec.family() == Family::SO) {
    int above = 0;
    bool absorbs_sign = false;
    for (auto& f : inv.phases) {
      if (above_half(f)) {
        ++above;
        f = f.negated();
      }
      absorbs_sign |= is_zero_or_half(f);
    }
    if (spec.size() % 2 == 0 && !absorbs_sign) inv.parity = above % 2;
  }
  std::sort(inv.phases.begin(), inv.phases.end());
  return inv;
}

TorusTorsionPoint canonical_point(const GroupSpec& spec, const CanonicalInvariant& inv) {
  TorusTorsionPoint p{spec, inv.phases};
  if (inv.parity && *inv.parity == 1 && !p.phases.empty()) p.phases[0] = p.phases[0].negated();
  return p;
}

std::vector<ComponentDescriptor> catalog_components(const GroupSpec& spec, int n, const Tolerances& tol,
                                                    Execution exec) {
  std::map<CanonicalInvariant, int> orbits;
  for (const auto& p : enumerate_torsion(spec, n)) ++orbits[canonicalize(p)];

  std::vector<ComponentDescriptor> out;
  out.reserve(orbits.size());
  for (const auto& [inv, count] : orbits) {
    const TorusTorsionPoint rep = canonical_point(spec, inv);
    out.push_back({spec, n, inv, realize(rep), 0, exact_order(rep), count});
  }

  const auto count = static_cast<std::ptrdiff_t>(out.size());
  auto dimension_of = [&](std::ptrdiff_t i) {
    const RMatrix ad = adjoint_matrix(out[i].representative);
    out[i].dimension = image_basis(RMatrix::Identity(ad.rows(), ad.cols()) - ad, tol.rank, adjoint_scale(ad)).dim();
  };
  if (exec.mode == Execution::Mode::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) dimension_of(i);
  } else {
    const int threads = exec.jobs > 0 ? exec.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) dimension_of(i);
  }
  return out;
}

int count_components(const GroupSpec& spec, int n) {
  std::set<CanonicalInvariant> invariants;
  for (const auto& p : enumerate_torsion(spec, n)) invariants.insert(canonicalize(p));
  return static_cast<int>(invariants.size());
}

VerificationReport gcd_intersection_check(const GroupSpec& spec, int n, int m) {
  auto invariant_set = [&](int k) {
    std::set<std::string> s;
    for (const auto& p : enumerate_torsion(spec, k)) s.insert(canonicalize(p).str());
    return s;
  };
  const int g = std::gcd(n, m);
  const auto a = invariant_set(n);
  const auto b = invariant_set(m);
  const auto expected = invariant_set(g);
  std::set<std::string> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(both, both.begin()));
  std::vector<std::string> mismatch;
  std::set_symmetric_difference(both.begin(), both.end(), expected.begin(), expected.end(),
                                std::back_inserter(mismatch));

  TrialRecord t;
  t.inputs_digest = digest(spec.name() + ":" + std::to_string(n) + ":" + std::to_string(m));
  t.status = mismatch.empty() ? Status::pass : Status::fail;
  t.residual = static_cast<double>(mismatch.size());
  t.metrics = {{"catalog_n", static_cast<double>(a.size())},
               {"catalog_m", static_cast<double>(b.size())},
               {"intersection", static_cast<double>(both.size())},
               {"catalog_gcd", static_cast<double>(expected.size())},
               {"gcd", static_cast<double>(g)}};
  auto report = VerificationReport::single("gcd_intersection", std::move(t));
  report.details["intersection"] = both;
  report.details["catalog_gcd"] = expected;
  report.details["mismatch"] = mismatch;
  return report;
}

TorusFrame torus_frame(const GroupElement& g) {
  const GroupSpec& spec = g.spec;
  const int m = spec.size();
  if (!spec.is_compact()) throw NumericalError("torus_frame: group is not compact");

  if (spec.is_complex()) {
    Eigen::ComplexSchur<CMatrix> schur(g.matrix);
    const CMatrix& t = schur.matrixT();
    const double off = CMatrix(t.triangularView<Eigen::StrictlyUpper>()).norm();
    if (off > 1e-8) throw NumericalError("torus_frame: Schur form is not diagonal (element not normal)");
    TorusFrame f{schur.matrixU(), {}};
    for (int j = 0; j < m; ++j) f.angles.push_back(std::arg(t(j, j)));
    return f;
  }

  const RMatrix gr = g.matrix.real();
  Eigen::RealSchur<RMatrix> schur(gr);
  const RMatrix& t = schur.matrixT();
  const RMatrix& q0 = schur.matrixU();
  std::vector<std::pair<int, int>> planes;
  std::vector<double> angles;
  std::vector<int> plus, minus;
  for (int i = 0; i < m;) {
    if (i + 1 < m && std::abs(t(i + 1, i)) > 1e-12) {
      planes.emplace_back(i, i + 1);
      angles.push_back(std::atan2(t(i + 1, i), t(i, i)));
      i += 2;
    } else {
      (t(i, i) > 0 ? plus : minus).push_back(i);
      ++i;
    }
  }
  if (minus.size() % 2 != 0) throw NumericalError("torus_frame: odd multiplicity of eigenvalue -1");
  for (std::size_t i = 0; i + 1 < minus.size(); i += 2) {
    planes.emplace_back(minus[i], minus[i + 1]);
    angles.push_back(std::numbers::pi);
  }
  for (std::size_t i = 0; i + 1 < plus.size(); i += 2) {
    planes.emplace_back(plus[i], plus[i + 1]);
    angles.push_back(0.0);
  }
  RMatrix q(m, m);
  int col = 0;
  for (const auto& [a, b] : planes) {
    q.col(col++) = q0.col(a);
    q.col(col++) = q0.col(b);
  }
  if (plus.size() % 2 == 1) q.col(col++) = q0.col(plus.back());
  if (col != m || static_cast<int>(planes.size()) != spec.torus_rank()) {
    throw NumericalError("torus_frame: unexpected block structure");
  }
  if (q.determinant() < 0) {
    if (m % 2 == 1) {
      q.col(m - 1) *= -1.0;
    } else {
      q.col(1) *= -1.0;
      angles[0] = -angles[0];
      if (angles[0] <= -std::numbers::pi) angles[0] += kTwoPi;
    }
  }
  TorusFrame f{q.cast<Complex>(), std::move(angles)};
  const double recon = (f.conjugator * torus_matrix(spec, f.angles) * f.conjugator.adjoint() - g.matrix).norm();
  if (recon > 1e-8) throw NumericalError("torus_frame: real Schur reconstruction failed");
  return f;
}

CanonicalInvariant invariant_of(const GroupElement& g, int n) {
  if (n < 1) throw std::invalid_argument("invariant_of: n must be >= 1");
  if (g.spec.family() == Family::SL2R) return canonicalize({g.spec, {sl2_frame(g, n).phase}});
  const TorusFrame f = torus_frame(g);
  TorusTorsionPoint p{g.spec, {}};
  for (double a : f.angles) p.phases.push_back(to_fraction(a, n));
  return canonicalize(p);
}

AlignedFrame aligned_frame(const GroupElement& g, int n) {
  const GroupSpec& spec = g.spec;
  if (spec.family() == Family::SL2R) {
    const Sl2Frame f = sl2_frame(g, n);
    return {canonicalize({spec, {f.phase}}), f.conjugator.cast<Complex>()};
  }
  const TorusFrame frame = torus_frame(g);
  std::vector<Fraction> phases;
  for (double a : frame.angles) phases.push_back(to_fraction(a, n));
  const CanonicalInvariant inv = canonicalize({spec, phases});
  const int m = spec.size();
  const int blocks = static_cast<int>(phases.size());
  const int width = spec.is_complex() ? 1 : 2;

  CMatrix q = frame.conjugator;
  if (!spec.is_complex()) {
    for (int j = 0; j < blocks; ++j) {
      if (above_half(phases[j]) && !(spec.size() == 2)) {
        q.col(2 * j + 1) *= -1.0;
        phases[j] = phases[j].negated();
      }
    }
  }
  std::vector<int> order(static_cast<std::size_t>(blocks));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return phases[a] < phases[b]; });
  CMatrix sorted = q;
  std::vector<Fraction> sorted_phases;
  for (int j = 0; j < blocks; ++j) {
    sorted.middleCols(width * j, width) = q.middleCols(width * order[j], width);
    sorted_phases.push_back(phases[order[j]]);
  }
  phases = std::move(sorted_phases);

  if (!spec.is_complex() && sorted.real().determinant() < 0) {
    if (m % 2 == 1) {
      sorted.col(m - 1) *= -1.0;
    } else {
      auto absorbing = std::find_if(phases.begin(), phases.end(), is_zero_or_half);
      const int j = absorbing != phases.end() ? static_cast<int>(absorbing - phases.begin()) : 0;
      sorted.col(2 * j + 1) *= -1.0;
      phases[j] = phases[j].negated();
    }
  }
  const TorusTorsionPoint expected = canonical_point(spec, inv);
  if (phases != expected.phases) throw NumericalError("aligned_frame: failed to reach the canonical torus point");
  return {inv, sorted};
}

int sl2_orientation(const GroupElement& g, double tol) {
  const RMatrix a = g.matrix.real();
  const double scale = std::max(1.0, a.norm());
  const RMatrix id = RMatrix::Identity(2, 2);
  if ((a - id).norm() <= tol * scale || (a + id).norm() <= tol * scale) return 0;
  if (std::abs(a.trace()) >= 2.0) throw NotTorsion("SL(2,R) element is not elliptic");
  Eigen::EigenSolver<RMatrix> es(a);
  const int idx = es.eigenvalues()(0).imag() > 0 ? 0 : 1;
  const Eigen::VectorXcd v = es.eigenvectors().col(idx);
  const double det = v(0).real() * v(1).imag() - v(1).real() * v(0).imag();
  return det > 0 ? 1 : -1;
}

TorsionSample random_torsion_element(const GroupSpec& spec, int n, std::uint64_t seed) {
  auto rng = make_rng(seed, 4);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> digits;
  switch (spec.family()) {
    case Family::U:
      for (int j = 0; j < spec.size(); ++j) digits.push_back(pick(rng));
      break;
    case Family::SU: {
      int sum = 0;
      for (int j = 0; j + 1 < spec.size(); ++j) {
        digits.push_back(pick(rng));
        sum += digits.back();
      }
      digits.push_back(((-sum) % n + n) % n);
      break;
    }
    case Family::SO:
      for (int j = 0; j < spec.torus_rank(); ++j) digits.push_back(pick(rng));
      break;
    case Family::SL2R:
      digits.push_back(pick(rng));
      break;
  }
  TorusTorsionPoint point = point_from_digits(spec, digits, n);
  const GroupElement h = random_element(spec, seed);
  GroupElement element = conjugate(h, realize(point));
  if (!spec.is_complex()) element.matrix = element.matrix.real().cast<Complex>();
  return {std::move(point), std::move(element)};
}

double density_constant(const GroupSpec& spec) {
  const double r = spec.torus_rank();
  switch (spec.family()) {
    case Family::U: return std::numbers::pi * std::sqrt(r);
    case Family::SU:
    case Family::SO: return std::numbers::pi * std::sqrt(r) * std::numbers::sqrt2;
    case Family::SL2R: break;
  }
  throw UnsupportedGroup("density bound only defined for compact groups");
}

TorsionApproximant nearest_torsion_approximant(const GroupElement& g, int N) {
  const GroupSpec& spec = g.spec;
  if (!spec.is_compact()) throw UnsupportedGroup("nearest_torsion_approximant needs a compact group");
  if (N < 1) throw std::invalid_argument("nearest_torsion_approximant: N must be >= 1");
  const TorusFrame frame = torus_frame(g);
  const std::size_t count = frame.angles.size();

  std::vector<double> x(count);
  std::vector<long long> k(count);
  for (std::size_t j = 0; j < count; ++j) {
    x[j] = frame.angles[j] / kTwoPi * N;
    k[j] = std::llround(x[j]);
  }
  if (spec.family() == Family::SU) {
    // keep sum k_j == N * (sum of phases): largest-remainder correction
    const double phase_sum = std::accumulate(x.begin(), x.end(), 0.0) / N;
    const long long target = N * std::llround(phase_sum);
    long long excess = std::accumulate(k.begin(), k.end(), 0LL) - target;
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), 0);
    while (excess != 0) {
      const long long step = excess > 0 ? -1 : 1;
      // move the entry whose rounding error is largest in the direction of the excess
      auto best = std::max_element(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return -step * (k[a] - x[a]) < -step * (k[b] - x[b]);
      });
      k[*best] += step;
      excess += step;
    }
  }

  TorsionApproximant out{g, {spec, {}}, 0.0, density_constant(spec) / N};
  std::vector<double> angles(count);
  for (std::size_t j = 0; j < count; ++j) {
    angles[j] = kTwoPi * static_cast<double>(k[j]) / N;
    out.point.phases.push_back(Fraction::make(k[j], N));
  }
  out.element.matrix = frame.conjugator * torus_matrix(spec, angles) * frame.conjugator.adjoint();
  if (!spec.is_complex()) out.element.matrix = out.element.matrix.real().cast<Complex>();
  out.distance = (out.element.matrix - g.matrix).norm();
  return out;
}

VerificationReport sl2_component_census(int n, std::size_t samples, std::uint64_t seed, Execution exec) {
  if (n < 1 || samples < 1) throw std::invalid_argument("sl2_component_census: n and samples must be >= 1");
  const GroupSpec spec = GroupSpec::sl2r();
  VerificationReport report = sweep("sl2_component_census", samples, seed, exec, [&](std::size_t, std::uint64_t s) {
    auto rng = make_rng(s, 2);
    const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const GroupElement h = random_element(spec, s);
    const GroupElement g = conjugate(h, realize({spec, {Fraction::make(k, n)}}));
    const CartanFactors kp = cartan_decompose(h);
    const double cartan_residual =
        (kp.k.matrix * expm(kp.p.cast<Complex>()) - h.matrix).norm() / std::max(1.0, h.matrix.norm());

    TrialRecord t;
    t.seed = s;
    t.inputs_digest = digest(std::to_string(n) + ":" + std::to_string(k));
    const int sigma = sl2_orientation(g);
    const Fraction recovered = sl2_frame(g, n).phase;
    const bool ok = recovered == Fraction::make(k, n) && cartan_residual <= 1e-10;
    t.status = ok ? Status::pass : Status::fail;
    t.residual = cartan_residual;
    t.metrics = {{"k", k}, {"trace", g.matrix.real().trace()}, {"sigma", sigma}, {"cartan_residual", cartan_residual}};
    t.note = recovered.str();
    return t;
  });

  // cluster by (sigma, trace) without reference to k
  std::vector<std::pair<int, double>> keys;
  for (const auto& t : report.trials) {
    if (t.metrics.count("sigma")) keys.emplace_back(static_cast<int>(t.metrics.at("sigma")), t.metrics.at("trace"));
  }
  std::sort(keys.begin(), keys.end());
  int classes = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i == 0 || keys[i].first != keys[i - 1].first || std::abs(keys[i].second - keys[i - 1].second) > 1e-6) {
      ++classes;
    }
  }
  std::map<int, std::set<int>> sigma_by_k;
  for (const auto& t : report.trials) {
    if (t.metrics.count("k")) {
      sigma_by_k[static_cast<int>(t.metrics.at("k"))].insert(static_cast<int>(t.metrics.at("sigma")));
    }
  }
  int flips = 0;
  for (const auto& [k, sigmas] : sigma_by_k) flips += sigmas.size() > 1;

  report.details = {{"classes", classes},
                    {"expected", n},
                    {"sigma_flips", flips},
                    {"orbits_sampled", sigma_by_k.size()}};
  if (report.status == Status::pass && (classes != n || flips != 0)) report.status = Status::fail;
  return report;
}

VerificationReport cluster_census(const GroupSpec& spec, int n, std::size_t samples, std::uint64_t seed,
                                  Execution exec) {
  if (n < 1 || samples < 1) throw std::invalid_argument("cluster_census: n and samples must be >= 1");
  const std::vector<TorusTorsionPoint> points = enumerate_torsion(spec, n);
  VerificationReport report = sweep("cluster_census", samples, seed, exec, [&](std::size_t, std::uint64_t s) {
    auto rng = make_rng(s, 3);
    const auto index = std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng);
    const TorusTorsionPoint& point = points[index];
    const GroupElement g = conjugate(random_element(spec, s), realize(point));
    const CanonicalInvariant got = invariant_of(g, n);
    const CanonicalInvariant expected = canonicalize(point);

    TrialRecord t;
    t.seed = s;
    t.inputs_digest = digest(spec.name() + ":" + std::to_string(n) + ":" + std::to_string(index));
    t.status = got == expected ? Status::pass : Status::fail;
    t.residual = power_residual(g, n);
    t.metrics = {{"torus_point", static_cast<double>(index)}, {"power_residual", t.residual}};
    t.note = got.str();
    return t;
  });

  std::set<std::string> clusters;
  for (const auto& t : report.trials)
    if (t.passed()) clusters.insert(t.note);
  std::set<std::string> catalog;
  for (const auto& p : points) catalog.insert(canonicalize(p).str());
  std::vector<std::string> missing;
  std::set_difference(catalog.begin(), catalog.end(), clusters.begin(), clusters.end(), std::back_inserter(missing));

  report.details = {{"clusters", clusters.size()}, {"expected", catalog.size()}, {"missing", missing}};
  if (report.status == Status::pass && clusters != catalog) report.status = Status::fail;
  return report;
}

nlohmann::json matrix_json(const CMatrix& m, bool complex_entries) {
  nlohmann::json j{{"rows", m.rows()}, {"cols", m.cols()}};
  std::vector<double> re, im;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = re;
  if (complex_entries) j["im"] = im;
  return j;
}

std::string catalog_csv(const std::vector<ComponentDescriptor>& catalog) {
  std::ostringstream out;
  out << "group,size,n,component_index,canonical,dimension,exact_order\n";
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& c = catalog[i];
    out << to_string(c.spec.family()) << ',' << c.spec.size() << ',' << c.n << ',' << i << ",\""
        << c.canonical.str() << "\"," << c.dimension << ',' << c.exact_order << '\n';
  }
  return out.str();
}

nlohmann::json catalog_json(const std::vector<ComponentDescriptor>& catalog) {
  nlohmann::json comps = nlohmann::json::array();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& c = catalog[i];
    std::vector<std::string> phases;
    for (const auto& f : c.canonical.phases) phases.push_back(f.str());
    comps.push_back({{"component_index", i},
                     {"canonical", c.canonical.str()},
                     {"phases", phases},
                     {"parity", c.canonical.parity ? nlohmann::json(*c.canonical.parity ? "odd" : "even")
                                                   : nlohmann::json(nullptr)},
                     {"dimension", c.dimension},
                     {"exact_order", c.exact_order},
                     {"torus_points", c.torus_points},
                     {"representative", matrix_json(c.representative.matrix, c.spec.is_complex())}});
  }
  nlohmann::json j{{"components", comps}};
  if (!catalog.empty()) {
    j["group"] = to_string(catalog.front().spec.family());
    j["size"] = catalog.front().spec.size();
    j["n"] = catalog.front().n;
  }
  return j;
}

}  // namespace torsion
