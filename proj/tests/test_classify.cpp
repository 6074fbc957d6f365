#include <doctest.h>

#include <algorithm>
#include <complex>
#include <map>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "torsion/classify.hpp"
#include "torsion/subspace.hpp"

using namespace torsion;

namespace {

TorusTorsionPoint point(const GroupSpec& spec, std::vector<std::pair<int, int>> phases) {
  TorusTorsionPoint p{spec, {}};
  for (auto [k, n] : phases) p.phases.push_back(Fraction::make(k, n));
  return p;
}

// brute-force orbit count over integer tuples, independent of canonicalize
int oracle_count(const GroupSpec& spec, int n) {
  using oracle::Weyl;
  const int m = spec.size();
  switch (spec.family()) {
    case Family::U: return oracle::count_orbits(oracle::all_tuples(m, n), n, Weyl::symmetric);
    case Family::SU: {
      std::vector<oracle::Tuple> keep;
      for (auto& t : oracle::all_tuples(m, n)) {
        int s = 0;
        for (int k : t) s += k;
        if (s % n == 0) keep.push_back(t);
      }
      return oracle::count_orbits(keep, n, Weyl::symmetric);
    }
    case Family::SO: {
      const int r = m / 2;
      Weyl w = Weyl::signed_permutations;
      if (m == 2) w = Weyl::trivial;
      else if (m % 2 == 0) w = Weyl::even_signed_permutations;
      return oracle::count_orbits(oracle::all_tuples(r, n), n, w);
    }
    case Family::SL2R: return n;
  }
  return -1;
}

std::vector<GroupSpec> all_specs() {
  std::vector<GroupSpec> out;
  for (int m = 1; m <= 5; ++m) out.emplace_back(Family::U, m);
  for (int m = 2; m <= 5; ++m) out.emplace_back(Family::SU, m);
  for (int m = 2; m <= 5; ++m) out.emplace_back(Family::SO, m);
  out.push_back(GroupSpec::sl2r());
  return out;
}

std::multiset<int> dims(const std::vector<ComponentDescriptor>& cat) {
  std::multiset<int> d;
  for (const auto& c : cat) d.insert(c.dimension);
  return d;
}

std::set<std::string> invariant_set(const std::vector<ComponentDescriptor>& cat) {
  std::set<std::string> s;
  for (const auto& c : cat) s.insert(c.canonical.str());
  return s;
}

}  // namespace

TEST_CASE("fractions") {
  CHECK(Fraction::make(2, 4) == Fraction{1, 2});
  CHECK(Fraction::make(-1, 4) == Fraction{3, 4});
  CHECK(Fraction::make(6, 3) == Fraction{0, 1});
  CHECK(Fraction::make(3, 4).negated() == Fraction{1, 4});
  CHECK(Fraction{0, 1}.negated() == Fraction{0, 1});
  CHECK(Fraction{1, 3} < Fraction{2, 3});
  CHECK(Fraction{1, 2} < Fraction{1, 3});  // lexicographic on (num, den)
  CHECK(Fraction{3, 4}.str() == "3/4");
}

TEST_CASE("enumerate_torsion examples") {
  CHECK(enumerate_torsion({Family::U, 1}, 3).size() == 3);
  const auto su2 = enumerate_torsion({Family::SU, 2}, 2);
  REQUIRE(su2.size() == 2);
  std::set<std::vector<Fraction>> got;
  for (const auto& p : su2) got.insert(p.phases);
  CHECK(got.count({Fraction{0, 1}, Fraction{0, 1}}));
  CHECK(got.count({Fraction{1, 2}, Fraction{1, 2}}));
  CHECK(enumerate_torsion({Family::U, 2}, 2).size() == 4);
  CHECK(enumerate_torsion(GroupSpec::sl2r(), 5).size() == 5);
  CHECK(enumerate_torsion({Family::SO, 5}, 3).size() == 9);
}

TEST_CASE("enumerated points realize elements of order dividing n") {
  for (const auto& spec : all_specs()) {
    for (int n = 1; n <= 4; ++n) {
      const auto points = enumerate_torsion(spec, n);
      std::set<std::vector<Fraction>> distinct;
      for (const auto& p : points) {
        distinct.insert(p.phases);
        const GroupElement t = realize(p);
        CHECK(membership_residual(t.spec, t.matrix) < 1e-12);
        CHECK(power_residual(t, n) < 1e-12);
        CHECK(n % exact_order(p) == 0);
      }
      CHECK(distinct.size() == points.size());
    }
  }
}

TEST_CASE("canonicalize examples") {
  const GroupSpec u2(Family::U, 2);
  CHECK(canonicalize(point(u2, {{1, 2}, {0, 1}})) == canonicalize(point(u2, {{0, 1}, {1, 2}})));
  const GroupSpec so3(Family::SO, 3);
  CHECK(canonicalize(point(so3, {{1, 3}})) == canonicalize(point(so3, {{2, 3}})));

  const GroupSpec su3(Family::SU, 3);
  std::vector<int> perm = {0, 1, 2};
  std::set<CanonicalInvariant> seen;
  do {
    std::vector<std::pair<int, int>> ph;
    for (int j : perm) ph.emplace_back(j, 3);
    seen.insert(canonicalize(point(su3, ph)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(seen.size() == 1);
}

TEST_CASE("SO(4) parity bit") {
  const GroupSpec so4(Family::SO, 4);
  const auto a = canonicalize(point(so4, {{1, 4}, {1, 4}}));
  const auto b = canonicalize(point(so4, {{1, 4}, {3, 4}}));
  CHECK(a != b);
  CHECK(a.parity.has_value());
  CHECK(canonicalize(point(so4, {{3, 4}, {3, 4}})) == a);
  // a block at angle 0 absorbs the sign change
  CHECK(canonicalize(point(so4, {{1, 4}, {0, 1}})) == canonicalize(point(so4, {{3, 4}, {0, 1}})));
  CHECK_FALSE(canonicalize(point(so4, {{1, 4}, {1, 2}})).parity.has_value());
  // the two classes really are not conjugate in SO(4): the parity bit survives conjugation
  const GroupElement ga = realize(point(so4, {{1, 4}, {1, 4}}));
  const GroupElement gb = realize(point(so4, {{1, 4}, {3, 4}}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GroupElement h = random_element(so4, seed);
    CHECK(invariant_of(conjugate(h, ga), 4) == a);
    CHECK(invariant_of(conjugate(h, gb), 4) == b);
  }
}

TEST_CASE("canonical_point round trip") {
  for (const auto& spec : all_specs()) {
    for (const auto& c : catalog_components(spec, 4)) {
      CHECK(canonicalize(canonical_point(spec, c.canonical)) == c.canonical);
    }
  }
}

TEST_CASE("component counts match a brute-force Weyl orbit oracle") {
  for (const auto& spec : all_specs()) {
    const int max_n = spec.size() >= 5 ? 4 : 6;
    for (int n = 1; n <= max_n; ++n) {
      CAPTURE(spec.name());
      CAPTURE(n);
      CHECK(count_components(spec, n) == oracle_count(spec, n));
    }
  }
}

TEST_CASE("U(m) counts are multiset counts") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 6; ++n) {
      const long long expect = oracle::count_multisets(n, m);
      CHECK(expect == oracle::binomial(n + m - 1, m));
      CHECK(count_components({Family::U, m}, n) == expect);
    }
}

TEST_CASE("catalog examples") {
  SUBCASE("SU(2), n = 2") {
    const auto cat = catalog_components({Family::SU, 2}, 2);
    CHECK(cat.size() == 2);
    CHECK(dims(cat) == std::multiset<int>{0, 0});
  }
  SUBCASE("SO(3), n = 2") {
    const auto cat = catalog_components({Family::SO, 3}, 2);
    CHECK(cat.size() == 2);
    CHECK(dims(cat) == std::multiset<int>{0, 2});
  }
  SUBCASE("U(2), n = 2") {
    const auto cat = catalog_components({Family::U, 2}, 2);
    CHECK(cat.size() == 3);
    CHECK(dims(cat) == std::multiset<int>{0, 0, 2});
  }
  SUBCASE("SU(2), n = 4: I, -I, and the class of diag(i,-i)") {
    const auto cat = catalog_components({Family::SU, 2}, 4);
    CHECK(cat.size() == 3);
    CHECK(dims(cat) == std::multiset<int>{0, 0, 2});
  }
  SUBCASE("n = 1 gives only the identity") {
    for (const auto& spec : all_specs()) {
      const auto cat = catalog_components(spec, 1);
      REQUIRE(cat.size() == 1);
      CHECK(cat[0].dimension == 0);
      CHECK((cat[0].representative.matrix - CMatrix::Identity(spec.size(), spec.size())).norm() < 1e-14);
    }
  }
}

TEST_CASE("catalog invariants") {
  for (const auto& spec : all_specs()) {
    const int n = spec.size() >= 4 ? 4 : 6;
    const auto cat = catalog_components(spec, n);
    int orbit_total = 0;
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const auto& c = cat[i];
      CHECK(power_residual(c.representative, n) < 1e-9);
      CHECK(membership_residual(c.representative.spec, c.representative.matrix) < 1e-9);
      CHECK(n % c.exact_order == 0);
      if (i) CHECK(cat[i - 1].canonical < c.canonical);
      orbit_total += c.torus_points;
    }
    CAPTURE(spec.name());
    CHECK(orbit_total == static_cast<int>(enumerate_torsion(spec, n).size()));
  }
}

TEST_CASE("U(m) dimensions match the multiplicity formula") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 6; ++n) {
      for (const auto& c : catalog_components({Family::U, m}, n)) {
        std::map<Fraction, int> mult;
        for (const auto& f : c.canonical.phases) ++mult[f];
        int expect = m * m;
        for (const auto& kv : mult) expect -= kv.second * kv.second;
        CHECK(c.dimension == expect);
      }
    }
  }
}

TEST_CASE("class dimension is conjugation invariant") {
  for (const GroupSpec spec : {GroupSpec(Family::SU, 3), GroupSpec(Family::SO, 4), GroupSpec(Family::U, 3)}) {
    for (const auto& c : catalog_components(spec, 3)) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GroupElement g = conjugate(random_element(spec, seed), c.representative);
        const RMatrix ad = adjoint_matrix(g);
        const RMatrix d = RMatrix::Identity(ad.rows(), ad.cols()) - ad;
        CHECK(oracle::row_reduce_rank(d, 1e-7) == c.dimension);
      }
    }
  }
}

TEST_CASE("invariant_of recovers the class of random conjugates") {
  for (const auto& spec : all_specs()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const int n = 1 + static_cast<int>(seed % 6);
      const TorsionSample s = random_torsion_element(spec, n, seed);
      CAPTURE(spec.name());
      CAPTURE(seed);
      CHECK(invariant_of(s.element, n) == canonicalize(s.point));
      const AlignedFrame f = aligned_frame(s.element, n);
      const CMatrix back =
          f.conjugator * realize(canonical_point(spec, f.invariant)).matrix * f.conjugator.inverse();
      CHECK((back - s.element.matrix).norm() < 1e-8);
    }
  }
  const GroupElement r{GroupSpec(Family::SO, 2), rotation2(0.3).cast<Complex>()};
  CHECK_THROWS_AS(invariant_of(r, 4), NotTorsion);
}

TEST_CASE("gcd intersection") {
  SUBCASE("SU(2), (4, 6)") {
    const auto rep = gcd_intersection_check({Family::SU, 2}, 4, 6);
    CHECK(rep.passed());
    CHECK(rep.details.at("intersection").size() == 2);
  }
  SUBCASE("coprime orders") {
    for (const auto& spec : all_specs()) {
      const auto rep = gcd_intersection_check(spec, 3, 5);
      CHECK(rep.passed());
      CHECK(rep.details.at("intersection").size() == 1);
    }
  }
  SUBCASE("divisibility, U(2), (2, 4)") {
    const auto rep = gcd_intersection_check({Family::U, 2}, 2, 4);
    CHECK(rep.passed());
    const auto c2 = invariant_set(catalog_components({Family::U, 2}, 2));
    const auto c4 = invariant_set(catalog_components({Family::U, 2}, 4));
    CHECK(std::includes(c4.begin(), c4.end(), c2.begin(), c2.end()));
  }
}

TEST_CASE("density") {
  SUBCASE("already torsion") {
    const GroupSpec su3(Family::SU, 3);
    const TorsionSample s = random_torsion_element(su3, 5, 3);
    const auto a = nearest_torsion_approximant(s.element, 5);
    CHECK(a.distance <= 1e-9);
  }
  SUBCASE("U(1) scalar rounding bound") {
    const double bound = std::abs(std::polar(1.0, std::numbers::pi / 50) - 1.0);
    for (int i = 0; i < 200; ++i) {
      const double phi = 2.0 * std::numbers::pi * (i + 0.37) / 200;
      CMatrix g(1, 1);
      g(0, 0) = std::polar(1.0, phi);
      const auto a = nearest_torsion_approximant({GroupSpec(Family::U, 1), g}, 50);
      CHECK(a.distance <= bound + 1e-12);
      CHECK(power_residual(a.element, 50) < 1e-9);
    }
  }
  SUBCASE("SU(2), N = 100 over 100 seeds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const GroupElement g = random_element({Family::SU, 2}, seed);
      const auto a = nearest_torsion_approximant(g, 100);
      CHECK(a.distance <= 0.1);
      CHECK(a.distance <= a.bound);
      CHECK(membership_residual(a.element.spec, a.element.matrix) < 1e-9);
      CHECK(power_residual(a.element, 100) < 1e-8);
    }
  }
  SUBCASE("SL(2,R) is rejected") {
    CHECK_THROWS_AS(nearest_torsion_approximant(identity(GroupSpec::sl2r()), 3), UnsupportedGroup);
  }
}

TEST_CASE("SL(2,R) orientation oracle") {
  // for h R(theta) h^{-1} with 0 < theta < pi the rotation sense is -sign(b) of the (0,1) entry
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const double theta = 0.2 + 2.7 * (seed % 10) / 10.0;
    const double angle = seed % 2 ? theta : -theta;
    const GroupElement h = random_element(GroupSpec::sl2r(), seed);
    const GroupElement g = conjugate(h, {GroupSpec::sl2r(), rotation2(angle).cast<Complex>()});
    const double b = g.matrix(0, 1).real();
    const int expect = b > 0 ? 1 : -1;
    CHECK(sl2_orientation(g) == expect);
  }
  CHECK(sl2_orientation(identity(GroupSpec::sl2r())) == 0);
  CMatrix hyp = CMatrix::Zero(2, 2);
  hyp(0, 0) = 2.0;
  hyp(1, 1) = 0.5;
  CHECK_THROWS_AS(sl2_orientation({GroupSpec::sl2r(), hyp}), NotTorsion);
}

TEST_CASE("SL(2,R) census") {
  for (int n : {1, 2, 4}) {
    const auto rep = sl2_component_census(n, 1000, 1);
    CAPTURE(n);
    CHECK(rep.passed());
    CHECK(rep.details.at("classes").get<int>() == n);
    CHECK(rep.details.at("sigma_flips").get<int>() == 0);
  }
}

TEST_CASE("cluster census matches the catalog") {
  const auto rep = cluster_census({Family::SO, 3}, 2, 500, 0);
  CHECK(rep.passed());
  CHECK(rep.details.at("clusters").get<int>() == 2);
  for (const GroupSpec spec : {GroupSpec(Family::SU, 3), GroupSpec(Family::SO, 4), GroupSpec(Family::U, 2)}) {
    const auto r = cluster_census(spec, 4, 800, 5);
    CAPTURE(spec.name());
    CHECK(r.passed());
  }
}

TEST_CASE("catalog export") {
  const auto cat = catalog_components({Family::U, 2}, 2);
  const std::string csv = catalog_csv(cat);
  CHECK(csv.rfind("group,size,n,component_index,canonical,dimension,exact_order\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const auto j = catalog_json(cat);
  CHECK(j.at("components").size() == 3);
  const auto& rep = j.at("components")[2].at("representative");
  CHECK(rep.at("rows") == 2);
  CHECK(rep.contains("im"));
  CHECK_FALSE(catalog_json(catalog_components({Family::SO, 3}, 2))["components"][0]["representative"].contains("im"));
}
