// Independent reference computations used only by the tests. None of these call
// into the code paths they are used to check.
#ifndef TORSION_TESTS_ORACLES_HPP
#define TORSION_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Truncated Taylor series of exp.
inline CMatrix exp_series(const CMatrix& a, int terms = 30) {
  CMatrix sum = CMatrix::Identity(a.rows(), a.cols());
  CMatrix term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// Rank by Gaussian elimination with partial pivoting and an absolute pivot threshold.
inline int row_reduce_rank(RMatrix a, double tol = 1e-8) {
  int rank = 0;
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = rank;
    for (int r = rank + 1; r < rows; ++r)
      if (std::abs(a(r, c)) > std::abs(a(pivot, c))) pivot = r;
    if (std::abs(a(pivot, c)) <= tol) continue;
    a.row(pivot).swap(a.row(rank));
    for (int r = rank + 1; r < rows; ++r) a.row(r) -= a(r, c) / a(rank, c) * a.row(rank);
    ++rank;
  }
  return rank;
}

inline long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Number of non-decreasing m-tuples from {0..n-1}, by explicit enumeration.
inline long long count_multisets(int n, int m) {
  long long count = 0;
  std::vector<int> t(static_cast<std::size_t>(m), 0);
  while (true) {
    ++count;
    int pos = m - 1;
    while (pos >= 0 && t[pos] == n - 1) --pos;
    if (pos < 0) break;
    ++t[pos];
    for (int j = pos + 1; j < m; ++j) t[j] = t[pos];
  }
  return count;
}

/// Phases as integers k (meaning k/n). Weyl groups acting on tuples.
using Tuple = std::vector<int>;

inline std::vector<Tuple> all_tuples(int len, int n) {
  std::vector<Tuple> out;
  Tuple t(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(t);
    int pos = len - 1;
    while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

enum class Weyl { symmetric, signed_permutations, even_signed_permutations, trivial };

/// Orbit of t under the Weyl group, by brute force over permutations and sign vectors.
inline std::set<Tuple> weyl_orbit(const Tuple& t, int n, Weyl w) {
  std::set<Tuple> orbit;
  if (w == Weyl::trivial) return {t};
  Tuple perm(t.size());
  std::iota(perm.begin(), perm.end(), 0);
  const int len = static_cast<int>(t.size());
  do {
    const int sign_masks = (w == Weyl::symmetric) ? 1 : (1 << len);
    for (int mask = 0; mask < sign_masks; ++mask) {
      if (w == Weyl::even_signed_permutations && __builtin_popcount(static_cast<unsigned>(mask)) % 2) continue;
      Tuple image(t.size());
      for (int j = 0; j < len; ++j) {
        int k = t[perm[j]];
        if (mask & (1 << j)) k = (n - k) % n;
        image[j] = k;
      }
      orbit.insert(image);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return orbit;
}

/// Number of distinct Weyl orbits on a set of tuples.
inline int count_orbits(const std::vector<Tuple>& tuples, int n, Weyl w) {
  std::set<std::set<Tuple>> orbits;
  for (const auto& t : tuples) orbits.insert(weyl_orbit(t, n, w));
  return static_cast<int>(orbits.size());
}

/// Positive-definite square root of a symmetric positive-definite matrix.
inline RMatrix spd_sqrt(const RMatrix& s) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(s);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace oracle

#endif  // TORSION_TESTS_ORACLES_HPP
