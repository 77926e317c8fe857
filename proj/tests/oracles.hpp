#pragma once

// Slow reference computations used as test oracles. They share no code
// with the library beyond the matrix container.

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <vector>

#include <boost/integer/common_factor.hpp>

#include "cytop/exact_linalg.hpp"
#include "cytop/polytope.hpp"

namespace oracle {

using cytop::BigInt;
using cytop::IntMatrix;
using cytop::LatticeVector;

inline BigInt cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    det += (j % 2 == 0 ? 1 : -1) * m(0, j) * cofactor_det(minor);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Nonzero invariant factors via determinantal divisors: d_k is the gcd of
/// all k x k minors and the k-th factor is d_k / d_{k-1}.
inline std::vector<BigInt> invariant_factors(const IntMatrix& a) {
  std::vector<BigInt> divisors{1};
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rows);
    subsets(a.cols(), k, 0, cur, cols);
    BigInt g = 0;
    for (const auto& r : rows)
      for (const auto& c : cols) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m(i, j) = a(r[i], c[j]);
        g = boost::integer::gcd(g, abs(cofactor_det(m)));
      }
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < divisors.size(); ++k) out.push_back(divisors[k] / divisors[k - 1]);
  return out;
}

/// Lattice points of a polygon given by its vertices, by scanning the
/// bounding box with exact orientation tests against the hull.
inline std::vector<std::array<long long, 2>> polygon_points(std::vector<std::array<long long, 2>> v) {
  // Monotone chain hull, counterclockwise, collinear points dropped.
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<long long, 2>> hull(2 * v.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], v[i]) <= 0) --k;
    hull[k++] = v[i];
  }
  for (std::size_t i = v.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], v[i]) <= 0) --k;
    hull[k++] = v[i];
  }
  hull.resize(k - 1);
  long long x0 = v.front()[0], x1 = v.back()[0], y0 = v.front()[1], y1 = y0;
  for (const auto& p : v) y0 = std::min(y0, p[1]), y1 = std::max(y1, p[1]);
  std::vector<std::array<long long, 2>> out;
  for (long long x = x0; x <= x1; ++x)
    for (long long y = y0; y <= y1; ++y) {
      bool inside = true;
      for (std::size_t i = 0; i < hull.size() && inside; ++i)
        inside = cross(hull[i], hull[(i + 1) % hull.size()], std::array<long long, 2>{x, y}) >= 0;
      if (inside) out.push_back({x, y});
    }
  return out;
}

/// Twice the Euclidean area of the hull of a point set (shoelace).
inline long long twice_area(std::vector<std::array<long long, 2>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<long long, 2>> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  long long a = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return a < 0 ? -a : a;
}

/// Random unimodular n x n matrix as a product of elementary operations.
template <typename Rng>
std::vector<LatticeVector> random_unimodular(std::size_t n, Rng& rng) {
  std::vector<LatticeVector> g(n, LatticeVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 8; ++step) {
    const std::size_t a = idx(rng), b = idx(rng);
    if (a == b) {
      for (auto& row : g) row[a] = -row[a];
      continue;
    }
    const int k = coef(rng);
    for (auto& row : g) row[a] += k * row[b];
  }
  return g;
}

inline std::vector<LatticeVector> apply(const std::vector<LatticeVector>& g, const std::vector<LatticeVector>& pts) {
  std::vector<LatticeVector> out;
  for (const auto& p : pts) {
    LatticeVector q(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) q[i] += g[i][j] * p[j];
    out.push_back(q);
  }
  return out;
}

}  // namespace oracle
