#pragma once

// Combinatorial models of the exceptional surfaces over two-faces: maximal
// lattice triangulations of a lattice polygon, their dual cell complexes,
// shellings by triangle-removal moves, and the resulting Betti numbers.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "cytop/errors.hpp"
#include "cytop/polytope.hpp"

namespace cytop {

using Point2 = std::array<long long, 2>;
using Triangle = std::array<std::size_t, 3>;

inline long long orient(const Point2& a, const Point2& b, const Point2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

struct TriangulationEdge {
  std::size_t a = 0, b = 0;           // a < b
  std::vector<std::size_t> triangles;  // one (boundary) or two (interior)
  bool boundary() const { return triangles.size() == 1; }
};

/// Triangulation of a lattice polygon using every lattice point as a
/// vertex. Triangles are stored counterclockwise.
class Triangulation2D {
 public:
  Triangulation2D(std::vector<Point2> points, std::vector<Triangle> triangles)
      : points_(std::move(points)), triangles_(std::move(triangles)) {
    for (auto& t : triangles_)
      if (orient(points_[t[0]], points_[t[1]], points_[t[2]]) < 0) std::swap(t[1], t[2]);
  }

  const std::vector<Point2>& points() const noexcept { return points_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }

  std::vector<TriangulationEdge> edges() const {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> adj;
    for (std::size_t t = 0; t < triangles_.size(); ++t)
      for (int k = 0; k < 3; ++k) {
        auto a = triangles_[t][k], b = triangles_[t][(k + 1) % 3];
        adj[{std::min(a, b), std::max(a, b)}].push_back(t);
      }
    std::vector<TriangulationEdge> out;
    for (auto& [key, tris] : adj) out.push_back({key.first, key.second, tris});
    return out;
  }

  std::vector<bool> boundary_vertices() const {
    std::vector<bool> on(points_.size(), false);
    for (const auto& e : edges())
      if (e.boundary()) on[e.a] = on[e.b] = true;
    return on;
  }

  /// Relative interior lattice points of the polygon.
  std::size_t interior_point_count() const {
    const auto on = boundary_vertices();
    return static_cast<std::size_t>(std::count(on.begin(), on.end(), false));
  }

  std::size_t boundary_point_count() const { return points_.size() - interior_point_count(); }

  /// Corners of the polygon (boundary points where the boundary turns).
  std::size_t corner_count() const {
    std::vector<std::vector<std::size_t>> nbrs(points_.size());
    for (const auto& e : edges())
      if (e.boundary()) {
        nbrs[e.a].push_back(e.b);
        nbrs[e.b].push_back(e.a);
      }
    std::size_t corners = 0;
    for (std::size_t v = 0; v < points_.size(); ++v)
      if (nbrs[v].size() == 2 && orient(points_[nbrs[v][0]], points_[v], points_[nbrs[v][1]]) != 0) ++corners;
    return corners;
  }

  /// Twice the lattice area of each triangle equals 1.
  bool is_unimodular() const {
    return std::all_of(triangles_.begin(), triangles_.end(), [&](const Triangle& t) {
      return orient(points_[t[0]], points_[t[1]], points_[t[2]]) == 1;
    });
  }

 private:
  std::vector<Point2> points_;
  std::vector<Triangle> triangles_;
};

/// Lexicographic sweep: each new point is a hull vertex of the points seen
/// so far and is coned to the hull edges visible from it. Triangles never
/// contain other lattice points, hence are unimodular.
inline Triangulation2D maximal_triangulation(std::vector<Point2> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) throw Error(ErrorKind::NotFullDimensional, "polygon needs at least three lattice points");

  std::size_t k = 2;
  while (k < points.size() && orient(points[0], points[1], points[k]) == 0) ++k;
  if (k == points.size()) throw Error(ErrorKind::NotFullDimensional, "lattice points are collinear");

  std::vector<Triangle> tris;
  for (std::size_t i = 0; i + 1 < k; ++i) tris.push_back({i, i + 1, k});
  std::vector<std::size_t> hull;  // counterclockwise, collinear boundary points kept
  if (orient(points[0], points[k - 1], points[k]) > 0) {
    for (std::size_t i = 0; i <= k; ++i) hull.push_back(i);
  } else {
    hull.push_back(0);
    hull.push_back(k);
    for (std::size_t i = k - 1; i >= 1; --i) hull.push_back(i);
  }

  for (std::size_t q = k + 1; q < points.size(); ++q) {
    const std::size_t h = hull.size();
    std::vector<bool> visible(h);
    for (std::size_t i = 0; i < h; ++i) visible[i] = orient(points[hull[i]], points[hull[(i + 1) % h]], points[q]) < 0;
    std::size_t start = 0;
    while (!(visible[start] && !visible[(start + h - 1) % h])) ++start;
    std::size_t end = start;  // last visible edge
    while (visible[(end + 1) % h]) end = (end + 1) % h;
    std::vector<std::size_t> next_hull;
    for (std::size_t i = start;; i = (i + 1) % h) {
      tris.push_back({hull[(i + 1) % h], hull[i], q});
      if (i == end) break;
    }
    // Keep hull[start], then q, then hull[end + 1] .. around to hull[start - 1].
    next_hull.push_back(hull[start]);
    next_hull.push_back(q);
    for (std::size_t i = (end + 1) % h; i != start; i = (i + 1) % h) next_hull.push_back(hull[i]);
    hull = std::move(next_hull);
  }
  return Triangulation2D(std::move(points), std::move(tris));
}

/// Maximal triangulation of a two-dimensional face, in a unimodular chart
/// of the face's affine span.
inline Triangulation2D maximal_triangulation(const Face& f) {
  if (f.dim != 2) throw Error(ErrorKind::BadFaceIndex, "not a two-face");
  RelativePolytope rel(f.lattice_points);
  std::vector<Point2> pts;
  for (const auto& x : f.lattice_points) {
    auto y = rel.to_local(x);
    pts.push_back({y[0], y[1]});
  }
  return maximal_triangulation(std::move(pts));
}

/// One diagonal flip in a strictly convex quadrilateral chosen with the
/// given seed; returns the input when no interior edge is flippable.
inline Triangulation2D random_flip(const Triangulation2D& t, std::uint64_t seed) {
  const auto& pts = t.points();
  std::vector<std::array<std::size_t, 4>> candidates;  // a, b, c, d: edge ab, apexes c, d
  for (const auto& e : t.edges()) {
    if (e.boundary()) continue;
    auto apex = [&](std::size_t tri) {
      for (auto v : t.triangles()[tri])
        if (v != e.a && v != e.b) return v;
      return e.a;
    };
    const std::size_t c = apex(e.triangles[0]), d = apex(e.triangles[1]);
    const long long s1 = orient(pts[c], pts[d], pts[e.a]);
    const long long s2 = orient(pts[c], pts[d], pts[e.b]);
    if ((s1 > 0 && s2 < 0) || (s1 < 0 && s2 > 0)) candidates.push_back({e.a, e.b, c, d});
  }
  if (candidates.empty()) return t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  const auto [a, b, c, d] = candidates[pick(rng)];
  std::vector<Triangle> tris;
  for (const auto& tri : t.triangles()) {
    const bool has_a = std::find(tri.begin(), tri.end(), a) != tri.end();
    const bool has_b = std::find(tri.begin(), tri.end(), b) != tri.end();
    if (!(has_a && has_b)) tris.push_back(tri);
  }
  tris.push_back({c, d, a});
  tris.push_back({c, d, b});
  return Triangulation2D(pts, std::move(tris));
}

struct ComplexComponent {
  std::size_t vertices = 0;  // 0-cells
  std::size_t edges = 0;     // 1-cells
  std::size_t faces = 0;     // 2-cells
  long long euler() const {
    return static_cast<long long>(vertices) - static_cast<long long>(edges) + static_cast<long long>(faces);
  }
};

/// Cell complex dual to the simplices meeting the open polygon: a 0-cell per
/// triangle, a 1-cell per interior edge and a 2-cell per interior vertex.
/// sigma2 is the closure of the 2-cells; sigma1 the closure of the 1-cells
/// outside sigma2.
struct DualComplex {
  std::size_t zero_cells = 0;
  std::size_t one_cells = 0;
  std::size_t two_cells = 0;
  std::size_t max_valence = 0;
  std::vector<ComplexComponent> sigma2;
  std::vector<ComplexComponent> sigma1;
  std::size_t sigma1_edges = 0;
  /// Every 0-cell lying in both sigma1 and sigma2 is trivalent.
  bool junctions_trivalent = true;

  bool sigma2_contractible() const {
    return std::all_of(sigma2.begin(), sigma2.end(), [](const ComplexComponent& c) { return c.euler() == 1; });
  }
  bool sigma1_forest() const {
    return std::all_of(sigma1.begin(), sigma1.end(), [](const ComplexComponent& c) { return c.euler() == 1; });
  }
};

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

inline DualComplex dual_complex(const Triangulation2D& t) {
  DualComplex dc;
  const auto edges = t.edges();
  const auto on_boundary = t.boundary_vertices();
  const std::size_t nt = t.triangles().size();
  dc.zero_cells = nt;
  dc.two_cells = t.interior_point_count();

  std::vector<std::size_t> valence(nt, 0);
  std::vector<bool> tri_in_sigma2(nt, false), tri_in_sigma1(nt, false);
  for (std::size_t tri = 0; tri < nt; ++tri)
    for (auto v : t.triangles()[tri])
      if (!on_boundary[v]) tri_in_sigma2[tri] = true;

  // sigma2 components: interior vertices glued along shared triangles.
  const std::size_t np = t.points().size();
  detail::DisjointSets vsets(np);
  for (const auto& tri : t.triangles()) {
    std::vector<std::size_t> inner;
    for (auto v : tri)
      if (!on_boundary[v]) inner.push_back(v);
    for (std::size_t i = 1; i < inner.size(); ++i) vsets.unite(inner[0], inner[i]);
  }
  std::map<std::size_t, ComplexComponent> s2;
  for (std::size_t v = 0; v < np; ++v)
    if (!on_boundary[v]) ++s2[vsets.find(v)].faces;
  for (std::size_t tri = 0; tri < nt; ++tri)
    for (auto v : t.triangles()[tri])
      if (!on_boundary[v]) {
        ++s2[vsets.find(v)].vertices;
        break;
      }

  detail::DisjointSets tsets(nt);
  std::vector<std::pair<std::size_t, std::size_t>> sigma1_edges;
  for (const auto& e : edges) {
    if (e.boundary()) continue;
    ++dc.one_cells;
    ++valence[e.triangles[0]];
    ++valence[e.triangles[1]];
    if (!on_boundary[e.a] || !on_boundary[e.b]) {
      const std::size_t v = on_boundary[e.a] ? e.b : e.a;
      ++s2[vsets.find(v)].edges;
    } else {
      sigma1_edges.emplace_back(e.triangles[0], e.triangles[1]);
      tri_in_sigma1[e.triangles[0]] = tri_in_sigma1[e.triangles[1]] = true;
      tsets.unite(e.triangles[0], e.triangles[1]);
    }
  }
  for (auto& [root, comp] : s2) dc.sigma2.push_back(comp);

  dc.sigma1_edges = sigma1_edges.size();
  std::map<std::size_t, ComplexComponent> s1;
  for (std::size_t tri = 0; tri < nt; ++tri)
    if (tri_in_sigma1[tri]) ++s1[tsets.find(tri)].vertices;
  for (const auto& [a, b] : sigma1_edges) ++s1[tsets.find(a)].edges;
  for (auto& [root, comp] : s1) dc.sigma1.push_back(comp);

  for (std::size_t tri = 0; tri < nt; ++tri) {
    dc.max_valence = std::max(dc.max_valence, valence[tri]);
    if (tri_in_sigma1[tri] && tri_in_sigma2[tri] && valence[tri] != 3) dc.junctions_trivalent = false;
  }
  // A lone triangle with no interior edge is a single isolated 0-cell.
  if (nt == 1 && dc.one_cells == 0 && dc.two_cells == 0) dc.sigma1.push_back({1, 0, 0});
  return dc;
}

enum class MoveType { A, B, C };

struct ShellingMove {
  MoveType type;
  std::size_t triangle;
};

struct ShellingTrace {
  std::vector<ShellingMove> moves;
  std::size_t count(MoveType type) const {
    return static_cast<std::size_t>(
        std::count_if(moves.begin(), moves.end(), [type](const ShellingMove& m) { return m.type == type; }));
  }
};

/// Reduces the triangulated disk to nothing by moves
///   A: remove a triangle meeting the boundary in exactly one edge,
///   B: remove a triangle with exactly two free edges (and their vertex),
///   C: remove a triangle with three free edges.
/// A is preferred (lowest triangle index); otherwise the counterclockwise
/// boundary is walked until an edge whose apex is the next boundary vertex.
inline ShellingTrace shelling(const Triangulation2D& t) {
  const auto& tris = t.triangles();
  const std::size_t nt = tris.size();
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> edge_tris;
  for (std::size_t i = 0; i < nt; ++i)
    for (int k = 0; k < 3; ++k) {
      auto a = tris[i][k], b = tris[i][(k + 1) % 3];
      edge_tris[{std::min(a, b), std::max(a, b)}].push_back(i);
    }
  std::vector<bool> alive(nt, true);
  auto is_free = [&](std::size_t tri, std::size_t a, std::size_t b) {
    for (auto other : edge_tris[{std::min(a, b), std::max(a, b)}])
      if (other != tri && alive[other]) return false;
    return true;
  };
  auto free_count = [&](std::size_t tri) {
    int c = 0;
    for (int k = 0; k < 3; ++k) c += is_free(tri, tris[tri][k], tris[tri][(k + 1) % 3]);
    return c;
  };

  ShellingTrace trace;
  for (std::size_t step = 0; step < nt; ++step) {
    // Boundary of the remaining disk, oriented counterclockwise.
    std::vector<bool> on_boundary(t.points().size(), false);
    struct Directed {
      std::size_t from, to, tri, apex;
    };
    std::vector<Directed> boundary;
    std::map<std::size_t, std::size_t> out_edge;
    for (std::size_t i = 0; i < nt; ++i) {
      if (!alive[i]) continue;
      for (int k = 0; k < 3; ++k) {
        auto a = tris[i][k], b = tris[i][(k + 1) % 3], c = tris[i][(k + 2) % 3];
        if (!is_free(i, a, b)) continue;
        on_boundary[a] = on_boundary[b] = true;
        out_edge[a] = boundary.size();
        boundary.push_back({a, b, i, c});
      }
    }

    std::optional<ShellingMove> move;
    for (std::size_t i = 0; i < nt && !move; ++i) {
      if (!alive[i] || free_count(i) != 1) continue;
      for (int k = 0; k < 3; ++k) {
        auto a = tris[i][k], b = tris[i][(k + 1) % 3], c = tris[i][(k + 2) % 3];
        if (is_free(i, a, b) && !on_boundary[c]) move = ShellingMove{MoveType::A, i};
      }
    }
    if (!move) {
      if (boundary.empty()) throw Error(ErrorKind::NotShellable, "remaining complex has no boundary");
      std::size_t current = 0;
      for (std::size_t guard = 0; guard <= boundary.size() && !move; ++guard) {
        const auto& alpha = boundary[current];
        std::size_t distance = 0, at = alpha.to;
        while (at != alpha.apex && distance <= boundary.size()) {
          auto it = out_edge.find(at);
          if (it == out_edge.end()) throw Error(ErrorKind::NotShellable, "boundary is not a cycle");
          at = boundary[it->second].to;
          ++distance;
        }
        if (distance == 1) {
          const int fc = free_count(alpha.tri);
          if (fc == 2) move = ShellingMove{MoveType::B, alpha.tri};
          if (fc == 3) move = ShellingMove{MoveType::C, alpha.tri};
        }
        current = out_edge.at(alpha.to);
      }
      if (!move) throw Error(ErrorKind::NotShellable, "no admissible move found");
    }
    alive[move->triangle] = false;
    trace.moves.push_back(*move);
  }
  return trace;
}

/// Betti numbers (b0..b4) of the model surface over a two-face, from the
/// polygon data; the shelling trace must reproduce (b4, b2, b0) as its
/// (A, B, C) move counts.
inline std::array<std::size_t, 5> model_homology(const Triangulation2D& t) {
  const std::size_t interior = t.interior_point_count();
  const std::size_t corners = t.corner_count();
  const std::size_t edge_interior = t.boundary_point_count() - corners;
  const std::size_t b2 = interior + edge_interior + corners - 3;
  const std::array<std::size_t, 5> betti{1, 0, b2, 0, interior};
  const auto trace = shelling(t);
  if (trace.count(MoveType::A) != betti[4] || trace.count(MoveType::B) != betti[2] ||
      trace.count(MoveType::C) != betti[0])
    throw Error(ErrorKind::NotShellable, "shelling move counts disagree with the Betti number formula");
  return betti;
}

}  // namespace cytop
