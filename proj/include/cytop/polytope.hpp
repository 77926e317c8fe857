#pragma once

// Lattice polytopes: facet enumeration, polar duality, lattice points, the
// face lattice with interior point counts, dual faces and Minkowski sums.
//
// Convention: a facet is stored as a primitive inward normal u and an
// offset c, meaning <u, x> >= -c on the polytope. A polytope containing the
// origin in its interior is reflexive exactly when every offset equals 1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cytop/errors.hpp"
#include "cytop/exact_linalg.hpp"

namespace cytop {

using LatticeVector = std::vector<long long>;
using FacetSet = boost::dynamic_bitset<>;

inline long long dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LatticeMismatch, "pairing vectors of different rank");
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LatticeMismatch, "adding vectors of different rank");
  LatticeVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LatticeMismatch, "subtracting vectors of different rank");
  LatticeVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline long long content(const LatticeVector& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

/// Divides out the gcd of the coordinates; the zero vector is returned as is.
inline LatticeVector primitive(LatticeVector v) {
  const long long g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

inline long long to_int64(const BigInt& x) {
  if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
    throw Error(ErrorKind::Unsupported, "coordinate exceeds 64-bit range");
  return static_cast<long long>(x);
}

/// Rank of the lattice spanned by the given vectors.
inline std::size_t linear_rank(const std::vector<LatticeVector>& vectors, std::size_t ambient) {
  if (vectors.empty()) return 0;
  return rank(IntMatrix::from_columns(ambient, vectors));
}

/// Dimension of the affine span of a nonempty point set.
inline std::size_t affine_dimension(const std::vector<LatticeVector>& points) {
  if (points.empty()) throw Error(ErrorKind::NotFullDimensional, "empty point set");
  std::vector<LatticeVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return linear_rank(diffs, points[0].size());
}

/// A basis of the saturated sublattice N ∩ R-span(vectors).
inline std::vector<LatticeVector> saturated_basis(const std::vector<LatticeVector>& vectors, std::size_t ambient) {
  if (vectors.empty()) return {};
  const auto s = smith_normal_form(IntMatrix::from_columns(ambient, vectors));
  std::vector<LatticeVector> basis;
  for (std::size_t j = 0; j < s.rank(); ++j) {
    LatticeVector b(ambient);
    for (std::size_t i = 0; i < ambient; ++i) b[i] = to_int64(s.u_inverse(i, j));
    basis.push_back(std::move(b));
  }
  return basis;
}

namespace detail {

// Fraction-free determinant in 128-bit arithmetic; inputs here are tiny
// (coordinates of polytope vertices, dimension <= 6).
inline __int128 small_determinant(std::vector<std::vector<__int128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  __int128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Generalized cross product: a vector orthogonal to all n-1 rows.
inline LatticeVector orthogonal_vector(const std::vector<LatticeVector>& rows, std::size_t n) {
  LatticeVector u(n);
  for (std::size_t skip = 0; skip < n; ++skip) {
    std::vector<std::vector<__int128>> minor;
    for (const auto& r : rows) {
      std::vector<__int128> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != skip) row.push_back(r[j]);
      minor.push_back(std::move(row));
    }
    __int128 d = small_determinant(std::move(minor));
    if (skip % 2 == 1) d = -d;
    u[skip] = static_cast<long long>(d);
  }
  return primitive(std::move(u));
}

}  // namespace detail

struct Facet {
  LatticeVector normal;  // primitive, inward
  long long offset = 0;  // <normal, x> >= -offset

  friend bool operator==(const Facet&, const Facet&) = default;
  friend auto operator<=>(const Facet&, const Facet&) = default;
};

/// Full-dimensional lattice polytope in Z^n given by its vertices, with its
/// facet description derived at construction.
class Polytope {
 public:
  /// Convex hull of an arbitrary finite point set (duplicates and interior
  /// points allowed). Vertices keep the order of their first appearance.
  static Polytope from_points(const std::vector<LatticeVector>& input) {
    if (input.empty()) throw Error(ErrorKind::NotFullDimensional, "no points given");
    const std::size_t n = input.front().size();
    std::vector<LatticeVector> points;
    {
      std::set<LatticeVector> seen;
      for (const auto& p : input) {
        if (p.size() != n) throw Error(ErrorKind::LatticeMismatch, "points of different rank");
        if (seen.insert(p).second) points.push_back(p);
      }
    }
    Polytope poly;
    poly.dim_ = n;
    if (n == 0) {
      poly.vertices_ = points;
      return poly;
    }
    if (affine_dimension(points) != n)
      throw Error(ErrorKind::NotFullDimensional, "points do not affinely span Z^" + std::to_string(n));

    std::set<Facet> found;
    std::vector<FacetSet> point_facets(points.size());  // incidences of facets found so far
    std::vector<std::size_t> combo(n);
    std::function<void(std::size_t, std::size_t)> search = [&](std::size_t depth, std::size_t start) {
      if (depth == n) {
        FacetSet common = point_facets[combo[0]];
        for (std::size_t k = 1; k < n && common.any(); ++k) common &= point_facets[combo[k]];
        if (common.any()) return;  // already on a known facet hyperplane
        std::vector<LatticeVector> rows;
        for (std::size_t k = 1; k < n; ++k) rows.push_back(points[combo[k]] - points[combo[0]]);
        LatticeVector u = detail::orthogonal_vector(rows, n);
        if (content(u) == 0) return;
        const long long h = dot(u, points[combo[0]]);
        bool above = true, below = true;
        for (const auto& p : points) {
          const long long s = dot(u, p);
          above = above && s >= h;
          below = below && s <= h;
          if (!above && !below) return;
        }
        if (below) {
          for (auto& x : u) x = -x;
        }
        Facet f{u, -dot(u, points[combo[0]])};
        if (!found.insert(f).second) return;
        const std::size_t idx = found.size() - 1;
        for (std::size_t i = 0; i < points.size(); ++i) {
          point_facets[i].resize(idx + 1);
          if (dot(f.normal, points[i]) == -f.offset) point_facets[i].set(idx);
        }
        return;
      }
      for (std::size_t i = start; i + (n - depth) <= points.size(); ++i) {
        combo[depth] = i;
        search(depth + 1, i + 1);
      }
    };
    for (auto& pf : point_facets) pf.resize(0);
    search(0, 0);

    poly.facets_.assign(found.begin(), found.end());
    for (const auto& p : points) {
      std::vector<LatticeVector> normals;
      for (const auto& f : poly.facets_)
        if (dot(f.normal, p) == -f.offset) normals.push_back(f.normal);
      if (linear_rank(normals, n) == n) poly.vertices_.push_back(p);
    }
    poly.build_incidence();
    return poly;
  }

  /// Constructs directly from a known irredundant H/V pair (used by polar()).
  static Polytope from_description(std::size_t dim, std::vector<LatticeVector> vertices, std::vector<Facet> facets) {
    Polytope poly;
    poly.dim_ = dim;
    poly.vertices_ = std::move(vertices);
    poly.facets_ = std::move(facets);
    poly.build_incidence();
    return poly;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<LatticeVector>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  /// Facets containing vertex i.
  const FacetSet& vertex_facets(std::size_t i) const { return vertex_facets_.at(i); }

  bool contains(const LatticeVector& x) const {
    if (dim_ == 0) return x.empty();
    for (const auto& f : facets_)
      if (dot(f.normal, x) < -f.offset) return false;
    return true;
  }

  /// Facets on which x lies (x assumed to be in the polytope).
  FacetSet saturated_facets(const LatticeVector& x) const {
    FacetSet s(facets_.size());
    for (std::size_t i = 0; i < facets_.size(); ++i)
      if (dot(facets_[i].normal, x) == -facets_[i].offset) s.set(i);
    return s;
  }

  bool origin_in_interior() const {
    if (dim_ == 0) return false;
    for (const auto& f : facets_)
      if (f.offset <= 0) return false;
    return true;
  }

  bool is_reflexive() const {
    if (!origin_in_interior()) return false;
    return std::all_of(facets_.begin(), facets_.end(), [](const Facet& f) { return f.offset == 1; });
  }

  std::pair<LatticeVector, LatticeVector> bounding_box() const {
    LatticeVector lo = vertices_.front(), hi = vertices_.front();
    for (const auto& v : vertices_)
      for (std::size_t i = 0; i < dim_; ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    return {lo, hi};
  }

 private:
  void build_incidence() {
    vertex_facets_.assign(vertices_.size(), FacetSet(facets_.size()));
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (std::size_t j = 0; j < facets_.size(); ++j)
        if (dot(facets_[j].normal, vertices_[i]) == -facets_[j].offset) vertex_facets_[i].set(j);
  }

  std::size_t dim_ = 0;
  std::vector<LatticeVector> vertices_;
  std::vector<Facet> facets_;
  std::vector<FacetSet> vertex_facets_;
};

/// Convex hull of lattice vectors whose interior contains the origin.
inline Polytope facet_enumeration(const std::vector<LatticeVector>& vertices) {
  Polytope p = Polytope::from_points(vertices);
  if (!p.origin_in_interior()) throw Error(ErrorKind::OriginNotInterior, "some facet has offset <= 0");
  return p;
}

inline bool is_reflexive(const Polytope& p) { return p.is_reflexive(); }

/// Polar polytope. Vertex i of the result is the normal of facet i of p, and
/// facet j of the result is dual to vertex j of p.
inline Polytope polar(const Polytope& p) {
  if (!p.is_reflexive()) throw Error(ErrorKind::NotReflexive, "polar of a non-reflexive polytope is not a lattice polytope");
  std::vector<LatticeVector> vertices;
  for (const auto& f : p.facets()) vertices.push_back(f.normal);
  std::vector<Facet> facets;
  for (const auto& v : p.vertices()) facets.push_back({primitive(v), 1});
  for (std::size_t j = 0; j < facets.size(); ++j)
    if (facets[j].normal != p.vertices()[j]) throw Error(ErrorKind::NotReflexive, "non-primitive vertex");
  return Polytope::from_description(p.dim(), std::move(vertices), std::move(facets));
}

/// All lattice points of p, in lexicographic order, by scanning the
/// integer bounding box against the facet inequalities.
inline std::vector<LatticeVector> lattice_points(const Polytope& p) {
  if (p.dim() == 0) return {LatticeVector{}};
  auto [lo, hi] = p.bounding_box();
  std::vector<LatticeVector> pts;
  LatticeVector x = lo;
  const std::size_t n = p.dim();
  for (;;) {
    if (p.contains(x)) pts.push_back(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = lo[i];
      if (i == 0) return pts;
    }
  }
}

/// Number of lattice points strictly inside a full-dimensional polytope.
inline std::size_t interior_point_count(const Polytope& p) {
  if (p.dim() == 0) return 1;
  std::size_t count = 0;
  for (const auto& x : lattice_points(p))
    if (p.saturated_facets(x).none()) ++count;
  return count;
}

struct Face {
  std::size_t dim = 0;
  std::vector<std::size_t> vertex_indices;  // sorted, into the polytope's vertex list
  FacetSet facets;                          // all facets containing the face
  std::vector<LatticeVector> lattice_points;
  std::size_t interior_count = 0;  // lattice points in the relative interior
};

struct FaceId {
  std::size_t dim = 0;
  std::size_t index = 0;
  friend bool operator==(const FaceId&, const FaceId&) = default;
  friend auto operator<=>(const FaceId&, const FaceId&) = default;
};

/// All proper faces of a full-dimensional polytope, grouped by dimension,
/// with lattice points and relative-interior counts.
class FaceLattice {
 public:
  explicit FaceLattice(const Polytope& p) : ambient_dim_(p.dim()) {
    const std::size_t n = p.dim();
    if (n == 0) return;
    faces_.resize(n);
    const std::size_t nf = p.facets().size();

    auto facets_of_vertex_set = [&](const std::vector<std::size_t>& verts) {
      FacetSet s(nf);
      s.set();
      for (auto v : verts) s &= p.vertex_facets(v);
      return s;
    };
    auto vertices_of_facet_set = [&](const FacetSet& s) {
      std::vector<std::size_t> verts;
      for (std::size_t v = 0; v < p.vertices().size(); ++v)
        if (s.is_subset_of(p.vertex_facets(v))) verts.push_back(v);
      return verts;
    };
    auto face_dim = [&](const FacetSet& s) {
      std::vector<LatticeVector> normals;
      for (auto i = s.find_first(); i != FacetSet::npos; i = s.find_next(i)) normals.push_back(p.facets()[i].normal);
      return n - linear_rank(normals, n);
    };

    for (std::size_t f = 0; f < nf; ++f) {
      Face face;
      face.dim = n - 1;
      face.facets = FacetSet(nf);
      face.facets.set(f);
      face.vertex_indices = vertices_of_facet_set(face.facets);
      add_face(std::move(face));
    }
    for (std::size_t d = n - 1; d >= 1; --d) {
      for (std::size_t i = 0; i < faces_[d].size(); ++i) {
        const auto base = faces_[d][i].vertex_indices;
        const auto base_facets = faces_[d][i].facets;
        for (std::size_t f = 0; f < nf; ++f) {
          if (base_facets.test(f)) continue;
          std::vector<std::size_t> meet;
          for (auto v : base)
            if (p.vertex_facets(v).test(f)) meet.push_back(v);
          if (meet.empty()) continue;
          FacetSet closure = facets_of_vertex_set(meet);
          if (face_dim(closure) != d - 1) continue;
          if (index_.count(meet)) continue;
          Face face;
          face.dim = d - 1;
          face.facets = closure;
          face.vertex_indices = std::move(meet);
          add_face(std::move(face));
        }
      }
    }

    for (const auto& x : lattice_points(p)) {
      const FacetSet sat = p.saturated_facets(x);
      if (sat.none()) {
        ++interior_;
        continue;
      }
      for (auto& by_dim : faces_)
        for (auto& face : by_dim) {
          if (!face.facets.is_subset_of(sat)) continue;
          face.lattice_points.push_back(x);
          if (face.facets == sat) ++face.interior_count;
        }
    }
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }

  /// Faces of dimension d, 0 <= d < n.
  const std::vector<Face>& faces(std::size_t d) const { return faces_.at(d); }
  const Face& face(FaceId id) const { return faces_.at(id.dim).at(id.index); }

  std::size_t count(std::size_t d) const { return d < faces_.size() ? faces_[d].size() : 0; }

  /// Lattice points in the interior of the polytope itself.
  std::size_t interior_points() const noexcept { return interior_; }

  std::optional<FaceId> find(const std::vector<std::size_t>& sorted_vertex_indices) const {
    auto it = index_.find(sorted_vertex_indices);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Faces of dimension d contained in face `id` (d < id.dim).
  std::vector<FaceId> subfaces(FaceId id, std::size_t d) const {
    std::vector<FaceId> out;
    const auto& outer = face(id).vertex_indices;
    for (std::size_t i = 0; i < faces_.at(d).size(); ++i)
      if (std::includes(outer.begin(), outer.end(), faces_[d][i].vertex_indices.begin(),
                        faces_[d][i].vertex_indices.end()))
        out.push_back({d, i});
    return out;
  }

  /// Faces of dimension d containing face `id` (d > id.dim).
  std::vector<FaceId> superfaces(FaceId id, std::size_t d) const {
    std::vector<FaceId> out;
    const auto& inner = face(id).vertex_indices;
    for (std::size_t i = 0; i < faces_.at(d).size(); ++i)
      if (std::includes(faces_[d][i].vertex_indices.begin(), faces_[d][i].vertex_indices.end(), inner.begin(),
                        inner.end()))
        out.push_back({d, i});
    return out;
  }

 private:
  void add_face(Face face) {
    const FaceId id{face.dim, faces_[face.dim].size()};
    index_.emplace(face.vertex_indices, id);
    faces_[face.dim].push_back(std::move(face));
  }

  std::size_t ambient_dim_ = 0;
  std::vector<std::vector<Face>> faces_;
  std::map<std::vector<std::size_t>, FaceId> index_;
  std::size_t interior_ = 0;
};

inline FaceLattice face_lattice(const Polytope& p) { return FaceLattice(p); }

inline std::size_t interior_points(const Face& f) { return f.interior_count; }

/// A reflexive polytope together with its polar and both face lattices,
/// with the inclusion-reversing face duality precomputed.
class ReflexivePair {
 public:
  explicit ReflexivePair(Polytope p)
      : polytope_(std::move(p)), polar_(polar(polytope_)), faces_(polytope_), polar_faces_(polar_) {}

  const Polytope& polytope() const noexcept { return polytope_; }
  const Polytope& polar_polytope() const noexcept { return polar_; }
  const FaceLattice& faces() const noexcept { return faces_; }
  const FaceLattice& polar_faces() const noexcept { return polar_faces_; }
  std::size_t dim() const noexcept { return polytope_.dim(); }

  /// The face of the polar pairing to -1 with the given face of the polytope.
  FaceId dual(FaceId id) const { return dual_in(faces_, polar_faces_, id); }

  /// The face of the polytope pairing to -1 with a face of the polar.
  FaceId polar_dual(FaceId id) const { return dual_in(polar_faces_, faces_, id); }

  const Face& dual_face(FaceId id) const { return polar_faces_.face(dual(id)); }

 private:
  // Vertex i of the polar is facet i of the polytope and vice versa, so the
  // dual face's vertex set is the facet set of the face.
  static FaceId dual_in(const FaceLattice& from, const FaceLattice& to, FaceId id) {
    const Face& f = from.face(id);
    std::vector<std::size_t> verts;
    for (auto i = f.facets.find_first(); i != FacetSet::npos; i = f.facets.find_next(i)) verts.push_back(i);
    auto found = to.find(verts);
    if (!found) throw Error(ErrorKind::NotReflexive, "dual face not found in polar face lattice");
    return *found;
  }

  Polytope polytope_;
  Polytope polar_;
  FaceLattice faces_;
  FaceLattice polar_faces_;
};

/// Lattice polytope of any dimension sitting in Z^n, handled through a
/// unimodular affine chart onto Z^d of its affine span. Interior counts are
/// relative to that span.
class RelativePolytope {
 public:
  explicit RelativePolytope(const std::vector<LatticeVector>& points) {
    if (points.empty()) throw Error(ErrorKind::NotFullDimensional, "empty point set");
    ambient_ = points.front().size();
    origin_ = points.front();
    std::vector<LatticeVector> diffs;
    for (const auto& p : points) {
      if (p.size() != ambient_) throw Error(ErrorKind::LatticeMismatch, "points of different rank");
      diffs.push_back(p - origin_);
    }
    const auto s = smith_normal_form(IntMatrix::from_columns(ambient_, diffs));
    dim_ = s.rank();
    chart_.assign(dim_, LatticeVector(ambient_));
    inverse_.assign(dim_, LatticeVector(ambient_));
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < ambient_; ++c) {
        chart_[r][c] = to_int64(s.u(r, c));
        inverse_[r][c] = to_int64(s.u_inverse(c, r));
      }
    std::vector<LatticeVector> local;
    for (const auto& p : points) local.push_back(to_local(p));
    intrinsic_ = Polytope::from_points(local);
    for (const auto& v : intrinsic_.vertices()) vertices_.push_back(to_ambient(v));
  }

  explicit RelativePolytope(const Polytope& p) : RelativePolytope(p.vertices()) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  const std::vector<LatticeVector>& vertices() const noexcept { return vertices_; }
  const Polytope& intrinsic() const noexcept { return intrinsic_; }

  LatticeVector to_local(const LatticeVector& x) const {
    LatticeVector d = x - origin_;
    LatticeVector y(dim_);
    for (std::size_t r = 0; r < dim_; ++r) y[r] = dot(chart_[r], d);
    return y;
  }

  LatticeVector to_ambient(const LatticeVector& y) const {
    LatticeVector x = origin_;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < ambient_; ++c) x[c] += y[r] * inverse_[r][c];
    return x;
  }

  std::vector<LatticeVector> lattice_points() const {
    std::vector<LatticeVector> out;
    for (const auto& y : cytop::lattice_points(intrinsic_)) out.push_back(to_ambient(y));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t lattice_point_count() const { return cytop::lattice_points(intrinsic_).size(); }
  std::size_t interior_count() const { return interior_point_count(intrinsic_); }

 private:
  std::size_t ambient_ = 0;
  std::size_t dim_ = 0;
  LatticeVector origin_;
  std::vector<LatticeVector> chart_;    // rows: ambient -> local coordinates
  std::vector<LatticeVector> inverse_;  // rows: local basis vectors in ambient space
  Polytope intrinsic_;
  std::vector<LatticeVector> vertices_;
};

/// Minkowski sum as the hull of pairwise vertex sums.
inline RelativePolytope minkowski_sum(const std::vector<LatticeVector>& a, const std::vector<LatticeVector>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::NotFullDimensional, "empty summand");
  if (a.front().size() != b.front().size()) throw Error(ErrorKind::LatticeMismatch, "summands live in different lattices");
  std::vector<LatticeVector> sums;
  for (const auto& x : a)
    for (const auto& y : b) sums.push_back(x + y);
  return RelativePolytope(sums);
}

inline RelativePolytope minkowski_sum(const RelativePolytope& a, const RelativePolytope& b) {
  return minkowski_sum(a.vertices(), b.vertices());
}

/// Vertex coordinates of a face.
inline std::vector<LatticeVector> face_vertices(const Polytope& p, const Face& f) {
  std::vector<LatticeVector> out;
  for (auto i : f.vertex_indices) out.push_back(p.vertices()[i]);
  return out;
}

}  // namespace cytop
