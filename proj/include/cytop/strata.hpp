#pragma once

// Counting invariants of the intersection of the Calabi-Yau Y with torus
// orbits of the ambient toric variety: Khovanskii-style alternating sums
// over Newton polytopes, genera of the curves over edges and point counts
// over two-faces.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "cytop/errors.hpp"
#include "cytop/nef.hpp"
#include "cytop/polytope.hpp"

namespace cytop {

/// Hypersurface (dimension 4, anticanonical) or complete intersection
/// (dimension k + 3 with an all-ample NEF partition into k parts).
class GeometryConfig {
 public:
  static GeometryConfig hypersurface(const ReflexivePair& pair) {
    if (pair.dim() != 4)
      throw Error(ErrorKind::WrongDimension, "hypersurface mode needs a 4-dimensional polytope, got " +
                                                 std::to_string(pair.dim()));
    return GeometryConfig();
  }

  static GeometryConfig complete_intersection(const ReflexivePair& pair, NefPartition partition) {
    const std::size_t k = partition.part_count();
    if (pair.dim() != k + 3)
      throw Error(ErrorKind::WrongDimension, "a " + std::to_string(k) + "-part partition needs dimension " +
                                                 std::to_string(k + 3) + ", got " + std::to_string(pair.dim()));
    for (std::size_t i = 0; i < k; ++i)
      if (!partition.is_ample(i))
        throw Error(ErrorKind::NotAmple, "part " + std::to_string(i) + " is nef but not ample");
    GeometryConfig cfg;
    cfg.partition_ = std::move(partition);
    return cfg;
  }

  bool is_hypersurface() const noexcept { return !partition_.has_value(); }
  const NefPartition& partition() const {
    if (!partition_) throw Error(ErrorKind::ConfigMismatch, "hypersurface mode has no partition");
    return *partition_;
  }

 private:
  GeometryConfig() = default;
  std::optional<NefPartition> partition_;
};

/// (-1)^dim(q) times the number of lattice points of q.
inline long long b_functional(const RelativePolytope& q) {
  const long long count = static_cast<long long>(q.lattice_point_count());
  return q.dim() % 2 == 0 ? count : -count;
}

namespace detail {

inline void require_same_lattice(const std::vector<RelativePolytope>& polys) {
  if (polys.empty()) throw Error(ErrorKind::LatticeMismatch, "no Newton polytopes");
  for (const auto& q : polys)
    if (q.ambient_dim() != polys.front().ambient_dim())
      throw Error(ErrorKind::LatticeMismatch, "Newton polytopes in different lattices");
}

// Calls visit(|J|, sum over J) for every nonempty subset J.
template <typename Visit>
void for_each_subset_sum(const std::vector<RelativePolytope>& polys, Visit&& visit) {
  const std::size_t k = polys.size();
  for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
    std::vector<LatticeVector> acc;
    std::size_t size = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask & (1ul << j))) continue;
      ++size;
      acc = acc.empty() ? polys[j].vertices() : minkowski_sum(acc, polys[j].vertices()).vertices();
    }
    visit(size, RelativePolytope(acc));
  }
}

}  // namespace detail

/// 1 + sum over nonempty J of (-1)^|J| B(sum_{j in J} q_j).
inline long long chi_affine(const std::vector<RelativePolytope>& newton) {
  detail::require_same_lattice(newton);
  long long chi = 1;
  detail::for_each_subset_sum(newton, [&](std::size_t size, const RelativePolytope& sum) {
    chi += (size % 2 == 0 ? 1 : -1) * b_functional(sum);
  });
  return chi;
}

/// Arithmetic genus of the closure of a generic complete intersection in a
/// torus with the given Newton polytopes: the same alternating sum with
/// each B replaced by (-1)^dim times the relative interior count.
inline long long compact_arithmetic_genus(const std::vector<RelativePolytope>& newton) {
  detail::require_same_lattice(newton);
  long long chi = 1;
  detail::for_each_subset_sum(newton, [&](std::size_t size, const RelativePolytope& sum) {
    const long long interior = static_cast<long long>(sum.interior_count());
    const long long b = sum.dim() % 2 == 0 ? interior : -interior;
    chi += (size % 2 == 0 ? 1 : -1) * b;
  });
  return chi;
}

/// Newton polytopes of the restriction of the defining sections to the
/// orbit of a face: the dual face in hypersurface mode, and the NEF dual
/// faces in each nabla_j in complete-intersection mode.
inline std::vector<RelativePolytope> orbit_newton_polytopes(const ReflexivePair& pair, const GeometryConfig& cfg,
                                                            FaceId face) {
  if (cfg.is_hypersurface()) return {RelativePolytope(face_vertices(pair.polar_polytope(), pair.dual_face(face)))};
  std::vector<RelativePolytope> out;
  const auto& np = cfg.partition();
  for (std::size_t j = 0; j < np.part_count(); ++j)
    out.push_back(nef_dual_face(np, pair.polytope(), pair.faces().face(face), j));
  return out;
}

/// Genus of the compact curve over an edge.
inline long long edge_curve_genus(const ReflexivePair& pair, const GeometryConfig& cfg, FaceId edge) {
  if (edge.dim != 1) throw Error(ErrorKind::ConfigMismatch, "not an edge");
  if (cfg.is_hypersurface()) return static_cast<long long>(pair.dual_face(edge).interior_count);
  return 1 - compact_arithmetic_genus(orbit_newton_polytopes(pair, cfg, edge));
}

/// Rank of H_1 of the compact curve over an edge (twice its genus).
inline long long edge_curve_h1_rank(const ReflexivePair& pair, const GeometryConfig& cfg, FaceId edge) {
  return 2 * edge_curve_genus(pair, cfg, edge);
}

/// Hypersurface genus recovered from the open-curve alternating sum plus
/// the punctures, one per boundary lattice segment of the dual face.
inline long long edge_curve_genus_from_open_curve(const ReflexivePair& pair, FaceId edge) {
  const auto newton = orbit_newton_polytopes(pair, GeometryConfig::hypersurface(pair), edge);
  const long long open_chi = chi_affine(newton);
  const long long punctures =
      static_cast<long long>(newton.front().lattice_point_count()) - static_cast<long long>(newton.front().interior_count());
  return 1 - (open_chi + punctures);
}

/// Number of points of Y on the orbit of a two-face.
inline long long two_face_point_count(const ReflexivePair& pair, const GeometryConfig& cfg, FaceId face) {
  if (face.dim != 2) throw Error(ErrorKind::ConfigMismatch, "not a two-face");
  if (cfg.is_hypersurface()) return 1 + static_cast<long long>(pair.dual_face(face).interior_count);
  return compact_arithmetic_genus(orbit_newton_polytopes(pair, cfg, face));
}

struct EdgeStratum {
  FaceId edge;
  long long genus = 0;
  long long h1_rank = 0;
};

struct TwoFaceStratum {
  FaceId face;
  long long points = 0;
};

struct StratumCounts {
  std::vector<EdgeStratum> edges;
  std::vector<TwoFaceStratum> two_faces;
};

inline StratumCounts stratum_counts(const ReflexivePair& pair, const GeometryConfig& cfg) {
  StratumCounts out;
  for (std::size_t i = 0; i < pair.faces().count(1); ++i) {
    const FaceId e{1, i};
    const long long g = edge_curve_genus(pair, cfg, e);
    out.edges.push_back({e, g, 2 * g});
  }
  for (std::size_t i = 0; i < pair.faces().count(2); ++i) {
    const FaceId f{2, i};
    out.two_faces.push_back({f, two_face_point_count(pair, cfg, f)});
  }
  return out;
}

}  // namespace cytop
