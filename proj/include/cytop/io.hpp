#pragma once

// Text formats: polytope files (PALP-style integer matrices), NEF partition
// files, and the structured reports written by the command-line tool.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cytop/errors.hpp"
#include "cytop/face_models.hpp"
#include "cytop/invariants.hpp"
#include "cytop/ktheory.hpp"
#include "cytop/nef.hpp"
#include "cytop/polytope.hpp"
#include "cytop/strata.hpp"

namespace cytop {

using Json = nlohmann::ordered_json;

namespace detail {

inline bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

inline std::optional<long long> parse_int(const std::string& token) {
  std::size_t used = 0;
  try {
    const long long v = std::stoll(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace detail

/// One record of a polytope stream: the points, or the reason it failed to
/// parse.
struct PolytopeRecord {
  std::size_t line = 0;  // 1-based line of the header
  std::vector<LatticeVector> points;
  std::optional<std::string> error;
};

/// Reads every record of a stream. A record is a header "r c" (extra header
/// text is ignored) followed by r rows of c integers; with r < c the columns
/// are the points, otherwise the rows. A malformed record still consumes its
/// declared rows so that later records are read correctly.
inline std::vector<PolytopeRecord> read_polytope_records(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (!detail::skippable(line)) lines.emplace_back(number, line);
  }

  std::vector<PolytopeRecord> records;
  std::size_t i = 0;
  while (i < lines.size()) {
    PolytopeRecord rec;
    rec.line = lines[i].first;
    const auto head = detail::tokens(lines[i].second);
    ++i;
    std::optional<long long> r, c;
    if (head.size() >= 2) {
      r = detail::parse_int(head[0]);
      c = detail::parse_int(head[1]);
    }
    if (!r || !c || *r <= 0 || *c <= 0) {
      rec.error = "line " + std::to_string(rec.line) + ": expected a header with two positive integers";
      records.push_back(std::move(rec));
      continue;
    }
    const auto rows = static_cast<std::size_t>(*r), cols = static_cast<std::size_t>(*c);
    std::vector<std::vector<long long>> matrix;
    for (std::size_t k = 0; k < rows; ++k, ++i) {
      if (i >= lines.size()) {
        if (!rec.error) rec.error = "line " + std::to_string(rec.line) + ": record ends after " + std::to_string(k) + " of " + std::to_string(rows) + " rows";
        break;
      }
      const auto toks = detail::tokens(lines[i].second);
      std::vector<long long> row;
      for (const auto& t : toks) {
        auto v = detail::parse_int(t);
        if (!v) {
          if (!rec.error) rec.error = "line " + std::to_string(lines[i].first) + ": '" + t + "' is not an integer";
          break;
        }
        row.push_back(*v);
      }
      if (!rec.error && row.size() != cols)
        rec.error = "line " + std::to_string(lines[i].first) + ": expected " + std::to_string(cols) + " integers, found " + std::to_string(toks.size());
      matrix.push_back(std::move(row));
    }
    if (!rec.error) {
      if (rows < cols) {
        for (std::size_t j = 0; j < cols; ++j) {
          LatticeVector p(rows);
          for (std::size_t k = 0; k < rows; ++k) p[k] = matrix[k][j];
          rec.points.push_back(std::move(p));
        }
      } else {
        rec.points.assign(matrix.begin(), matrix.end());
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

/// Reads exactly one polytope; anything else is a Parse error.
inline std::vector<LatticeVector> read_polytope(std::istream& in) {
  auto records = read_polytope_records(in);
  if (records.empty()) throw Error(ErrorKind::Parse, "no polytope record found");
  if (records.size() > 1) throw Error(ErrorKind::Parse, "expected one record, found " + std::to_string(records.size()));
  if (records.front().error) throw Error(ErrorKind::Parse, *records.front().error);
  return records.front().points;
}

/// Points as a file with one column per point.
inline void write_polytope(std::ostream& out, const std::vector<LatticeVector>& points) {
  const std::size_t n = points.empty() ? 0 : points.front().size();
  out << n << ' ' << points.size() << '\n';
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < points.size(); ++j) out << (j ? " " : "") << points[j][k];
    out << '\n';
  }
}

/// One part per line, as 0-based vertex indices.
inline std::vector<std::vector<std::size_t>> read_partition(std::istream& in) {
  std::vector<std::vector<std::size_t>> parts;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (detail::skippable(line)) continue;
    std::vector<std::size_t> part;
    for (const auto& t : detail::tokens(line)) {
      auto v = detail::parse_int(t);
      if (!v || *v < 0) throw Error(ErrorKind::Parse, "partition line " + std::to_string(number) + ": bad index '" + t + "'");
      part.push_back(static_cast<std::size_t>(*v));
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

// Reports.

inline Json group_json(const AbelianGroup& g) {
  Json factors = Json::array();
  for (const auto& d : g.invariant_factors()) factors.push_back(to_int64(d));
  return Json{{"rank", g.rank()}, {"torsion", factors}};
}

inline Json points_json(const std::vector<LatticeVector>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(p);
  return out;
}

inline Json census_json(const FaceLattice& faces, std::size_t total_points) {
  const std::size_t n = faces.ambient_dim();
  Json c;
  c["vertices"] = faces.count(0);
  c["edges"] = faces.count(1);
  c["two_faces"] = faces.count(2);
  c["facets"] = n == 0 ? 0 : faces.count(n - 1);
  Json fvec = Json::array();
  for (std::size_t d = 0; d < n; ++d) fvec.push_back(faces.count(d));
  c["f_vector"] = fvec;
  c["lattice_points"] = total_points;
  c["interior_points"] = faces.interior_points();
  // Relative interior counts, one list per face dimension from 1 up.
  Json interiors = Json::array();
  for (std::size_t d = 1; d < n; ++d) {
    Json l = Json::array();
    for (const auto& f : faces.faces(d)) l.push_back(f.interior_count);
    interiors.push_back(l);
  }
  c["face_interior_points"] = interiors;
  return c;
}

inline Json hodge_json(const HodgeSummary& h) {
  return Json{{"h11", h.h11},         {"h21", h.h21},         {"h11_toric", h.h11_toric}, {"h21_poly", h.h21_poly},
              {"corr_11", h.corr_11}, {"corr_21", h.corr_21}, {"euler", h.euler}};
}

/// Full analysis of a reflexive polytope. Without a partition the polytope
/// must be 4-dimensional (hypersurface mode).
inline Json analyze_report(const std::vector<LatticeVector>& input,
                           const std::optional<std::vector<std::vector<std::size_t>>>& parts = std::nullopt) {
  Polytope p = Polytope::from_points(input);
  if (!p.is_reflexive()) throw Error(ErrorKind::NotReflexive, "some facet lies at lattice distance > 1 from the origin");
  if (p.dim() != 4 && !parts)
    throw Error(ErrorKind::WrongDimension, "hypersurface mode needs a 4-dimensional polytope, got " + std::to_string(p.dim()));
  ReflexivePair pair(p);
  std::optional<NefPartition> np;
  if (parts) np = validate_nef_partition(p, *parts);
  const GeometryConfig cfg = np ? GeometryConfig::complete_intersection(pair, *np) : GeometryConfig::hypersurface(pair);

  Json r;
  r["input"] = Json{{"dim", p.dim()}, {"points", points_json(input)}};
  r["reflexive"] = true;
  r["mode"] = cfg.is_hypersurface() ? "hypersurface" : "complete_intersection";
  r["vertices"] = points_json(p.vertices());
  r["faces"] = census_json(pair.faces(), lattice_points(p).size());
  r["polar"] = Json{{"vertices", points_json(pair.polar_polytope().vertices())},
                    {"faces", census_json(pair.polar_faces(), lattice_points(pair.polar_polytope()).size())}};
  if (np) {
    Json parts_json = Json::array(), ample = Json::array(), nabla = Json::array();
    for (std::size_t i = 0; i < np->part_count(); ++i) {
      parts_json.push_back(np->parts()[i]);
      ample.push_back(np->is_ample(i));
      nabla.push_back(points_json(np->nabla(i).vertices()));
    }
    r["nef"] = Json{{"parts", parts_json}, {"ample", ample}, {"nabla_vertices", nabla}};
  }
  if (p.dim() == 4) r["hodge"] = hodge_json(hodge_numbers(pair));

  const auto homology = homology_summary(pair, cfg);
  Json hom;
  for (std::size_t k = 0; k < 7; ++k)
    hom["H" + std::to_string(k)] = homology.h[k] ? group_json(*homology.h[k]) : Json(nullptr);
  hom["tor_h2_presentation"] = group_json(cokernel(detail::wedge_generators(p)));
  r["homology"] = hom;

  const auto strata = stratum_counts(pair, cfg);
  Json edges = Json::array(), two_faces = Json::array();
  for (const auto& e : strata.edges)
    edges.push_back(Json{{"edge", e.edge.index},
                         {"interior_points", pair.faces().face(e.edge).interior_count},
                         {"genus", e.genus},
                         {"h1_rank", e.h1_rank}});
  for (const auto& f : strata.two_faces)
    two_faces.push_back(
        Json{{"face", f.face.index}, {"interior_points", pair.faces().face(f.face).interior_count}, {"points", f.points}});
  r["strata"] = Json{{"edges", edges},
                     {"two_faces", two_faces},
                     {"rank_h2", rank_h2(pair, cfg)},
                     {"ker_rho_h3_rank", ker_rho_h3_rank(pair, cfg)}};

  if (homology.complete()) {
    const auto k = k_groups(homology);
    r["ktheory"] = Json{{"K0", group_json(k.k0)}, {"K1", group_json(k.k1)}};
  } else {
    r["ktheory"] = nullptr;
  }
  return r;
}

namespace detail {

// Arrays of scalars or of scalar arrays, and short objects of scalars, print
// on one line.
inline bool flat(const Json& j) {
  if (j.is_object())
    return j.dump().size() <= 80 && std::all_of(j.begin(), j.end(), [](const Json& x) {
             return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); }));
           });
  if (!j.is_array()) return true;
  for (const auto& x : j)
    if (x.is_object() || (x.is_array() && !std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })))
      return false;
  return true;
}

inline void pretty(std::ostream& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  if (flat(j) || j.empty()) {
    out << j.dump();
  } else if (j.is_object()) {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << Json(key).dump() << ": ";
      pretty(out, value, depth + 1);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << close << '}';
  } else {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      pretty(out, j[i], depth + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << close << ']';
  }
}

}  // namespace detail

/// Indented JSON in which point lists, groups and other small records stay on
/// one line.
inline std::string format_report(const Json& j) {
  std::ostringstream out;
  detail::pretty(out, j, 0);
  out << '\n';
  return out.str();
}

inline Json error_json(const Error& e) { return Json{{"kind", to_string(e.kind())}, {"message", e.what()}}; }

/// Single-line summary of an analysis report.
inline std::string summary_line(const Json& report) {
  std::ostringstream s;
  const auto& f = report["faces"];
  s << "dim=" << report["input"]["dim"].get<long long>() << " faces=" << f["vertices"].get<long long>() << '/'
    << f["edges"].get<long long>() << '/' << f["two_faces"].get<long long>() << '/' << f["facets"].get<long long>();
  if (report.contains("hodge"))
    s << " h11=" << report["hodge"]["h11"].get<long long>() << " h21=" << report["hodge"]["h21"].get<long long>()
      << " euler=" << report["hodge"]["euler"].get<long long>();
  auto torsion = [](const Json& g) {
    std::string t;
    for (const auto& d : g["torsion"]) t += (t.empty() ? "" : ",") + std::to_string(d.get<long long>());
    return t.empty() ? std::string("0") : t;
  };
  s << " torH1=" << torsion(report["homology"]["H1"]) << " torH2=" << torsion(report["homology"]["H2"]);
  return s.str();
}

// Face laboratory.

inline Json triangulation_json(const Triangulation2D& t) {
  const auto dc = dual_complex(t);
  const auto trace = shelling(t);
  const auto betti = model_homology(t);
  Json s2 = Json::array(), s1 = Json::array();
  for (const auto& c : dc.sigma2) s2.push_back(Json{{"cells", {c.vertices, c.edges, c.faces}}, {"euler", c.euler()}});
  for (const auto& c : dc.sigma1) s1.push_back(Json{{"cells", {c.vertices, c.edges}}, {"euler", c.euler()}});
  Json moves = Json::array();
  for (const auto& m : trace.moves)
    moves.push_back(std::string(m.type == MoveType::A ? "A" : m.type == MoveType::B ? "B" : "C") +
                    std::to_string(m.triangle));
  return Json{{"triangles", t.triangles().size()},
              {"unimodular", t.is_unimodular()},
              {"dual_complex",
               {{"zero_cells", dc.zero_cells},
                {"one_cells", dc.one_cells},
                {"two_cells", dc.two_cells},
                {"max_valence", dc.max_valence},
                {"sigma2_components", s2},
                {"sigma2_contractible", dc.sigma2_contractible()},
                {"sigma1_components", s1},
                {"sigma1_forest", dc.sigma1_forest()},
                {"junctions_trivalent", dc.junctions_trivalent}}},
              {"shelling",
               {{"A", trace.count(MoveType::A)}, {"B", trace.count(MoveType::B)}, {"C", trace.count(MoveType::C)}, {"moves", moves}}},
              {"betti", betti},
              {"b2_formula", betti[2]},
              {"b2_trace", trace.count(MoveType::B)}};
}

/// Applies `flips` random flips, each seeded from a generator seeded by `seed`.
inline Triangulation2D flip_sequence(Triangulation2D t, std::size_t flips, std::uint64_t seed) {
  std::mt19937_64 seeds(seed);
  for (std::size_t i = 0; i < flips; ++i) t = random_flip(t, seeds());
  return t;
}

inline Json face_lab_report(const std::vector<LatticeVector>& input, std::size_t face_index, std::size_t flips,
                            std::uint64_t seed, Triangulation2D* final_triangulation = nullptr) {
  Polytope p = Polytope::from_points(input);
  FaceLattice faces(p);
  if (p.dim() < 3 || face_index >= faces.count(2))
    throw Error(ErrorKind::BadFaceIndex, "no two-face with index " + std::to_string(face_index) + " (there are " +
                                             std::to_string(p.dim() < 3 ? 0 : faces.count(2)) + ")");
  const Face& f = faces.faces(2)[face_index];
  const auto t0 = maximal_triangulation(f);
  Json r;
  r["face"] = face_index;
  r["vertices"] = points_json(face_vertices(p, f));
  r["polygon"] = Json{{"interior_points", t0.interior_point_count()},
                      {"boundary_points", t0.boundary_point_count()},
                      {"corners", t0.corner_count()},
                      {"edge_interior_points", t0.boundary_point_count() - t0.corner_count()}};
  Json pts = Json::array();
  for (const auto& q : t0.points()) pts.push_back(q);
  r["local_points"] = pts;
  r["initial"] = triangulation_json(t0);
  const auto t1 = flip_sequence(t0, flips, seed);
  if (flips > 0) r["flipped"] = Json{{"flips", flips}, {"seed", seed}, {"result", triangulation_json(t1)}};
  if (final_triangulation) *final_triangulation = t1;
  return r;
}

}  // namespace cytop
