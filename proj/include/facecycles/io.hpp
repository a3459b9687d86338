#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "facecycles/lattice.hpp"

namespace fc {

using Json = nlohmann::ordered_json;

/**
 * The on-disk polytope format (versioned): UTF-8 JSON with rationals as
 * strings, never floats.
 *
 *   { "format": 1, "dim": 3,
 *     "vertices": [["0","0","0"], ["1","0","1/2"], ...],   // optional
 *     "facets":   [[0,1,2,3], ...] }                        // optional
 *
 * At least one of vertices/facets must be present; facets alone give a
 * combinatorial-only polytope.
 */
struct PolytopeFile {
  int dim = 0;
  std::optional<std::vector<Point>> vertices;
  std::optional<std::vector<std::vector<int>>> facets;

  bool has_coordinates() const { return vertices.has_value(); }

  static PolytopeFile parse(const Json& j) {
    if (!j.is_object()) throw InputError("polytope file: top level must be an object");
    if (!j.contains("format") || !j["format"].is_number_integer() || j["format"] != 1)
      throw InputError("polytope file: missing or unsupported \"format\" (expected 1)");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
      throw InputError("polytope file: missing integer \"dim\"");
    PolytopeFile f;
    f.dim = j["dim"].get<int>();
    if (f.dim < 1) throw InputError("polytope file: dim must be positive");
    if (j.contains("vertices")) {
      if (!j["vertices"].is_array()) throw InputError("polytope file: \"vertices\" must be an array");
      std::vector<Point> pts;
      int row = 0;
      for (const Json& vertex : j["vertices"]) {
        if (!vertex.is_array() || static_cast<int>(vertex.size()) != f.dim)
          throw InputError("polytope file: vertex " + std::to_string(row) +
                           " is not an array of " + std::to_string(f.dim) + " coordinates");
        Point p;
        int col = 0;
        for (const Json& coord : vertex) {
          if (!coord.is_string())
            throw InputError("polytope file: vertex " + std::to_string(row) + " field " +
                             std::to_string(col) + " must be a rational string, not a number");
          try {
            p.push_back(Rational::parse(coord.get<std::string>()));
          } catch (const InputError& e) {
            throw InputError("polytope file: vertex " + std::to_string(row) + " field " +
                             std::to_string(col) + ": " + e.what());
          }
          ++col;
        }
        pts.push_back(std::move(p));
        ++row;
      }
      if (pts.empty()) throw InputError("polytope file: empty vertex list");
      f.vertices = std::move(pts);
    }
    if (j.contains("facets")) {
      if (!j["facets"].is_array()) throw InputError("polytope file: \"facets\" must be an array");
      std::vector<std::vector<int>> facets;
      int row = 0;
      for (const Json& facet : j["facets"]) {
        if (!facet.is_array()) throw InputError("polytope file: facet " + std::to_string(row) +
                                                 " is not an array");
        std::vector<int> fv;
        for (const Json& v : facet) {
          if (!v.is_number_integer())
            throw InputError("polytope file: facet " + std::to_string(row) +
                             " has a non-integer vertex index");
          fv.push_back(v.get<int>());
        }
        facets.push_back(std::move(fv));
        ++row;
      }
      if (facets.empty()) throw InputError("polytope file: empty facet list");
      f.facets = std::move(facets);
    }
    if (!f.vertices && !f.facets)
      throw InputError("polytope file: needs \"vertices\" or \"facets\"");
    return f;
  }

  static PolytopeFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("cannot parse '" + path + "': " + e.what());
    }
    return parse(j);
  }

  Json to_json() const {
    Json j;
    j["format"] = 1;
    j["dim"] = dim;
    if (vertices) {
      Json rows = Json::array();
      for (const Point& p : *vertices) {
        Json row = Json::array();
        for (const Rational& c : p) row.push_back(c.str());
        rows.push_back(std::move(row));
      }
      j["vertices"] = std::move(rows);
    }
    if (facets) j["facets"] = *facets;
    return j;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << to_json().dump(2) << '\n';
  }

  static PolytopeFile from_points(std::vector<Point> pts) {
    PolytopeFile f;
    f.dim = static_cast<int>(pts.front().size());
    f.vertices = std::move(pts);
    return f;
  }

  /// Builds the face lattice (running the hull when only coordinates are
  /// given, validating agreement when both are present).
  FaceLattice lattice() const {
    if (vertices) {
      std::vector<std::vector<int>> fs = facets ? *facets : facet_vertex_sets(*vertices);
      if (facets) {
        std::vector<std::vector<int>> computed = facet_vertex_sets(*vertices);
        std::vector<std::vector<int>> given = *facets;
        for (auto& f : given) std::sort(f.begin(), f.end());
        std::sort(given.begin(), given.end());
        if (given != computed)
          throw InputError("facet list disagrees with the hull of the vertices");
      }
      return build_face_lattice(fs, static_cast<int>(vertices->size()), &*vertices);
    }
    int vertex_count = 0;
    for (const auto& f : *facets)
      for (int v : f) vertex_count = std::max(vertex_count, v + 1);
    return build_face_lattice(*facets, vertex_count);
  }
};

/// FNV-1a over a file's bytes; the input digest quoted in reports.
inline std::string fnv1a_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace fc
