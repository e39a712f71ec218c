#pragma once
// Core data model for genus-zero graded r-spin dual graphs.
//
// A graph consists of open/closed vertices, decorated half-edges and a
// partial pairing (involution) on them.  Half-edges not in the pairing are
// tails; tails carry markings (a set of positive integers, or the empty set
// standing for the zero-marker) except contracted-boundary tails, which are
// unmarked.  All values are immutable in practice: every operation copies.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rspin {

// Empty set == the zero-marker.
using Marking = std::set<int>;

enum class Sector { Boundary, Internal };
enum class VertexKind { Open, Closed };

inline const char* to_string(Sector s) {
  return s == Sector::Boundary ? "boundary" : "internal";
}
inline const char* to_string(VertexKind k) {
  return k == VertexKind::Open ? "open" : "closed";
}

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};
// Malformed input document (missing fields, bad types, r < 2, ...).
struct ParseError : GraphError {
  using GraphError::GraphError;
};
// Well-typed document describing an incoherent graph (dangling vertex
// reference, non-involutive pairing, marking on a non-tail, ...).
struct StructureError : GraphError {
  using GraphError::GraphError;
};
// Semantic precondition violation of an operation.
struct PreconditionError : GraphError {
  using GraphError::GraphError;
};

struct HalfEdge {
  std::string id;
  std::string vertex;
  Sector sector = Sector::Internal;
  int tw = 0;
  int alt = 0;  // meaningful for boundary half-edges only
  std::optional<Marking> marking;  // engaged iff tail and not contracted-boundary
  bool contracted_boundary = false;
  bool anchor = false;
};

struct RSpinGraph {
  int r = 2;
  // Extended-twist regime: internal tail twists >= r are tolerated by
  // validation only when this tag is set.
  bool extended = false;
  std::map<std::string, VertexKind> vertices;
  std::map<std::string, HalfEdge> half_edges;
  // Stored symmetrically: pairing[h] == h' and pairing[h'] == h.
  std::map<std::string, std::string> pairing;

  bool is_tail(const std::string& h) const { return !pairing.count(h); }

  const HalfEdge& half(const std::string& h) const {
    auto it = half_edges.find(h);
    if (it == half_edges.end()) throw PreconditionError("no half-edge '" + h + "'");
    return it->second;
  }

  const std::string& partner(const std::string& h) const {
    auto it = pairing.find(h);
    if (it == pairing.end()) throw PreconditionError("half-edge '" + h + "' is a tail");
    return it->second;
  }

  // Each edge reported once, as the id-ordered pair.
  std::vector<std::pair<std::string, std::string>> edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [h, p] : pairing)
      if (h < p) out.emplace_back(h, p);
    return out;
  }

  std::vector<std::string> incident(const std::string& v) const {
    std::vector<std::string> out;
    for (const auto& [id, he] : half_edges)
      if (he.vertex == v) out.push_back(id);
    return out;
  }

  int boundary_valence(const std::string& v) const {  // k(v)
    int n = 0;
    for (const auto& [id, he] : half_edges)
      if (he.vertex == v && he.sector == Sector::Boundary) ++n;
    return n;
  }

  int internal_valence(const std::string& v) const {  // l(v)
    int n = 0;
    for (const auto& [id, he] : half_edges)
      if (he.vertex == v && he.sector == Sector::Internal) ++n;
    return n;
  }

  // Connected components as sorted vertex-id lists, edges providing the
  // adjacency.  Isolated vertices form their own components.
  std::vector<std::vector<std::string>> components() const {
    std::map<std::string, std::string> parent;
    for (const auto& [v, kind] : vertices) parent[v] = v;
    auto find = [&](std::string v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& [h, p] : pairing) {
      auto a = find(half(h).vertex), b = find(half(p).vertex);
      if (a != b) parent[a] = b;
    }
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [v, kind] : vertices) groups[find(v)].push_back(v);
    std::vector<std::vector<std::string>> out;
    for (auto& [root, vs] : groups) {
      std::sort(vs.begin(), vs.end());
      out.push_back(vs);
    }
    return out;
  }

  // Component containing v, optionally treating one edge as removed.
  std::vector<std::string> component_of(const std::string& v,
                                        const std::string& skip_half = "") const {
    std::set<std::string> seen{v};
    std::vector<std::string> stack{v};
    std::string skip_partner = skip_half.empty() ? "" : partner(skip_half);
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      for (const auto& [h, p] : pairing) {
        if (h == skip_half || h == skip_partner) continue;
        if (half(h).vertex != cur) continue;
        const std::string& other = half(p).vertex;
        if (seen.insert(other).second) stack.push_back(other);
      }
    }
    return {seen.begin(), seen.end()};
  }

  bool vertex_is_open(const std::string& v) const {
    auto it = vertices.find(v);
    if (it == vertices.end()) throw PreconditionError("no vertex '" + v + "'");
    return it->second == VertexKind::Open;
  }

  // Structural well-formedness; throws StructureError.  Semantic validation
  // (the twist/lifting axioms) lives in validate.hpp.
  void check_structure() const {
    if (r < 2) throw StructureError("r must be >= 2");
    for (const auto& [id, he] : half_edges) {
      if (id != he.id) throw StructureError("half-edge key/id mismatch at '" + id + "'");
      if (!vertices.count(he.vertex))
        throw StructureError("half-edge '" + id + "' references unknown vertex '" +
                             he.vertex + "'");
      if (he.sector == Sector::Boundary) {
        if (he.alt != 0 && he.alt != 1)
          throw StructureError("half-edge '" + id + "': alt must be 0 or 1");
        if (he.contracted_boundary)
          throw StructureError("half-edge '" + id +
                               "': contracted-boundary flag on a boundary half-edge");
      }
      int hi = (extended && he.sector == Sector::Internal) ? 10 * r : r - 1;
      if (he.tw < -1 || he.tw > hi)
        throw StructureError("half-edge '" + id + "': twist " + std::to_string(he.tw) +
                             " out of range for r=" + std::to_string(r));
    }
    for (const auto& [h, p] : pairing) {
      if (!half_edges.count(h) || !half_edges.count(p))
        throw StructureError("pairing references unknown half-edge");
      if (h == p) throw StructureError("half-edge '" + h + "' paired with itself");
      auto back = pairing.find(p);
      if (back == pairing.end() || back->second != h)
        throw StructureError("pairing is not an involution at '" + h + "'");
      if (half(h).sector != half(p).sector)
        throw StructureError("edge (" + h + "," + p + ") pairs different sectors");
      const HalfEdge& he = half(h);
      if (he.marking) throw StructureError("paired half-edge '" + h + "' carries a marking");
      if (he.contracted_boundary)
        throw StructureError("paired half-edge '" + h + "' flagged contracted-boundary");
      if (he.anchor) throw StructureError("paired half-edge '" + h + "' flagged anchor");
    }
    for (const auto& [id, he] : half_edges) {
      if (pairing.count(id)) continue;  // tails checked here
      if (he.contracted_boundary) {
        if (he.marking)
          throw StructureError("contracted-boundary tail '" + id + "' carries a marking");
      } else if (!he.marking) {
        throw StructureError("tail '" + id + "' is missing its marking");
      }
      if (he.anchor && he.sector != Sector::Internal)
        throw StructureError("anchor '" + id + "' is not an internal tail");
    }
  }
};

// Representative of x mod r in {-1, 0, ..., r-2}.
inline int mod_prime(long long x, int r) {
  int m = static_cast<int>(((x % r) + r) % r);
  return m == r - 1 ? -1 : m;
}

// Representative in {0, ..., r-1}.
inline int mod_pos(long long x, int r) {
  return static_cast<int>(((x % r) + r) % r);
}

}  // namespace rspin
