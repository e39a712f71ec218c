#pragma once
// Canonical forms and isomorphism testing.  Components are trees, so a
// canonical encoding is obtained by rooting each component at every vertex in
// turn, encoding the rooted decorated tree with sorted child lists, and
// keeping the lexicographically smallest string.  Two graphs are isomorphic
// iff their canonical forms agree.

#include <sstream>

#include "graph.hpp"

namespace rspin {
namespace detail {

inline std::string encode_tail(const HalfEdge& he) {
  std::ostringstream o;
  o << "T[" << to_string(he.sector) << ",tw=" << he.tw;
  if (he.sector == Sector::Boundary) o << ",alt=" << he.alt;
  if (he.contracted_boundary) o << ",cb";
  if (he.anchor) o << ",anchor";
  if (he.marking) {
    o << ",m={";
    bool first = true;
    for (int m : *he.marking) {
      if (!first) o << ",";
      first = false;
      o << m;
    }
    o << "}";
  }
  o << "]";
  return o.str();
}

inline std::string encode_half(const HalfEdge& he) {
  std::ostringstream o;
  o << to_string(he.sector) << ",tw=" << he.tw;
  if (he.sector == Sector::Boundary) o << ",alt=" << he.alt;
  return o.str();
}

// Encode the subtree hanging off vertex v; `from` is the half-edge at v
// leading back toward the root (empty at the root).
inline std::string encode_vertex(const RSpinGraph& g, const std::string& v,
                                 const std::string& from) {
  std::vector<std::string> items;
  for (const auto& h : g.incident(v)) {
    if (h == from) continue;
    const HalfEdge& he = g.half(h);
    if (g.is_tail(h)) {
      items.push_back(encode_tail(he));
    } else {
      const std::string& p = g.partner(h);
      items.push_back("E[" + encode_half(he) + "|" + encode_half(g.half(p)) + "|" +
                      encode_vertex(g, g.half(p).vertex, p) + "]");
    }
  }
  std::sort(items.begin(), items.end());
  std::ostringstream o;
  o << (g.vertex_is_open(v) ? "O(" : "C(");
  for (const auto& s : items) o << s;
  o << ")";
  return o.str();
}

}  // namespace detail

inline std::string canonical_form(const RSpinGraph& g) {
  std::vector<std::string> comp_codes;
  for (const auto& comp : g.components()) {
    std::string best;
    for (const auto& root : comp) {
      std::string code = detail::encode_vertex(g, root, "");
      if (best.empty() || code < best) best = code;
    }
    comp_codes.push_back(best);
  }
  std::sort(comp_codes.begin(), comp_codes.end());
  std::ostringstream o;
  o << "r=" << g.r << (g.extended ? ";ext" : "") << ";";
  for (const auto& c : comp_codes) o << c << ";";
  return o.str();
}

inline bool are_isomorphic(const RSpinGraph& g1, const RSpinGraph& g2) {
  if (g1.r != g2.r) return false;
  return canonical_form(g1) == canonical_form(g2);
}

}  // namespace rspin
