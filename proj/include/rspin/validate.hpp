#pragma once
// Semantic validation of r-spin dual graphs: the pre-stable conditions
// (1)-(4), the twisted/lifting conditions (i)-(ix), anchor and marking rules,
// and the gradedness requirement on boundary tails.  Every rule yields one
// report entry; failures are data, not exceptions.

#include <numeric>
#include <sstream>

#include "graph.hpp"

namespace rspin {

struct RuleResult {
  std::string rule;    // short id, e.g. "edge-twists"
  std::string ref;     // which axiom this checks
  bool pass = true;
  std::string detail;  // human-readable failure notes (empty when passing)
};

struct ValidationReport {
  std::vector<RuleResult> entries;
  bool overall = true;

  void add(std::string rule, std::string ref, bool pass, std::string detail) {
    if (!pass) overall = false;
    entries.push_back({std::move(rule), std::move(ref), pass, std::move(detail)});
  }
};

inline bool is_vertex_stable(const RSpinGraph& g, const std::string& v) {
  int k = g.boundary_valence(v), l = g.internal_valence(v);
  return g.vertex_is_open(v) ? (k + 2 * l > 2) : (l > 2);
}

inline bool is_stable(const RSpinGraph& g) {
  for (const auto& [v, kind] : g.vertices)
    if (!is_vertex_stable(g, v)) return false;
  return true;
}

namespace detail {

// Does the component (a vertex list) contain an anchor tail or an open vertex?
inline bool has_anchor_or_open(const RSpinGraph& g, const std::vector<std::string>& comp) {
  for (const auto& v : comp)
    if (g.vertex_is_open(v)) return true;
  for (const auto& [id, he] : g.half_edges) {
    if (!he.anchor) continue;
    if (std::find(comp.begin(), comp.end(), he.vertex) != comp.end()) return true;
  }
  return false;
}

struct Accum {
  std::ostringstream out;
  bool ok = true;
  template <typename... Ts>
  void fail(Ts&&... parts) {
    if (!ok) out << "; ";
    ok = false;
    (out << ... << parts);
  }
};

}  // namespace detail

inline ValidationReport validate(const RSpinGraph& g) {
  g.check_structure();
  ValidationReport rep;
  const int r = g.r;
  auto comps = g.components();

  // Map: vertex -> component index.
  std::map<std::string, size_t> comp_of;
  for (size_t c = 0; c < comps.size(); ++c)
    for (const auto& v : comps[c]) comp_of[v] = c;

  // ---- pre-stable (1): boundary half-edges attach to open vertices ----
  {
    detail::Accum a;
    for (const auto& [id, he] : g.half_edges)
      if (he.sector == Sector::Boundary && !g.vertex_is_open(he.vertex))
        a.fail("boundary half-edge '", id, "' on closed vertex '", he.vertex, "'");
    rep.add("boundary-on-open", "pre-stable condition (1)", a.ok, a.out.str());
  }

  // ---- pre-stable (2): every component is a tree ----
  {
    detail::Accum a;
    std::vector<size_t> edge_count(comps.size(), 0);
    for (const auto& [h, p] : g.edges()) ++edge_count[comp_of[g.half(h).vertex]];
    for (size_t c = 0; c < comps.size(); ++c)
      if (edge_count[c] != comps[c].size() - 1)
        a.fail("component of '", comps[c].front(), "' has ", edge_count[c], " edges over ",
               comps[c].size(), " vertices (cycle present)");
    rep.add("acyclic", "pre-stable condition (2): h^1 = 0", a.ok, a.out.str());
  }

  // ---- pre-stable (3): at most one contracted-boundary tail per component,
  //      and such a component has only closed vertices ----
  {
    detail::Accum a;
    std::vector<int> cb_count(comps.size(), 0);
    for (const auto& [id, he] : g.half_edges)
      if (he.contracted_boundary) ++cb_count[comp_of[he.vertex]];
    for (size_t c = 0; c < comps.size(); ++c) {
      if (cb_count[c] > 1)
        a.fail("component of '", comps[c].front(), "' has ", cb_count[c],
               " contracted-boundary tails");
      if (cb_count[c] >= 1)
        for (const auto& v : comps[c])
          if (g.vertex_is_open(v))
            a.fail("contracted-boundary component contains open vertex '", v, "'");
    }
    rep.add("cb-tails", "pre-stable condition (3)", a.ok, a.out.str());
  }

  // ---- pre-stable (4): open vertices + boundary edges form a connected
  //      subgraph inside each component ----
  {
    detail::Accum a;
    for (size_t c = 0; c < comps.size(); ++c) {
      std::vector<std::string> open;
      for (const auto& v : comps[c])
        if (g.vertex_is_open(v)) open.push_back(v);
      if (open.size() <= 1) continue;
      std::set<std::string> seen{open.front()};
      std::vector<std::string> stack{open.front()};
      while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (const auto& [h, p] : g.pairing) {
          if (g.half(h).sector != Sector::Boundary) continue;
          if (g.half(h).vertex != cur) continue;
          if (seen.insert(g.half(p).vertex).second) stack.push_back(g.half(p).vertex);
        }
      }
      if (seen.size() != open.size())
        a.fail("open part of component of '", comps[c].front(),
               "' is disconnected through boundary edges");
    }
    rep.add("open-part-connected", "pre-stable condition (4)", a.ok, a.out.str());
  }

  // ---- markings: per component and sector, nonempty markings disjoint ----
  {
    detail::Accum a;
    for (size_t c = 0; c < comps.size(); ++c) {
      for (int sector = 0; sector < 2; ++sector) {
        std::map<int, std::string> used;
        for (const auto& [id, he] : g.half_edges) {
          if (!he.marking || comp_of[he.vertex] != c) continue;
          if ((sector == 0) != (he.sector == Sector::Boundary)) continue;
          for (int m : *he.marking) {
            auto [it, fresh] = used.emplace(m, id);
            if (!fresh)
              a.fail("marking ", m, " used by both '", it->second, "' and '", id, "'");
          }
        }
      }
    }
    rep.add("markings-disjoint", "marking definition: pairwise disjoint per component",
            a.ok, a.out.str());
  }

  // ---- lifting condition (i): unstable components have one of two shapes ----
  {
    detail::Accum a;
    for (const auto& comp : comps) {
      bool stable = true;
      for (const auto& v : comp)
        if (!is_vertex_stable(g, v)) stable = false;
      if (stable) continue;
      bool ok_shape = false;
      if (comp.size() == 1) {
        const auto& v = comp.front();
        auto inc = g.incident(v);
        if (g.vertex_is_open(v)) {
          // an open vertex with a single internal tail
          ok_shape = inc.size() == 1 && g.is_tail(inc[0]) &&
                     g.half(inc[0]).sector == Sector::Internal &&
                     !g.half(inc[0]).contracted_boundary;
        } else if (inc.size() == 2 && g.is_tail(inc[0]) && g.is_tail(inc[1])) {
          // a closed vertex with a contracted-boundary tail and one more tail
          int cb = g.half(inc[0]).contracted_boundary + g.half(inc[1]).contracted_boundary;
          ok_shape = cb == 1;
        }
      }
      if (!ok_shape)
        a.fail("unstable component of '", comp.front(), "' is not an allowed shape");
    }
    rep.add("unstable-shapes", "lifting condition (i)", a.ok, a.out.str());
  }

  // ---- lifting condition (ii): anchor bookkeeping ----
  {
    detail::Accum a;
    std::vector<std::vector<std::string>> anchors(comps.size());
    std::vector<std::vector<std::string>> zero_marked_internal(comps.size());
    std::vector<bool> closed_comp(comps.size(), true);
    for (size_t c = 0; c < comps.size(); ++c)
      for (const auto& v : comps[c])
        if (g.vertex_is_open(v)) closed_comp[c] = false;
    for (const auto& [id, he] : g.half_edges) {
      size_t c = comp_of[he.vertex];
      if (he.anchor) anchors[c].push_back(id);
      if (he.sector == Sector::Internal && he.marking && he.marking->empty())
        zero_marked_internal[c].push_back(id);
      if (he.contracted_boundary && !he.anchor)
        a.fail("contracted-boundary tail '", id, "' is not flagged as the anchor");
      if (g.is_tail(id) && he.tw == -1 && !he.anchor)
        a.fail("twist -1 tail '", id, "' must be an anchor");
    }
    for (size_t c = 0; c < comps.size(); ++c) {
      if (closed_comp[c] && anchors[c].size() != 1)
        a.fail("closed component of '", comps[c].front(), "' has ", anchors[c].size(),
               " anchors (need exactly 1)");
      if (!closed_comp[c] && !anchors[c].empty())
        a.fail("open component of '", comps[c].front(), "' carries an anchor");
      for (const auto& id : anchors[c]) {
        const auto& he = g.half(id);
        if (he.contracted_boundary) continue;
        if (!he.marking || !he.marking->empty())
          a.fail("anchor '", id, "' must carry the zero-marker");
      }
      // the anchor is the only internal tail marked zero in its component
      for (const auto& id : zero_marked_internal[c])
        if (!g.half(id).anchor)
          a.fail("internal tail '", id, "' marked 0 but is not the anchor");
    }
    rep.add("anchors", "lifting condition (ii)", a.ok, a.out.str());
  }

  // ---- lifting condition (iii): per vertex, at most one incident half-edge
  //      that is an anchor or has twist -1 ----
  {
    detail::Accum a;
    for (const auto& [v, kind] : g.vertices) {
      int n = 0;
      for (const auto& h : g.incident(v)) {
        const auto& he = g.half(h);
        if (he.anchor || he.tw == -1) ++n;
      }
      if (n > 1) a.fail("vertex '", v, "' has ", n, " anchor/twist -1 half-edges");
    }
    rep.add("one-distinguished", "lifting condition (iii)", a.ok, a.out.str());
  }

  // ---- lifting condition (iv): contracted-boundary tails have twist r-1 ----
  {
    detail::Accum a;
    for (const auto& [id, he] : g.half_edges)
      if (he.contracted_boundary && he.tw != r - 1)
        a.fail("contracted-boundary tail '", id, "' has twist ", he.tw, " != r-1");
    rep.add("cb-twist", "lifting condition (iv)", a.ok, a.out.str());
  }

  // ---- lifting condition (v): open-vertex congruence and parity ----
  {
    detail::Accum cong, par;
    for (const auto& [v, kind] : g.vertices) {
      if (kind != VertexKind::Open) continue;
      long long twice_int = 0, bdy = 0, alts = 0;
      for (const auto& h : g.incident(v)) {
        const auto& he = g.half(h);
        if (he.sector == Sector::Internal)
          twice_int += 2LL * he.tw;
        else {
          bdy += he.tw;
          alts += he.alt;
        }
      }
      long long s = twice_int + bdy;
      if (mod_pos(s, r) != mod_pos(r - 2, r)) {
        cong.fail("open vertex '", v, "' twist sum ", s, " !== r-2 (mod r)");
        continue;  // parity expression is not even integral
      }
      long long q = (s + 2) / r;
      if (((q - alts) % 2 + 2) % 2 != 0)
        par.fail("open vertex '", v, "' parity: (sum+2)/r = ", q, " vs #legal = ", alts);
    }
    rep.add("open-congruence", "lifting condition (v), twist congruence", cong.ok,
            cong.out.str());
    rep.add("open-parity", "lifting condition (v), legality parity", par.ok, par.out.str());
  }

  // ---- lifting condition (vi): closed-vertex congruence ----
  {
    detail::Accum a;
    for (const auto& [v, kind] : g.vertices) {
      if (kind != VertexKind::Closed) continue;
      long long s = 0;
      for (const auto& h : g.incident(v)) s += g.half(h).tw;
      if (mod_pos(s, r) != mod_pos(r - 2, r))
        a.fail("closed vertex '", v, "' twist sum ", s, " !== r-2 (mod r)");
    }
    rep.add("closed-congruence", "lifting condition (vi)", a.ok, a.out.str());
  }

  // ---- lifting condition (vii): edge twist relations and the -1 placement --
  {
    detail::Accum a;
    for (const auto& [id, he] : g.half_edges)
      if (he.sector == Sector::Boundary && he.tw == -1)
        a.fail("boundary half-edge '", id, "' has twist -1");
    for (const auto& [h, p] : g.edges()) {
      int a1 = g.half(h).tw, a2 = g.half(p).tw;
      if (mod_pos(a1 + a2, r) != mod_pos(r - 2, r)) {
        a.fail("edge (", h, ",", p, ") twists ", a1, "+", a2, " !== r-2 (mod r)");
        continue;
      }
      if (a1 == -1 && a2 == -1)
        a.fail("edge (", h, ",", p, ") has both twists -1");
      bool ramond = mod_pos(a1, r) == r - 1;
      if (!ramond && a1 + a2 != r - 2)
        a.fail("NS edge (", h, ",", p, ") twists do not sum to r-2 exactly");
      if (ramond && g.half(h).sector == Sector::Internal) {
        // the r-1 half must sit on the side that keeps the anchor (closed
        // component) or an open vertex after detaching this edge
        for (const auto& q : {h, p}) {
          auto side = g.component_of(g.half(q).vertex, q);
          bool keeps = detail::has_anchor_or_open(g, side);
          int tw = g.half(q).tw;
          if (keeps && tw != r - 1)
            a.fail("Ramond half '", q, "' should have twist r-1 (anchor/open side)");
          if (!keeps && tw != -1)
            a.fail("Ramond half '", q, "' should have twist -1 (detached side)");
        }
      }
    }
    rep.add("edge-twists", "lifting condition (vii)", a.ok, a.out.str());
  }

  // ---- lifting condition (viii): boundary-edge alternation ----
  {
    detail::Accum a;
    for (const auto& [h, p] : g.edges()) {
      if (g.half(h).sector != Sector::Boundary) continue;
      int alt1 = g.half(h).alt, alt2 = g.half(p).alt;
      if (g.half(h).tw != r - 1) {
        if (alt1 + alt2 != 1)
          a.fail("NS boundary edge (", h, ",", p, ") must alternate at exactly one half");
      } else if (alt1 != 0 || alt2 != 0) {
        a.fail("Ramond boundary edge (", h, ",", p, ") must have alt = 0 on both halves");
      }
    }
    rep.add("edge-alt", "lifting condition (viii)", a.ok, a.out.str());
  }

  // ---- lifting condition (ix): parity vs legality ----
  {
    detail::Accum a;
    for (const auto& [id, he] : g.half_edges) {
      if (he.sector != Sector::Boundary) continue;
      if (r % 2 == 1) {
        if (mod_pos(he.tw - he.alt, 2) != 0)
          a.fail("boundary half-edge '", id, "' (r odd): alt ", he.alt,
                 " !== twist ", he.tw, " (mod 2)");
      } else if (mod_pos(he.tw, 2) != 0) {
        a.fail("boundary half-edge '", id, "' (r even): twist ", he.tw, " is odd");
      }
    }
    rep.add("legality-parity", "lifting condition (ix)", a.ok, a.out.str());
  }

  // ---- gradedness: marked boundary tails have twist r-2 and alt 1 ----
  // (zero-marked boundary tails are the shadows of detached nodes and keep
  // whatever twist the node carried)
  {
    detail::Accum a;
    for (const auto& [id, he] : g.half_edges) {
      if (he.sector != Sector::Boundary || !g.is_tail(id)) continue;
      if (he.marking && he.marking->empty()) continue;
      if (he.tw != r - 2 || he.alt != 1)
        a.fail("boundary tail '", id, "' has (tw, alt) = (", he.tw, ",", he.alt,
               "), need (r-2, 1)");
    }
    rep.add("graded", "gradedness of boundary tails", a.ok, a.out.str());
  }

  return rep;
}

inline bool is_valid(const RSpinGraph& g) { return validate(g).overall; }

}  // namespace rspin
