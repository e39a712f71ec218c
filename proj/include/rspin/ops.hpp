#pragma once
// Graph rewrites: detaching edges and contracted-boundary tails, forgetful
// maps with stabilization, and the base-graph construction for boundary
// strata.

#include "canonical.hpp"
#include "validate.hpp"

namespace rspin {

struct DetachResult {
  RSpinGraph graph;
  struct NewTail {
    std::string id;
    int tw = 0;
    std::optional<Marking> marking;
    bool anchor = false;
  };
  std::vector<NewTail> new_tails;
  // Set when an internal detach had to assign the zero-marker because the
  // separated component contained no marked internal tails at all.
  bool empty_marking_union = false;
};

namespace detail {

// Re-derive which half of each internal Ramond edge carries r-1 and which
// carries -1: the r-1 half is the one whose side (after removing the edge)
// keeps the anchor or an open vertex.  Used after contractions re-glue edges.
inline void normalize_ramond_edges(RSpinGraph& g) {
  for (const auto& [h, p] : g.edges()) {
    if (g.half(h).sector != Sector::Internal) continue;
    if (mod_pos(g.half(h).tw, g.r) != g.r - 1) continue;  // not Ramond
    for (const auto& q : {h, p}) {
      auto side = g.component_of(g.half(q).vertex, q);
      bool keeps = has_anchor_or_open(g, side);
      g.half_edges[q].tw = keeps ? g.r - 1 : -1;
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Detaching
// ---------------------------------------------------------------------------

inline DetachResult detach_edge(const RSpinGraph& g, const std::string& e) {
  if (!g.pairing.count(e))
    throw PreconditionError("'" + e + "' is not a half-edge of an edge");
  if (!is_valid(g)) throw PreconditionError("detach_edge: input graph is invalid");

  DetachResult res;
  res.graph = g;
  RSpinGraph& out = res.graph;
  std::string h = e, p = g.partner(e);

  out.pairing.erase(h);
  out.pairing.erase(p);

  if (g.half(h).sector == Sector::Boundary) {
    // both new boundary tails are marked zero
    for (const auto& q : {h, p}) {
      out.half_edges[q].marking = Marking{};
      res.new_tails.push_back({q, out.half(q).tw, Marking{}, false});
    }
    return res;
  }

  // Internal edge: exactly one side becomes a closed component without an
  // anchor; its half-edge becomes the anchor (marked zero), and the opposite
  // half-edge collects the markings of that side's internal tails.
  std::string anchor_half, other_half;
  for (const auto& q : {h, p}) {
    auto side = out.component_of(out.half(q).vertex);
    bool closed = true;
    for (const auto& v : side)
      if (out.vertex_is_open(v)) closed = false;
    bool anchored = false;
    for (const auto& [id, he] : out.half_edges)
      if (he.anchor && id != q &&
          std::find(side.begin(), side.end(), he.vertex) != side.end())
        anchored = true;
    if (closed && !anchored) anchor_half = q;
    else other_half = q;
  }
  if (anchor_half.empty() || other_half.empty())
    throw PreconditionError("detach_edge: cannot identify the unanchored closed side");

  out.half_edges[anchor_half].marking = Marking{};
  out.half_edges[anchor_half].anchor = true;

  Marking collected;
  auto side = out.component_of(out.half(anchor_half).vertex);
  for (const auto& [id, he] : out.half_edges) {
    if (id == anchor_half || !he.marking) continue;
    if (he.sector != Sector::Internal) continue;
    if (std::find(side.begin(), side.end(), he.vertex) == side.end()) continue;
    collected.insert(he.marking->begin(), he.marking->end());
  }
  if (collected.empty()) res.empty_marking_union = true;
  out.half_edges[other_half].marking = collected;

  res.new_tails.push_back({anchor_half, out.half(anchor_half).tw, Marking{}, true});
  res.new_tails.push_back({other_half, out.half(other_half).tw, collected, false});
  return res;
}

inline DetachResult detach_cb_tail(const RSpinGraph& g, const std::string& t) {
  const HalfEdge& he = g.half(t);
  if (!he.contracted_boundary)
    throw PreconditionError("'" + t + "' is not a contracted-boundary tail");
  if (!is_valid(g)) throw PreconditionError("detach_cb_tail: input graph is invalid");
  DetachResult res;
  res.graph = g;
  // t becomes an ordinary internal tail; it stays the anchor (marked zero)
  // and its twist r-1 is untouched.
  res.graph.half_edges[t].contracted_boundary = false;
  res.graph.half_edges[t].marking = Marking{};
  res.new_tails.push_back({t, he.tw, Marking{}, true});
  return res;
}

inline DetachResult detach_set(const RSpinGraph& g, const std::set<std::string>& N) {
  DetachResult res;
  res.graph = g;
  for (const auto& id : N) {  // sorted order; the result is order-independent
    std::string at = id;
    // accept either half of an edge as the identifier
    DetachResult step = res.graph.pairing.count(at)
                            ? detach_edge(res.graph, at)
                            : detach_cb_tail(res.graph, at);
    res.graph = std::move(step.graph);
    res.empty_marking_union |= step.empty_marking_union;
    for (auto& t : step.new_tails) res.new_tails.push_back(std::move(t));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Forgetful map
// ---------------------------------------------------------------------------

namespace detail {

inline void erase_half(RSpinGraph& g, const std::string& h) { g.half_edges.erase(h); }

// Contract vertices made unstable by tail deletion.  Deterministic: the
// smallest-id unstable vertex is processed first.  Components matching the
// two allowed unstable shapes are left alone.
inline void stabilize(RSpinGraph& g) {
  auto allowed_unstable_component = [&](const std::string& v) {
    auto comp = g.component_of(v);
    if (comp.size() != 1) return false;
    auto inc = g.incident(comp[0]);
    if (g.vertex_is_open(comp[0]))
      return inc.size() == 1 && g.is_tail(inc[0]) &&
             g.half(inc[0]).sector == Sector::Internal &&
             !g.half(inc[0]).contracted_boundary;
    if (inc.size() != 2 || !g.is_tail(inc[0]) || !g.is_tail(inc[1])) return false;
    return g.half(inc[0]).contracted_boundary + g.half(inc[1]).contracted_boundary == 1;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [v, kind] : g.vertices) {
      if (is_vertex_stable(g, v) || allowed_unstable_component(v)) continue;
      auto inc = g.incident(v);
      std::vector<std::string> tails, halves;
      for (const auto& h : inc) (g.is_tail(h) ? tails : halves).push_back(h);

      if (halves.size() == 2 && tails.empty()) {
        // chain vertex: remove it and re-glue the two outer half-edges
        std::string a = g.partner(halves[0]), b = g.partner(halves[1]);
        g.pairing.erase(halves[0]);
        g.pairing.erase(halves[1]);
        erase_half(g, halves[0]);
        erase_half(g, halves[1]);
        g.pairing[a] = b;
        g.pairing[b] = a;
        g.vertices.erase(v);
      } else if (halves.size() == 1 && tails.size() == 1) {
        // node + marked point: the mark slides onto the neighbour half-edge
        std::string p = g.partner(halves[0]);
        const HalfEdge t = g.half(tails[0]);
        g.pairing.erase(halves[0]);
        g.pairing.erase(p);
        HalfEdge& np = g.half_edges[p];
        np.tw = t.tw;
        np.alt = t.alt;
        np.marking = t.marking;
        np.anchor = t.anchor;
        np.contracted_boundary = t.contracted_boundary;
        erase_half(g, halves[0]);
        erase_half(g, tails[0]);
        g.vertices.erase(v);
      } else if (halves.size() == 1 && tails.empty()) {
        // bare node: the neighbour half-edge disappears entirely
        std::string p = g.partner(halves[0]);
        g.pairing.erase(halves[0]);
        g.pairing.erase(p);
        erase_half(g, halves[0]);
        erase_half(g, p);
        g.vertices.erase(v);
      } else {
        // residual unstable component: drop it wholesale
        for (const auto& h : inc) erase_half(g, h);
        g.vertices.erase(v);
      }
      changed = true;
      break;  // restart: the vertex map was mutated
    }
  }
  normalize_ramond_edges(g);
}

inline RSpinGraph forget_tail_ids(const RSpinGraph& g, const std::vector<std::string>& ids) {
  RSpinGraph out = g;
  for (const auto& id : ids) detail::erase_half(out, id);
  detail::stabilize(out);
  return out;
}

}  // namespace detail

inline RSpinGraph forget_tails(const RSpinGraph& g, const std::set<int>& Bf,
                               const std::set<int>& If) {
  if (!is_valid(g)) throw PreconditionError("forget_tails: input graph is invalid");
  std::vector<std::string> doomed;
  for (const auto& [id, he] : g.half_edges) {
    if (!g.is_tail(id) || !he.marking || he.marking->empty()) continue;
    const std::set<int>& pool = he.sector == Sector::Boundary ? Bf : If;
    bool any = false, all = true;
    for (int m : *he.marking) {
      if (pool.count(m)) any = true; else all = false;
    }
    if (!any) continue;
    if (!all)
      throw PreconditionError("forget_tails: tail '" + id +
                              "' is only partially covered by the forget set");
    if (he.sector == Sector::Boundary) {
      if (he.alt != 0)
        throw PreconditionError("forget_tails: boundary tail '" + id + "' is legal");
      if (he.tw != 0)
        throw PreconditionError("forget_tails: boundary tail '" + id + "' has twist != 0");
    } else {
      if (he.anchor)
        throw PreconditionError("forget_tails: internal tail '" + id + "' is the anchor");
      if (he.tw != 0)
        throw PreconditionError("forget_tails: internal tail '" + id + "' has twist != 0");
    }
    doomed.push_back(id);
  }
  return detail::forget_tail_ids(g, doomed);
}

// ---------------------------------------------------------------------------
// Base graph of a boundary stratum
// ---------------------------------------------------------------------------

// For a two-open-vertex graph joined by one boundary edge whose block sizes
// satisfy |B1| - 1 == sum(I1 twists) and |B2| == sum(I2 twists) mod r, the
// half-edge h1 on side 1 has tw = alt = 0; the base graph detaches the edge
// and forgets h1.
inline RSpinGraph base_graph(const RSpinGraph& g) {
  if (!is_valid(g)) throw PreconditionError("base_graph: input graph is invalid");
  if (g.vertices.size() != 2)
    throw PreconditionError("base_graph: need exactly two vertices");
  for (const auto& [v, kind] : g.vertices)
    if (kind != VertexKind::Open)
      throw PreconditionError("base_graph: vertices must both be open");
  auto edges = g.edges();
  if (edges.size() != 1 || g.half(edges[0].first).sector != Sector::Boundary)
    throw PreconditionError("base_graph: need exactly one (boundary) edge");

  std::string h1;
  for (const auto& q : {edges[0].first, edges[0].second})
    if (g.half(q).tw == 0 && g.half(q).alt == 0) h1 = q;
  if (h1.empty())
    throw PreconditionError(
        "base_graph: no half-edge with tw = alt = 0 (block congruences fail)");

  DetachResult d = detach_edge(g, h1);
  return detail::forget_tail_ids(d.graph, {h1});
}

}  // namespace rspin
