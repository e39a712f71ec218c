#pragma once
// Exact numeric invariants of r-spin graphs: Witten-bundle ranks, moduli
// feasibility, boundary legality, node classification, automorphism order,
// dimension/codimension, the decomposition rank ledger, and the extended
// twist shift.

#include "ops.hpp"

namespace rspin {

// ---------------------------------------------------------------------------
// Ranks
// ---------------------------------------------------------------------------

struct RankReport {
  // Real rank per vertex; closed vertices carry 2 x their complex rank.
  std::map<std::string, long long> per_vertex;
  std::map<std::string, long long> complex_closed;  // closed vertices only
  long long total = 0;
  bool any_negative = false;
};

namespace detail {

inline long long exact_div(long long num, int r, const std::string& what) {
  if (num % r != 0)
    throw GraphError("non-integral rank for " + what + ": " + std::to_string(num) +
                     "/" + std::to_string(r));
  return num / r;
}

// Real rank of the Witten bundle contribution of a single vertex, counting
// all incident half-edges (tails and edge halves alike).
inline long long vertex_rank(const RSpinGraph& g, const std::string& v) {
  long long twice_int = 0, bdy = 0, sum = 0;
  for (const auto& h : g.incident(v)) {
    const HalfEdge& he = g.half(h);
    if (he.sector == Sector::Internal) twice_int += 2LL * he.tw;
    else bdy += he.tw;
    sum += he.tw;
  }
  if (g.vertex_is_open(v))
    return exact_div(twice_int + bdy - (g.r - 2), g.r, "open vertex '" + v + "'");
  return 2 * exact_div(sum - (g.r - 2), g.r, "closed vertex '" + v + "'");
}

// Real rank of the Witten bundle over the moduli of the (smoothing of the)
// component: the sum of vertex ranks, minus one per Ramond boundary edge and
// per contracted-boundary tail (their trivial real line summands).
inline long long component_smoothing_rank(const RSpinGraph& g,
                                          const std::vector<std::string>& comp) {
  long long rank = 0;
  for (const auto& v : comp) rank += vertex_rank(g, v);
  for (const auto& [h, p] : g.edges()) {
    if (g.half(h).sector != Sector::Boundary) continue;
    if (mod_pos(g.half(h).tw, g.r) != g.r - 1) continue;  // NS edges cost nothing
    if (std::find(comp.begin(), comp.end(), g.half(h).vertex) != comp.end()) rank -= 1;
  }
  for (const auto& [id, he] : g.half_edges)
    if (he.contracted_boundary &&
        std::find(comp.begin(), comp.end(), he.vertex) != comp.end())
      rank -= 1;
  return rank;
}

}  // namespace detail

inline RankReport witten_rank(const RSpinGraph& g) {
  if (!is_valid(g)) throw PreconditionError("witten_rank: input graph is invalid");
  RankReport rep;
  for (const auto& [v, kind] : g.vertices) {
    long long rank = detail::vertex_rank(g, v);
    rep.per_vertex[v] = rank;
    rep.total += rank;
    if (rank < 0) rep.any_negative = true;
    if (kind == VertexKind::Closed) rep.complex_closed[v] = rank / 2;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Feasibility / legality / node class
// ---------------------------------------------------------------------------

// Is the moduli space of smooth graded disks with k boundary points and
// internal twists a nonempty?  Mirrors the congruence + parity criterion for
// the rank e = (2 sum a + (k-1)(r-2)) / r.
inline std::pair<bool, std::string> moduli_nonempty_report(int r, int k,
                                                           const std::vector<int>& a) {
  if (r < 2) throw PreconditionError("moduli_nonempty: r < 2");
  if (k < 0) throw PreconditionError("moduli_nonempty: k < 0");
  for (int ai : a)
    if (ai < 0 || ai > r - 1)
      throw PreconditionError("moduli_nonempty: twist out of range");
  int l = static_cast<int>(a.size());
  bool unstable_exception = (k == 0 && l == 1);
  if (k + 2 * l < 3 && !unstable_exception)
    throw PreconditionError("moduli_nonempty: below stability");
  long long num = 2LL * std::accumulate(a.begin(), a.end(), 0LL) +
                  static_cast<long long>(k - 1) * (r - 2);
  if (num % r != 0) return {false, "divisibility fails"};
  long long e = num / r;
  if (mod_pos(e - (k - 1), 2) != 0) return {false, "parity fails"};
  return {true, "feasible"};
}

inline bool moduli_nonempty(int r, int k, const std::vector<int>& a) {
  return moduli_nonempty_report(r, k, a).first;
}

enum class Legality { Legal, Illegal, NeedsAltDatum, IllegalInvalid };

inline const char* to_string(Legality l) {
  switch (l) {
    case Legality::Legal: return "legal";
    case Legality::Illegal: return "illegal";
    case Legality::NeedsAltDatum: return "needs_alt_datum";
    default: return "illegal_invalid";
  }
}

inline Legality boundary_legality(int r, int tw) {
  if (tw < 0 || tw > r - 1) throw PreconditionError("boundary_legality: twist out of range");
  if (r % 2 == 1) return tw % 2 == 1 ? Legality::Legal : Legality::Illegal;
  // r even: boundary twists must be even and legality is a free datum
  return tw % 2 == 0 ? Legality::NeedsAltDatum : Legality::IllegalInvalid;
}

enum class NodeClass { Ramond, NeveuSchwarz };

inline NodeClass classify_node(int r, int tw_h, int tw_hp) {
  if (mod_pos(tw_h + tw_hp, r) != mod_pos(r - 2, r))
    throw PreconditionError("classify_node: twists do not sum to r-2 (mod r)");
  if (mod_pos(tw_h, r) == r - 1) {
    if (mod_pos(tw_hp, r) != r - 1)
      throw PreconditionError("classify_node: inconsistent Ramond twists");
    return NodeClass::Ramond;
  }
  if (tw_h + tw_hp != r - 2)
    throw PreconditionError("classify_node: NS twists must sum to r-2 exactly");
  return NodeClass::NeveuSchwarz;
}

// ---------------------------------------------------------------------------
// Automorphisms and dimension
// ---------------------------------------------------------------------------

struct AutomorphismCount {
  unsigned long long order = 1;
  // Set when a component without open vertices was counted with the closed
  // r-spin formula r^(N+1) instead of the disk formula r^N.
  bool closed_formula_used = false;
};

inline AutomorphismCount automorphism_order(const RSpinGraph& g) {
  if (!is_valid(g)) throw PreconditionError("automorphism_order: input graph is invalid");
  AutomorphismCount out;
  for (const auto& comp : g.components()) {
    int internal_edges = 0;
    for (const auto& [h, p] : g.edges())
      if (g.half(h).sector == Sector::Internal &&
          std::find(comp.begin(), comp.end(), g.half(h).vertex) != comp.end())
        ++internal_edges;
    bool open = false;
    for (const auto& v : comp)
      if (g.vertex_is_open(v)) open = true;
    bool cb = false;
    for (const auto& [id, he] : g.half_edges)
      if (he.contracted_boundary &&
          std::find(comp.begin(), comp.end(), he.vertex) != comp.end())
        cb = true;
    int n = internal_edges;
    if (!open && !cb) {
      n += 1;  // closed r-spin spheres: r^(N+1)
      out.closed_formula_used = true;
    }
    for (int i = 0; i < n; ++i) out.order *= static_cast<unsigned long long>(g.r);
  }
  return out;
}

struct DimensionReport {
  long long dim = 0;
  long long codim = 0;
  int ambient_k = 0;
  int ambient_l = 0;
};

inline DimensionReport moduli_dimension(const RSpinGraph& g) {
  if (!is_valid(g)) throw PreconditionError("moduli_dimension: input graph is invalid");
  if (g.components().size() != 1)
    throw PreconditionError("moduli_dimension: graph must be connected");
  bool disk_type = false;
  for (const auto& [v, kind] : g.vertices)
    if (kind == VertexKind::Open) disk_type = true;
  for (const auto& [id, he] : g.half_edges)
    if (he.contracted_boundary) disk_type = true;
  if (!disk_type)
    throw PreconditionError("moduli_dimension: ambient type must be a disk");
  for (const auto& [v, kind] : g.vertices)
    if (!is_vertex_stable(g, v))
      throw PreconditionError("moduli_dimension: unstable vertex '" + v + "'");

  DimensionReport rep;
  for (const auto& [v, kind] : g.vertices) {
    int k = g.boundary_valence(v), l = g.internal_valence(v);
    rep.dim += kind == VertexKind::Open ? (k + 2LL * l - 3) : 2LL * (l - 3);
  }
  for (const auto& [id, he] : g.half_edges) {
    if (!g.is_tail(id) || he.contracted_boundary) continue;
    if (he.sector == Sector::Boundary) ++rep.ambient_k;
    else ++rep.ambient_l;
  }
  rep.codim = (rep.ambient_k + 2LL * rep.ambient_l - 3) - rep.dim;
  return rep;
}

// ---------------------------------------------------------------------------
// Decomposition rank ledger
// ---------------------------------------------------------------------------

struct DecompositionReport {
  enum class Case {
    NS,
    RamondBoundary,
    RamondInternalClosedClosed,
    RamondInternalOpenClosed,
    ContractedBoundary,
  };
  Case kind = Case::NS;
  long long ambient_rank = 0;             // rank of W on the stratum
  std::vector<long long> component_ranks; // real ranks of the detached pieces
  std::vector<std::string> extra_terms;   // T_plus_real_line / T_r_torsion_complex_line
  // Ramond internal only: rank of the variant with the new anchor re-twisted
  // from -1 to r-1 (a complex line heavier by 2 real units).
  std::optional<long long> primed_rank;
  bool pullback_rank_zero = false;  // some closed piece has complex rank 0
  bool sequence_splits = false;     // anchor vertex with all other tails twist 0
  std::string identity;             // the verified arithmetic, as text
};

inline const char* to_string(DecompositionReport::Case c) {
  using Case = DecompositionReport::Case;
  switch (c) {
    case Case::NS: return "NS";
    case Case::RamondBoundary: return "RamondBoundary";
    case Case::RamondInternalClosedClosed: return "RamondInternalClosedClosed";
    case Case::RamondInternalOpenClosed: return "RamondInternalOpenClosed";
    default: return "ContractedBoundary";
  }
}

inline DecompositionReport decompose_witten(const RSpinGraph& g, const std::string& e) {
  if (!is_valid(g)) throw PreconditionError("decompose_witten: input graph is invalid");
  DecompositionReport rep;
  std::ostringstream identity;

  auto check = [&](bool ok) {
    if (!ok)
      throw std::logic_error("decompose_witten: rank identity violated at '" + e +
                             "' (graph bug)");
  };

  if (!g.pairing.count(e)) {
    // contracted-boundary tail
    const HalfEdge& he = g.half(e);
    if (!he.contracted_boundary)
      throw PreconditionError("decompose_witten: '" + e +
                              "' is neither an edge nor a contracted-boundary tail");
    auto comp = g.component_of(he.vertex);
    rep.kind = DecompositionReport::Case::ContractedBoundary;
    rep.ambient_rank = detail::component_smoothing_rank(g, comp);
    DetachResult d = detach_cb_tail(g, e);
    long long hat = detail::component_smoothing_rank(d.graph, comp);
    rep.component_ranks = {hat};
    rep.extra_terms = {"T_plus_real_line"};
    if (hat == 0) rep.pullback_rank_zero = true;
    check(rep.ambient_rank == hat - 1);
    identity << rep.ambient_rank << " = " << hat << " - 1";
    rep.identity = identity.str();
    return rep;
  }

  const std::string h = e, p = g.partner(e);
  bool boundary = g.half(h).sector == Sector::Boundary;
  bool ramond = mod_pos(g.half(h).tw, g.r) == g.r - 1;
  auto comp = g.component_of(g.half(h).vertex);
  rep.ambient_rank = detail::component_smoothing_rank(g, comp);

  DetachResult d = detach_edge(g, h);
  auto side1 = d.graph.component_of(d.graph.half(h).vertex);
  auto side2 = d.graph.component_of(d.graph.half(p).vertex);
  long long r1 = detail::component_smoothing_rank(d.graph, side1);
  long long r2 = detail::component_smoothing_rank(d.graph, side2);

  auto closed_rank_zero = [&](const std::vector<std::string>& side, long long rank) {
    bool closed = true;
    for (const auto& v : side)
      if (d.graph.vertex_is_open(v)) closed = false;
    bool cb = false;
    for (const auto& [id, he] : d.graph.half_edges)
      if (he.contracted_boundary &&
          std::find(side.begin(), side.end(), he.vertex) != side.end())
        cb = true;
    return closed && !cb && rank == 0;
  };
  if (closed_rank_zero(side1, r1) || closed_rank_zero(side2, r2))
    rep.pullback_rank_zero = true;

  if (!ramond) {
    rep.kind = DecompositionReport::Case::NS;
    rep.component_ranks = {r1, r2};
    check(rep.ambient_rank == r1 + r2);
    identity << rep.ambient_rank << " = " << r1 << " + " << r2;
  } else if (boundary) {
    rep.kind = DecompositionReport::Case::RamondBoundary;
    rep.component_ranks = {r1, r2};
    rep.extra_terms = {"T_plus_real_line"};
    check(rep.ambient_rank == r1 + r2 - 1);
    identity << rep.ambient_rank << " = " << r1 << " + " << r2 << " - 1";
  } else {
    bool both_closed = !g.vertex_is_open(g.half(h).vertex) &&
                       !g.vertex_is_open(g.half(p).vertex);
    rep.kind = both_closed ? DecompositionReport::Case::RamondInternalClosedClosed
                           : DecompositionReport::Case::RamondInternalOpenClosed;
    rep.component_ranks = {r1, r2};
    check(rep.ambient_rank == r1 + r2);
    // variant ledger: re-twist the new anchor (-1) to r-1; the separated
    // closed piece picks up a complex line whose r-th power is trivial
    rep.primed_rank = r1 + r2 + 2;
    rep.extra_terms = {"T_r_torsion_complex_line"};
    check(rep.ambient_rank == *rep.primed_rank - 2);
    identity << rep.ambient_rank << " = " << r1 << " + " << r2 << " = "
             << *rep.primed_rank << " - 2";
    // split sub-case: the anchor of the original component sits on a vertex
    // whose other tails all have twist zero, with anchor twist -1
    for (const auto& [id, he] : g.half_edges) {
      if (!he.anchor || he.tw != -1) continue;
      if (std::find(comp.begin(), comp.end(), he.vertex) == comp.end()) continue;
      bool all_zero = true;
      for (const auto& q : g.incident(he.vertex)) {
        if (q == id || !g.is_tail(q)) continue;
        if (g.half(q).tw != 0) all_zero = false;
      }
      if (all_zero) rep.sequence_splits = true;
    }
  }
  rep.identity = identity.str();
  return rep;
}

// ---------------------------------------------------------------------------
// Extended twist shift
// ---------------------------------------------------------------------------

inline std::pair<RSpinGraph, long long> shift_internal_twist(const RSpinGraph& g,
                                                             const std::string& tail) {
  const HalfEdge& he = g.half(tail);
  if (!g.is_tail(tail) || he.sector != Sector::Internal || he.contracted_boundary)
    throw PreconditionError("shift_internal_twist: '" + tail +
                            "' is not a plain internal tail");
  if (he.tw < 0) throw PreconditionError("shift_internal_twist: negative twist");
  RSpinGraph out = g;
  out.extended = true;
  out.half_edges[tail].tw += g.r;
  long long delta = detail::vertex_rank(out, he.vertex) - detail::vertex_rank(g, he.vertex);
  if (delta != 2)
    throw std::logic_error("shift_internal_twist: rank delta != 2 (graph bug)");
  return {out, delta};
}

}  // namespace rspin
