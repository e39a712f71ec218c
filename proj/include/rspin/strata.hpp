#pragma once
// Enumeration of the codimension-1 boundary strata of a moduli component of
// graded disks: two-open-vertex graphs joined by a boundary edge whose
// splitting satisfies the block congruences |B1| - 1 == sum(I1) and
// |B2| == sum(I2) (mod r) -- these are exactly the splittings with
// tw(h1) = alt(h1) = 0 -- plus the contracted-boundary stratum when k = 0.
// Codimension-2 internal-edge strata are available behind a flag.

#include "invariants.hpp"

namespace rspin {

struct AmbientSpec {
  int r = 2;
  std::vector<int> boundary_labels;   // the cyclic order, as realized
  std::map<int, int> internal_twists; // label -> twist
};

inline bool ambient_feasible(const AmbientSpec& spec) {
  std::vector<int> a;
  for (const auto& [lab, tw] : spec.internal_twists) a.push_back(tw);
  return moduli_nonempty(spec.r, static_cast<int>(spec.boundary_labels.size()), a);
}

// One side of a two-vertex splitting.
struct SplitSide {
  std::vector<int> B;        // boundary labels (tails, twist r-2, alt 1)
  std::map<int, int> I;      // internal labels -> twists
};

struct DecorationResult {
  bool feasible = false;
  std::string reason;      // filled when infeasible
  RSpinGraph graph;        // filled when feasible
  int tw_h1 = 0, tw_h2 = 0, alt_h1 = 0, alt_h2 = 0;
};

// Unique (tw, alt) decoration of the half-edges of the boundary-edge graph
// with sides (s1, s2), or a certificate that none exists.
inline DecorationResult stratum_decorations(int r, const SplitSide& s1, const SplitSide& s2,
                                            Sector edge_sector = Sector::Boundary) {
  DecorationResult res;
  auto infeasible = [&](const std::string& why) {
    res.feasible = false;
    res.reason = why;
    return res;
  };

  if (edge_sector == Sector::Internal)
    return infeasible("internal-edge splits use internal_edge_decorations");

  auto side_sums = [&](const SplitSide& s) {
    long long twice_int = 0;
    for (const auto& [lab, tw] : s.I) twice_int += 2LL * tw;
    return twice_int + static_cast<long long>(s.B.size()) * (r - 2);
  };

  long long base1 = side_sums(s1), base2 = side_sums(s2);
  res.tw_h1 = mod_pos((r - 2) - base1, r);
  res.tw_h2 = mod_pos((r - 2) - base2, r);
  if (mod_pos(res.tw_h1 + res.tw_h2, r) != mod_pos(r - 2, r))
    return infeasible("half-edge twists incompatible with the ambient congruence");

  bool ramond = res.tw_h1 == r - 1;
  if (ramond && res.tw_h2 != r - 1)
    return infeasible("contradictory Ramond/NS congruences");
  if (r % 2 == 0 && (res.tw_h1 % 2 != 0 || res.tw_h2 % 2 != 0))
    return infeasible("even r forbids odd boundary twists (no Ramond boundary nodes)");

  // legality parity on each vertex: (twist sum + 2)/r == #legal (mod 2)
  auto forced_alt = [&](long long base, int tw, size_t nb) {
    long long q = (base + tw + 2) / r;
    return static_cast<int>(mod_pos(q - static_cast<long long>(nb), 2));
  };
  res.alt_h1 = forced_alt(base1, res.tw_h1, s1.B.size());
  res.alt_h2 = forced_alt(base2, res.tw_h2, s2.B.size());

  if (ramond && (res.alt_h1 != 0 || res.alt_h2 != 0))
    return infeasible("Ramond boundary halves must both be illegal");
  if (!ramond && res.alt_h1 + res.alt_h2 != 1)
    return infeasible("NS boundary edge must alternate at exactly one half");
  if (r % 2 == 1 &&
      (mod_pos(res.tw_h1 - res.alt_h1, 2) != 0 || mod_pos(res.tw_h2 - res.alt_h2, 2) != 0))
    return infeasible("odd r: legality must equal twist parity");

  auto stable_side = [&](const SplitSide& s) {
    return static_cast<int>(s.B.size()) + 1 + 2 * static_cast<int>(s.I.size()) > 2;
  };
  if (!stable_side(s1) || !stable_side(s2)) return infeasible("unstable vertex");

  RSpinGraph g;
  g.r = r;
  g.vertices["v1"] = VertexKind::Open;
  g.vertices["v2"] = VertexKind::Open;
  auto add_side = [&](const SplitSide& s, const std::string& v) {
    for (int lab : s.B) {
      HalfEdge he;
      he.id = "b" + std::to_string(lab);
      he.vertex = v;
      he.sector = Sector::Boundary;
      he.tw = r - 2;
      he.alt = 1;
      he.marking = Marking{lab};
      g.half_edges[he.id] = he;
    }
    for (const auto& [lab, tw] : s.I) {
      HalfEdge he;
      he.id = "z" + std::to_string(lab);
      he.vertex = v;
      he.sector = Sector::Internal;
      he.tw = tw;
      he.marking = Marking{lab};
      g.half_edges[he.id] = he;
    }
  };
  add_side(s1, "v1");
  add_side(s2, "v2");
  HalfEdge h1{"h1", "v1", Sector::Boundary, res.tw_h1, res.alt_h1, std::nullopt, false, false};
  HalfEdge h2{"h2", "v2", Sector::Boundary, res.tw_h2, res.alt_h2, std::nullopt, false, false};
  g.half_edges["h1"] = h1;
  g.half_edges["h2"] = h2;
  g.pairing["h1"] = "h2";
  g.pairing["h2"] = "h1";

  ValidationReport vr = validate(g);
  if (!vr.overall) {
    std::string why = "decorated graph fails validation:";
    for (const auto& e : vr.entries)
      if (!e.pass) why += " [" + e.rule + "] " + e.detail;
    return infeasible(why);
  }
  res.feasible = true;
  res.graph = g;
  return res;
}

// Internal-edge (codimension-2) variant: closed vertex carrying I_C hangs off
// the open vertex carrying everything else.
inline DecorationResult internal_edge_decorations(int r, const SplitSide& open_side,
                                                  const std::map<int, int>& I_C) {
  DecorationResult res;
  auto infeasible = [&](const std::string& why) {
    res.feasible = false;
    res.reason = why;
    return res;
  };
  if (static_cast<int>(I_C.size()) + 1 <= 2) return infeasible("unstable closed vertex");
  if (static_cast<int>(open_side.B.size()) +
          2 * (static_cast<int>(open_side.I.size()) + 1) <= 2)
    return infeasible("unstable open vertex");

  long long sum_c = 0;
  for (const auto& [lab, tw] : I_C) sum_c += tw;
  int tw_closed = mod_prime((r - 2) - sum_c, r);          // -1 on the closed side
  int tw_open = tw_closed == -1 ? r - 1 : r - 2 - tw_closed;
  res.tw_h1 = tw_open;
  res.tw_h2 = tw_closed;

  RSpinGraph g;
  g.r = r;
  g.vertices["v1"] = VertexKind::Open;
  g.vertices["vc"] = VertexKind::Closed;
  for (int lab : open_side.B) {
    HalfEdge he{"b" + std::to_string(lab), "v1", Sector::Boundary, r - 2, 1,
                Marking{lab}, false, false};
    g.half_edges[he.id] = he;
  }
  for (const auto& [lab, tw] : open_side.I) {
    HalfEdge he{"z" + std::to_string(lab), "v1", Sector::Internal, tw, 0,
                Marking{lab}, false, false};
    g.half_edges[he.id] = he;
  }
  for (const auto& [lab, tw] : I_C) {
    HalfEdge he{"z" + std::to_string(lab), "vc", Sector::Internal, tw, 0,
                Marking{lab}, false, false};
    g.half_edges[he.id] = he;
  }
  HalfEdge g1{"g1", "v1", Sector::Internal, tw_open, 0, std::nullopt, false, false};
  HalfEdge g2{"g2", "vc", Sector::Internal, tw_closed, 0, std::nullopt, false, false};
  g.half_edges["g1"] = g1;
  g.half_edges["g2"] = g2;
  g.pairing["g1"] = "g2";
  g.pairing["g2"] = "g1";

  ValidationReport vr = validate(g);
  if (!vr.overall) {
    std::string why = "decorated graph fails validation:";
    for (const auto& e : vr.entries)
      if (!e.pass) why += " [" + e.rule + "] " + e.detail;
    return infeasible(why);
  }
  res.feasible = true;
  res.graph = g;
  return res;
}

struct StratumRecord {
  RSpinGraph graph;
  std::string kind;           // boundary-edge | contracted-boundary | internal-edge
  std::vector<int> B1;        // cyclic block of boundary labels on side 1
  int block_position = 0;     // index into the cyclic order where the block starts
  std::vector<int> I1;        // internal labels on side 1
};

inline std::vector<StratumRecord> enumerate_codim1(const AmbientSpec& spec,
                                                   bool with_codim2 = false) {
  if (!ambient_feasible(spec))
    throw PreconditionError("enumerate_codim1: infeasible ambient moduli component");
  const int r = spec.r;
  const int k = static_cast<int>(spec.boundary_labels.size());
  std::vector<int> ilabels;
  for (const auto& [lab, tw] : spec.internal_twists) ilabels.push_back(lab);
  const int l = static_cast<int>(ilabels.size());

  // Strata are keyed by the positioned splitting (arc start, arc length,
  // internal subset), deduplicated against the complementary description.
  // Two strata at different positions count separately even when their dual
  // graphs are isomorphic: the block records where the bubble attaches in the
  // cyclic boundary order.
  std::vector<StratumRecord> out;
  std::set<std::tuple<int, int, unsigned>> seen;

  const int positions = std::max(k, 1);
  for (int s = 0; s < positions; ++s) {
    for (int len = 0; len <= k; ++len) {
      for (unsigned mask = 0; mask < (1u << l); ++mask) {
        // dedup the unordered splitting: sides (s,len,mask) vs complement
        int cs = k == 0 ? 0 : (s + len) % k;
        unsigned cmask = (~mask) & ((1u << l) - 1);
        std::tuple<int, int, unsigned> key{s, len, mask}, ckey{cs, k - len, cmask};
        if (!seen.insert(std::min(key, ckey)).second) continue;

        SplitSide side_a, side_b;
        for (int i = 0; i < len; ++i)
          side_a.B.push_back(spec.boundary_labels[(s + i) % k]);
        for (int i = len; i < k; ++i)
          side_b.B.push_back(spec.boundary_labels[(s + i) % k]);
        long long sum_a = 0, sum_b = 0;
        for (int i = 0; i < l; ++i) {
          int tw = spec.internal_twists.at(ilabels[i]);
          if (mask & (1u << i)) {
            side_a.I[ilabels[i]] = tw;
            sum_a += tw;
          } else {
            side_b.I[ilabels[i]] = tw;
            sum_b += tw;
          }
        }

        // which side can be side 1 (the base-type side with tw(h1) = 0)?
        auto is_side1 = [&](size_t nb, long long isum, size_t nb2, long long isum2) {
          return mod_pos(static_cast<long long>(nb) - 1 - isum, r) == 0 &&
                 mod_pos(static_cast<long long>(nb2) - isum2, r) == 0;
        };
        bool a_first = is_side1(side_a.B.size(), sum_a, side_b.B.size(), sum_b);
        bool b_first = is_side1(side_b.B.size(), sum_b, side_a.B.size(), sum_a);
        if (!a_first && !b_first) continue;
        const SplitSide& s1 = a_first ? side_a : side_b;
        const SplitSide& s2 = a_first ? side_b : side_a;

        DecorationResult dec = stratum_decorations(r, s1, s2);
        if (!dec.feasible) continue;

        StratumRecord rec;
        rec.graph = dec.graph;
        rec.kind = "boundary-edge";
        rec.B1 = s1.B;
        rec.block_position = a_first ? s : cs;
        for (const auto& [lab, tw] : s1.I) rec.I1.push_back(lab);
        out.push_back(std::move(rec));
      }
    }
  }

  // contracted-boundary stratum: only for k = 0, when sum(a) == -1 (mod r)
  if (k == 0 && l >= 2) {
    long long sum = 0;
    for (const auto& [lab, tw] : spec.internal_twists) sum += tw;
    if (mod_pos(sum + 1, r) == 0) {
      RSpinGraph g;
      g.r = r;
      g.vertices["vc"] = VertexKind::Closed;
      for (const auto& [lab, tw] : spec.internal_twists) {
        HalfEdge he{"z" + std::to_string(lab), "vc", Sector::Internal, tw, 0,
                    Marking{lab}, false, false};
        g.half_edges[he.id] = he;
      }
      HalfEdge cb{"t", "vc", Sector::Internal, r - 1, 0, std::nullopt, true, true};
      g.half_edges["t"] = cb;
      if (validate(g).overall) {
        StratumRecord rec;
        rec.graph = g;
        rec.kind = "contracted-boundary";
        out.push_back(std::move(rec));
      }
    }
  }

  if (with_codim2) {
    for (unsigned mask = 1; mask < (1u << l); ++mask) {
      std::map<int, int> I_C;
      SplitSide open_side;
      open_side.B = spec.boundary_labels;
      for (int i = 0; i < l; ++i) {
        int lab = ilabels[i], tw = spec.internal_twists.at(lab);
        if (mask & (1u << i)) I_C[lab] = tw;
        else open_side.I[lab] = tw;
      }
      if (I_C.size() < 2) continue;
      DecorationResult dec = internal_edge_decorations(r, open_side, I_C);
      if (!dec.feasible) continue;
      StratumRecord rec;
      rec.graph = dec.graph;
      rec.kind = "internal-edge";
      for (const auto& [lab, tw] : I_C) rec.I1.push_back(lab);
      out.push_back(std::move(rec));
    }
  }

  std::sort(out.begin(), out.end(), [](const StratumRecord& x, const StratumRecord& y) {
    auto key = [](const StratumRecord& rec) {
      return std::tuple(rec.kind, rec.B1.size(), rec.block_position, rec.I1);
    };
    return key(x) < key(y);
  });
  return out;
}

}  // namespace rspin
