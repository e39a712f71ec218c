#pragma once
// Seeded generator of random valid graded r-spin graphs for property tests.
// Starts from a feasible smooth ambient component (a disk, or a sphere with a
// contracted-boundary tail) and applies random vertex splits, validating the
// result after every step.

#include <optional>
#include <random>

#include "rspin/invariants.hpp"
#include "rspin/strata.hpp"

namespace testsupport {

using namespace rspin;

struct GenOptions {
  int min_r = 2, max_r = 7;
  int max_k = 8, max_l = 4;
  int max_edges = 4;
  bool allow_cb = true;
};

struct Generated {
  RSpinGraph graph;
  int r = 2;
  int k = 0;                // boundary markings of the ambient component
  std::vector<int> a;       // internal twists of the ambient component
  bool cb_ambient = false;  // ambient is a sphere with a contracted boundary
};

namespace detail_gen {

inline int rnd(std::mt19937& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Split vertex v of g along a new boundary edge, distributing its incident
// half-edges at random.  Returns false (leaving g untouched) if the sampled
// partition admits no legal decoration.
inline bool try_boundary_split(RSpinGraph& g, std::mt19937& rng, const std::string& v,
                               int& counter) {
  if (!g.vertex_is_open(v)) return false;
  auto inc = g.incident(v);
  std::vector<std::string> s1, s2;
  for (const auto& h : inc) (rnd(rng, 0, 1) ? s1 : s2).push_back(h);

  const int r = g.r;
  auto side_stats = [&](const std::vector<std::string>& s) {
    long long base = 0;
    int legal = 0, nb = 0, ni = 0;
    for (const auto& h : s) {
      const HalfEdge& he = g.half(h);
      if (he.sector == Sector::Internal) {
        base += 2LL * he.tw;
        ++ni;
      } else {
        base += he.tw;
        ++nb;
        legal += he.alt;
      }
    }
    return std::tuple(base, legal, nb, ni);
  };
  auto [base1, legal1, nb1, ni1] = side_stats(s1);
  auto [base2, legal2, nb2, ni2] = side_stats(s2);

  int tw1 = mod_pos((r - 2) - base1, r), tw2 = mod_pos((r - 2) - base2, r);
  if (r % 2 == 0 && (tw1 % 2 != 0 || tw2 % 2 != 0)) return false;
  auto forced_alt = [&](long long base, int tw, int legal) {
    return static_cast<int>(mod_pos((base + tw + 2) / r - legal, 2));
  };
  int alt1 = forced_alt(base1, tw1, legal1), alt2 = forced_alt(base2, tw2, legal2);
  bool ramond = tw1 == r - 1;
  if (ramond && (alt1 != 0 || alt2 != 0)) return false;
  if (!ramond && alt1 + alt2 != 1) return false;
  if (r % 2 == 1 && (mod_pos(tw1 - alt1, 2) != 0 || mod_pos(tw2 - alt2, 2) != 0))
    return false;
  // stability with the new half-edge counted
  if (nb1 + 1 + 2 * ni1 <= 2 || nb2 + 1 + 2 * ni2 <= 2) return false;

  RSpinGraph cand = g;
  std::string nv = "w" + std::to_string(++counter);
  std::string h1 = "p" + std::to_string(++counter), h2 = "p" + std::to_string(++counter);
  cand.vertices[nv] = VertexKind::Open;
  for (const auto& h : s2) cand.half_edges[h].vertex = nv;
  cand.half_edges[h1] = {h1, v, Sector::Boundary, tw1, alt1, std::nullopt, false, false};
  cand.half_edges[h2] = {h2, nv, Sector::Boundary, tw2, alt2, std::nullopt, false, false};
  cand.pairing[h1] = h2;
  cand.pairing[h2] = h1;
  if (!is_valid(cand)) return false;
  g = std::move(cand);
  return true;
}

// Split off a new closed vertex carrying a random subset (>= 2) of the
// internal half-edges of v, joined by a new internal edge.
inline bool try_internal_split(RSpinGraph& g, std::mt19937& rng, const std::string& v,
                               int& counter) {
  auto inc = g.incident(v);
  std::vector<std::string> internal;
  for (const auto& h : inc)
    if (g.half(h).sector == Sector::Internal && !g.half(h).contracted_boundary)
      internal.push_back(h);
  if (internal.size() < 2) return false;
  std::vector<std::string> s2;
  for (const auto& h : internal)
    if (rnd(rng, 0, 1)) s2.push_back(h);
  if (s2.size() < 2) return false;

  const int r = g.r;
  // stability of what remains on v
  int nb = g.boundary_valence(v);
  int ni_left = static_cast<int>(inc.size()) - nb - static_cast<int>(s2.size()) + 1;
  if (g.vertex_is_open(v) ? nb + 2 * ni_left <= 2 : ni_left <= 2) return false;

  long long sum2 = 0;
  for (const auto& h : s2) sum2 += g.half(h).tw;
  int twc = mod_prime((r - 2) - sum2, r);
  int two = twc == -1 ? r - 1 : r - 2 - twc;

  RSpinGraph cand = g;
  std::string nv = "c" + std::to_string(++counter);
  std::string h1 = "q" + std::to_string(++counter), h2 = "q" + std::to_string(++counter);
  cand.vertices[nv] = VertexKind::Closed;
  for (const auto& h : s2) cand.half_edges[h].vertex = nv;
  cand.half_edges[h1] = {h1, v, Sector::Internal, two, 0, std::nullopt, false, false};
  cand.half_edges[h2] = {h2, nv, Sector::Internal, twc, 0, std::nullopt, false, false};
  cand.pairing[h1] = h2;
  cand.pairing[h2] = h1;
  rspin::detail::normalize_ramond_edges(cand);
  if (!is_valid(cand)) return false;
  g = std::move(cand);
  return true;
}

}  // namespace detail_gen

inline std::optional<Generated> random_graph(std::mt19937& rng,
                                             const GenOptions& opt = {}) {
  using detail_gen::rnd;
  for (int attempt = 0; attempt < 60; ++attempt) {
    Generated gen;
    int r = rnd(rng, opt.min_r, opt.max_r);
    gen.r = r;
    RSpinGraph g;
    g.r = r;
    bool cb = opt.allow_cb && rnd(rng, 0, 7) == 0;

    if (cb) {
      int l = rnd(rng, 2, std::max(2, opt.max_l));
      std::vector<int> a(l);
      for (int i = 0; i + 1 < l; ++i) a[i] = rnd(rng, 0, r - 1);
      // fix the last twist so that sum == -1 (mod r)
      long long partial = std::accumulate(a.begin(), a.end() - 1, 0LL);
      a[l - 1] = mod_pos(-1 - partial, r);
      g.vertices["v0"] = VertexKind::Closed;
      for (int i = 0; i < l; ++i) {
        std::string id = "z" + std::to_string(i + 1);
        g.half_edges[id] = {id, "v0", Sector::Internal, a[i], 0, Marking{i + 1}, false,
                            false};
      }
      g.half_edges["t"] = {"t", "v0", Sector::Internal, r - 1, 0, std::nullopt, true, true};
      gen.cb_ambient = true;
      gen.k = 0;
      gen.a = a;
    } else {
      int k = rnd(rng, 0, opt.max_k), l = rnd(rng, 0, opt.max_l);
      if (k + 2 * l < 3) continue;
      std::vector<int> a(l);
      for (int i = 0; i < l; ++i) a[i] = rnd(rng, 0, r - 1);
      if (!moduli_nonempty(r, k, a)) continue;
      g.vertices["v0"] = VertexKind::Open;
      for (int i = 0; i < k; ++i) {
        std::string id = "b" + std::to_string(i + 1);
        g.half_edges[id] = {id, "v0", Sector::Boundary, r - 2, 1, Marking{i + 1}, false,
                            false};
      }
      for (int i = 0; i < l; ++i) {
        std::string id = "z" + std::to_string(i + 1);
        g.half_edges[id] = {id, "v0", Sector::Internal, a[i], 0, Marking{i + 1}, false,
                            false};
      }
      gen.k = k;
      gen.a = a;
    }
    if (!is_valid(g)) continue;  // defensive; the smooth builds are valid

    int counter = 0;
    int target_edges = rnd(rng, 0, opt.max_edges);
    for (int tries = 0; tries < 10 * target_edges; ++tries) {
      if (static_cast<int>(g.edges().size()) >= target_edges) break;
      std::vector<std::string> vs;
      for (const auto& [v, kind] : g.vertices) vs.push_back(v);
      const std::string& v = vs[rnd(rng, 0, static_cast<int>(vs.size()) - 1)];
      if (g.vertex_is_open(v) && rnd(rng, 0, 1))
        detail_gen::try_boundary_split(g, rng, v, counter);
      else
        detail_gen::try_internal_split(g, rng, v, counter);
    }
    gen.graph = std::move(g);
    return gen;
  }
  return std::nullopt;
}

}  // namespace testsupport
