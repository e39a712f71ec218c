#pragma once
// The +-1 sign calculus of the orientation theory: the m^c invariant, the
// closed and boundary split signs, rotation signs, zero-dimensional base
// cases, and transport of the canonical relative orientation along a chain of
// degenerations with a full factor ledger.

#include "strata.hpp"

namespace rspin {

struct SignFactor {
  int value = 1;     // +1 or -1
  std::string rule;  // which sign rule produced the factor
  std::string note;  // the arithmetic, human-readable
};

struct SignLedger {
  std::vector<SignFactor> factors;
  int product() const {
    int p = 1;
    for (const auto& f : factors) p *= f.value;
    return p;
  }
};

// m^c({a_i}) = (sum a - (r-2) + ((r-2-sum a) mod' r)) / r, where mod' is the
// representative in {-1, 0, ..., r-2}.
inline int mc_invariant(int r, const std::vector<int>& a) {
  if (a.empty()) throw PreconditionError("mc_invariant: empty multiset");
  for (int ai : a)
    if (ai < 0 || ai > r - 1) throw PreconditionError("mc_invariant: twist out of range");
  long long sum = std::accumulate(a.begin(), a.end(), 0LL);
  long long num = sum - (r - 2) + mod_prime((r - 2) - sum, r);
  if (num % r != 0) throw std::logic_error("mc_invariant: non-integral (guarded)");
  return static_cast<int>(num / r);
}

// delta^(m^c); delta = +1 under the default normalization.
inline int closed_split_sign(int r, const std::vector<int>& a_closed, int delta = 1) {
  if (delta != 1 && delta != -1) throw PreconditionError("delta must be +-1");
  return mc_invariant(r, a_closed) % 2 == 0 ? 1 : delta == 1 ? 1 : -1;
}

inline int boundary_split_sign(int sizeB1, int sizeB2) {
  if (sizeB1 < 0 || sizeB2 < 0) throw PreconditionError("block sizes must be >= 0");
  return ((sizeB1 - 1) * sizeB2) % 2 == 0 ? 1 : -1;
}

struct RotationSigns {
  int sign_W = 1;
  int sign_M = 1;
  int product = 1;
};

inline RotationSigns rotation_signs(int k, int h) {
  if (k < 1) throw PreconditionError("rotation_signs: k must be >= 1");
  int s = (static_cast<long long>(k - 1) * h) % 2 == 0 ? 1 : -1;
  return {s, s, s * s};
}

inline int zero_dim_orientation(int k, int l) {
  if (k == 1 && l == 1) return 1;
  if (k == 3 && l == 0) return -1;
  throw PreconditionError("zero_dim_orientation: only (k,l) = (1,1) or (3,0)");
}

// ---------------------------------------------------------------------------
// Transport along degeneration chains
// ---------------------------------------------------------------------------
//
// The state tracks components at the bookkeeping level needed for signs:
// open components carry boundary labels and internal (label, twist) pairs;
// closed components carry the twists of their tails (node half excluded).
// Steps:
//   boundary: split an open component along a boundary edge whose blocks
//     satisfy the base-type congruences; contributes the normal-direction
//     factor and the Witten commutation factor, which cancel.
//   internal: split internal tails of an open component onto a new closed
//     vertex; contributes delta^(m^c) -- +1 under the default normalization.
//   closed: split a closed component further; complex orientations glue
//     canonically, factor +1.

struct TransportStep {
  enum class Kind { Boundary, Internal, Closed };
  Kind kind = Kind::Boundary;
  int component = 0;                // index into the current component list
  std::vector<std::string> B1;      // boundary labels moved to the new side
  std::vector<std::string> I1;      // internal labels moved to the new side
};

struct TransportState {
  struct OpenComp {
    std::vector<std::string> boundary;
    std::map<std::string, int> internal;  // label -> twist
  };
  struct ClosedComp {
    std::map<std::string, int> tails;  // label -> twist (node half excluded)
  };
  std::vector<OpenComp> open;
  std::vector<ClosedComp> closed;
  int next_id = 1;
};

inline SignLedger transport_sign(const AmbientSpec& ambient,
                                 const std::vector<TransportStep>& chain, int delta = 1,
                                 bool alternate_family = false) {
  if (!ambient_feasible(ambient))
    throw PreconditionError("transport_sign: infeasible ambient component");
  SignLedger ledger;
  TransportState st;
  {
    TransportState::OpenComp c;
    for (int lab : ambient.boundary_labels) c.boundary.push_back("b" + std::to_string(lab));
    for (const auto& [lab, tw] : ambient.internal_twists)
      c.internal["z" + std::to_string(lab)] = tw;
    st.open.push_back(std::move(c));
  }

  for (const auto& step : chain) {
    if (step.kind == TransportStep::Kind::Boundary ||
        step.kind == TransportStep::Kind::Internal) {
      if (step.component < 0 || step.component >= static_cast<int>(st.open.size()))
        throw PreconditionError("transport_sign: no such open component");
      TransportState::OpenComp& c = st.open[step.component];
      for (const auto& b : step.B1)
        if (std::find(c.boundary.begin(), c.boundary.end(), b) == c.boundary.end())
          throw PreconditionError("transport_sign: boundary label '" + b +
                                  "' not in component");
      for (const auto& i : step.I1)
        if (!c.internal.count(i))
          throw PreconditionError("transport_sign: internal label '" + i +
                                  "' not in component");
    }

    if (step.kind == TransportStep::Kind::Boundary) {
      TransportState::OpenComp& c = st.open[step.component];
      TransportState::OpenComp side1, side2;
      long long sum1 = 0, sum2 = 0;
      for (const auto& b : c.boundary) {
        bool in1 = std::find(step.B1.begin(), step.B1.end(), b) != step.B1.end();
        (in1 ? side1 : side2).boundary.push_back(b);
      }
      for (const auto& [lab, tw] : c.internal) {
        bool in1 = std::find(step.I1.begin(), step.I1.end(), lab) != step.I1.end();
        (in1 ? side1 : side2).internal[lab] = tw;
        (in1 ? sum1 : sum2) += tw;
      }
      int r = ambient.r;
      long long nb1 = static_cast<long long>(side1.boundary.size());
      long long nb2 = static_cast<long long>(side2.boundary.size());
      if (mod_pos(nb1 - 1 - sum1, r) != 0 || mod_pos(nb2 - sum2, r) != 0)
        throw PreconditionError(
            "transport_sign: boundary split violates the block congruences");
      int moduli = boundary_split_sign(static_cast<int>(nb1), static_cast<int>(nb2));
      ledger.factors.push_back(
          {moduli, "normal-direction",
           "(-1)^((|B1|-1)|B2|) with |B1|=" + std::to_string(nb1) +
               ", |B2|=" + std::to_string(nb2)});
      ledger.factors.push_back(
          {moduli, "witten-commutation",
           "commuting the side-2 fiber past the side-1 moduli factor"});
      side2.boundary.insert(side2.boundary.begin(),
                            "h" + std::to_string(st.next_id++));
      st.open[step.component] = std::move(side1);
      st.open.push_back(std::move(side2));
    } else if (step.kind == TransportStep::Kind::Internal) {
      if (step.I1.size() < 2)
        throw PreconditionError("transport_sign: internal split needs >= 2 tails");
      TransportState::OpenComp& c = st.open[step.component];
      TransportState::ClosedComp cc;
      std::vector<int> tws;
      long long sum = 0;
      for (const auto& lab : step.I1) {
        cc.tails[lab] = c.internal.at(lab);
        tws.push_back(mod_pos(c.internal.at(lab), ambient.r));
        sum += c.internal.at(lab);
        c.internal.erase(lab);
      }
      int mc = mc_invariant(ambient.r, tws);
      int val = mc % 2 == 0 ? 1 : delta;
      ledger.factors.push_back(
          {val, "closed-split",
           "delta^(m^c) with m^c=" + std::to_string(mc) + ", delta=" +
               std::to_string(delta)});
      c.internal["n" + std::to_string(st.next_id++)] = mod_pos(sum, ambient.r);
      st.closed.push_back(std::move(cc));
    } else {  // Closed split
      if (step.component < 0 || step.component >= static_cast<int>(st.closed.size()))
        throw PreconditionError("transport_sign: no such closed component");
      if (step.I1.size() < 2)
        throw PreconditionError("transport_sign: closed split needs >= 2 tails");
      TransportState::ClosedComp& c = st.closed[step.component];
      TransportState::ClosedComp far;
      long long sum = 0;
      for (const auto& lab : step.I1) {
        if (!c.tails.count(lab))
          throw PreconditionError("transport_sign: tail '" + lab +
                                  "' not in closed component");
        far.tails[lab] = c.tails.at(lab);
        sum += c.tails.at(lab);
        c.tails.erase(lab);
      }
      ledger.factors.push_back(
          {1, "closed-glue", "complex orientations glue canonically"});
      c.tails["n" + std::to_string(st.next_id++)] = mod_pos(sum, ambient.r);
      st.closed.push_back(std::move(far));
    }
  }

  if (alternate_family) {
    int nb = static_cast<int>(ambient.boundary_labels.size());
    int val = (nb - 1) % 2 == 0 ? 1 : -1;
    ledger.factors.push_back(
        {val, "family-flip", "(-1)^(|B|-1) with |B|=" + std::to_string(nb)});
  }
  return ledger;
}

}  // namespace rspin
