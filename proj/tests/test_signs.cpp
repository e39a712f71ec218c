#include <doctest.h>

#include <random>

#include "rspin/signs.hpp"

using namespace rspin;

TEST_CASE("mc_invariant: pinned values") {
  CHECK(mc_invariant(3, {2, 2}) == 1);
  CHECK(mc_invariant(3, {2}) == 0);
  CHECK(mc_invariant(3, {1, 1}) == 0);
  CHECK(mc_invariant(2, {0, 0}) == 0);
  CHECK(mc_invariant(5, {4, 4}) == 1);
  CHECK_THROWS_AS(mc_invariant(3, {}), PreconditionError);
  CHECK_THROWS_AS(mc_invariant(3, {3}), PreconditionError);
}

TEST_CASE("mc_invariant is always a non-negative integer (exhaustive, r <= 7)") {
  for (int r = 2; r <= 7; ++r) {
    std::vector<int> cur;
    // all non-decreasing tuples of length <= 3
    for (int x = 0; x < r; ++x) {
      CHECK(mc_invariant(r, {x}) >= 0);
      for (int y = x; y < r; ++y) {
        CHECK(mc_invariant(r, {x, y}) >= 0);
        for (int z = y; z < r; ++z) CHECK(mc_invariant(r, {x, y, z}) >= 0);
      }
    }
  }
}

TEST_CASE("mc recursion: m^c(I) = m^c(I1) + m^c(I2 + node twist), r <= 7, |I| <= 6") {
  std::mt19937 rng(12);
  for (int r = 2; r <= 7; ++r) {
    std::uniform_int_distribution<int> tw(0, r - 1);
    for (int n = 2; n <= 6; ++n)
      for (int rep = 0; rep < 40; ++rep) {
        std::vector<int> a(n);
        for (int& x : a) x = tw(rng);
        int whole = mc_invariant(r, a);
        // every nonempty proper-or-full subset as side 1
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
          std::vector<int> I1, I2;
          long long sum1 = 0;
          for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1u) {
              I1.push_back(a[i]);
              sum1 += a[i];
            } else {
              I2.push_back(a[i]);
            }
          I2.push_back(static_cast<int>(mod_pos(sum1, r)));
          INFO("r=", r, " mask=", mask);
          CHECK(whole == mc_invariant(r, I1) + mc_invariant(r, I2));
        }
      }
  }
}

TEST_CASE("closed_split_sign: identically +1 under the default normalization") {
  std::mt19937 rng(77);
  for (int r = 2; r <= 7; ++r) {
    std::uniform_int_distribution<int> tw(0, r - 1);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<int> a(2 + rep % 4);
      for (int& x : a) x = tw(rng);
      CHECK(closed_split_sign(r, a) == 1);
      int mc = mc_invariant(r, a);
      CHECK(closed_split_sign(r, a, -1) == (mc % 2 == 0 ? 1 : -1));
    }
  }
  CHECK_THROWS_AS(closed_split_sign(3, {1}, 2), PreconditionError);
}

TEST_CASE("boundary_split_sign: (-1)^((|B1|-1)|B2|)") {
  CHECK(boundary_split_sign(3, 2) == 1);
  CHECK(boundary_split_sign(2, 3) == -1);
  CHECK(boundary_split_sign(1, 5) == 1);   // |B1|-1 = 0
  CHECK(boundary_split_sign(4, 1) == -1);
  CHECK(boundary_split_sign(0, 3) == -1);  // (-1)^(-3)
  CHECK_THROWS_AS(boundary_split_sign(-1, 2), PreconditionError);
}

TEST_CASE("rotation_signs: equal factors with product +1") {
  for (int k = 1; k <= 10; ++k)
    for (int h = 0; h <= k; ++h) {
      RotationSigns s = rotation_signs(k, h);
      int expect = ((k - 1) * h) % 2 == 0 ? 1 : -1;
      CHECK(s.sign_W == expect);
      CHECK(s.sign_M == expect);
      CHECK(s.product == 1);
    }
  CHECK_THROWS_AS(rotation_signs(0, 1), PreconditionError);
}

TEST_CASE("zero_dim_orientation base cases") {
  CHECK(zero_dim_orientation(1, 1) == 1);
  CHECK(zero_dim_orientation(3, 0) == -1);
  CHECK_THROWS_AS(zero_dim_orientation(2, 1), PreconditionError);
}

static AmbientSpec make_ambient(int r, int k, const std::vector<int>& a) {
  AmbientSpec spec;
  spec.r = r;
  for (int i = 1; i <= k; ++i) spec.boundary_labels.push_back(i);
  for (size_t i = 0; i < a.size(); ++i)
    spec.internal_twists[static_cast<int>(i + 1)] = a[i];
  return spec;
}

TEST_CASE("transport_sign: boundary split pairs cancelling factors") {
  AmbientSpec amb = make_ambient(2, 5, {});
  TransportStep step;
  step.kind = TransportStep::Kind::Boundary;
  step.B1 = {"b1", "b2", "b3"};
  SignLedger led = transport_sign(amb, {step});
  REQUIRE(led.factors.size() == 2);
  CHECK(led.factors[0].rule == "normal-direction");
  CHECK(led.factors[1].rule == "witten-commutation");
  CHECK(led.factors[0].value == led.factors[1].value);
  CHECK(led.product() == 1);
}

TEST_CASE("transport_sign: internal split contributes delta^(m^c)") {
  AmbientSpec amb = make_ambient(3, 2, {2, 2});
  TransportStep step;
  step.kind = TransportStep::Kind::Internal;
  step.I1 = {"z1", "z2"};
  CHECK(transport_sign(amb, {step}).product() == 1);
  SignLedger led = transport_sign(amb, {step}, -1);
  REQUIRE(led.factors.size() == 1);
  CHECK(led.factors[0].rule == "closed-split");
  CHECK(led.product() == -1);  // m^c({2,2}) = 1 at r = 3
}

TEST_CASE("transport_sign: order independence of commuting steps") {
  AmbientSpec amb = make_ambient(3, 2, {2, 2});
  TransportStep internal_split;
  internal_split.kind = TransportStep::Kind::Internal;
  internal_split.I1 = {"z1", "z2"};

  // order A: internal split first, then split off b1 from component 0
  TransportStep bdryA;
  bdryA.kind = TransportStep::Kind::Boundary;
  bdryA.B1 = {"b1"};
  SignLedger a = transport_sign(amb, {internal_split, bdryA}, -1);

  // order B: boundary split first (internal tails go to side 2 = component 1)
  TransportStep bdryB = bdryA;
  TransportStep internalB = internal_split;
  internalB.component = 1;
  SignLedger b = transport_sign(amb, {bdryB, internalB}, -1);

  CHECK(a.product() == b.product());
  auto values = [](const SignLedger& l) {
    std::multiset<std::pair<std::string, int>> out;
    for (const auto& f : l.factors) out.insert({f.rule, f.value});
    return out;
  };
  CHECK(values(a) == values(b));
}

TEST_CASE("transport_sign: closed splits glue canonically") {
  AmbientSpec amb = make_ambient(2, 1, {1, 1, 0});
  TransportStep mk_closed;
  mk_closed.kind = TransportStep::Kind::Internal;
  mk_closed.I1 = {"z1", "z2", "z3"};
  TransportStep split_closed;
  split_closed.kind = TransportStep::Kind::Closed;
  split_closed.component = 0;
  split_closed.I1 = {"z1", "z2"};
  SignLedger led = transport_sign(amb, {mk_closed, split_closed});
  REQUIRE(led.factors.size() == 2);
  CHECK(led.factors[1].rule == "closed-glue");
  CHECK(led.factors[1].value == 1);
}

TEST_CASE("transport_sign: the alternate family flips by (-1)^(|B|-1)") {
  AmbientSpec amb = make_ambient(3, 2, {1});
  SignLedger plain = transport_sign(amb, {});
  SignLedger alt = transport_sign(amb, {}, 1, true);
  CHECK(plain.product() == 1);
  CHECK(alt.product() == -1);  // |B| = 2
  CHECK(alt.factors.back().rule == "family-flip");

  AmbientSpec amb3 = make_ambient(2, 3, {});
  CHECK(transport_sign(amb3, {}, 1, true).product() == 1);  // |B| = 3
}

TEST_CASE("transport_sign: preconditions") {
  AmbientSpec bad = make_ambient(2, 4, {});  // parity fails
  CHECK_THROWS_AS(transport_sign(bad, {}), PreconditionError);

  AmbientSpec amb = make_ambient(2, 5, {});
  TransportStep step;
  step.kind = TransportStep::Kind::Boundary;
  step.B1 = {"b9"};
  CHECK_THROWS_AS(transport_sign(amb, {step}), PreconditionError);

  step.B1 = {"b1", "b2"};  // |B1|-1 = 1 != 0 (mod 2): congruence fails
  CHECK_THROWS_AS(transport_sign(amb, {step}), PreconditionError);

  TransportStep tiny;
  tiny.kind = TransportStep::Kind::Internal;
  tiny.I1 = {"z1"};
  AmbientSpec amb2 = make_ambient(3, 2, {2, 2});
  CHECK_THROWS_AS(transport_sign(amb2, {tiny}), PreconditionError);
}
