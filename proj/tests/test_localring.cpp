#include <random>

#include "doctest.h"
#include "repzeta/errors.hpp"
#include "repzeta/localring.hpp"

using namespace repzeta;

namespace {

std::vector<LocalRingSpec> sample_specs() {
  return {LocalRingSpec::parse("zmod:2^3"), LocalRingSpec::parse("zmod:3^2"), LocalRingSpec::parse("zmod:7"),
          LocalRingSpec::parse("tpoly:3^2"), LocalRingSpec::parse("tpoly:2^4"), LocalRingSpec::parse("tpoly:5^2"),
          LocalRingSpec::parse("gf:3^2"), LocalRingSpec::parse("zmod:101^2")};
}

}  // namespace

TEST_CASE("ring spellings") {
  const auto s = LocalRingSpec::parse("zmod:3^2");
  CHECK(s.kind == RingKind::integer_quotient);
  CHECK(s.cardinality() == 9);
  CHECK(s.to_string() == "zmod:3^2");
  CHECK(LocalRingSpec::parse("tpoly:5^2").cardinality() == 25);
  CHECK(LocalRingSpec::parse("gf:3^2").level() == 1);
  CHECK(LocalRingSpec::parse("gf:3^2").residue_field_size() == 9);
  CHECK_THROWS_AS(LocalRingSpec::parse("zmod:4^2"), InvalidArgument);
  CHECK_THROWS_AS(LocalRingSpec::parse("zmod:3^0"), InvalidArgument);
  CHECK_THROWS_AS(LocalRingSpec::parse("qq:3"), InvalidArgument);
}

TEST_CASE("basic arithmetic examples") {
  const LocalRing z9(LocalRingSpec::parse("zmod:3^2"));
  CHECK(z9.add(z9.from_int(5), z9.from_int(7)) == z9.from_int(3));
  try {
    (void)z9.inverse(z9.from_int(3));
    FAIL("expected a non-unit error");
  } catch (const NonUnitError& e) {
    CHECK(e.valuation() == 1);
  }
  const LocalRing t3(LocalRingSpec::parse("tpoly:3^2"));
  const RingElem t{3};  // the code of t is p
  const auto one_plus_t = t3.add(t3.one(), t);
  const auto one_minus_t = t3.sub(t3.one(), t);
  CHECK(t3.mul(one_plus_t, one_minus_t) == t3.one());
  CHECK(t3.format(t3.add(t3.one(), t3.add(t, t))) == "1+2t");
}

TEST_CASE("residue maps") {
  const LocalRing z9(LocalRingSpec::parse("zmod:3^2"));
  CHECK(z9.residue(z9.from_int(7), 1) == RingElem{1});
  CHECK(z9.residue(z9.from_int(7), 2) == z9.from_int(7));
  CHECK(z9.residue(z9.from_int(7), 0) == RingElem{0});
  CHECK_THROWS_AS((void)z9.residue(z9.from_int(7), 3), LevelOutOfRange);
  const LocalRing t3(LocalRingSpec::parse("tpoly:3^2"));
  CHECK(t3.residue(RingElem{1 + 2 * 3}, 1) == RingElem{1});
}

TEST_CASE("ring properties on random pairs") {
  std::mt19937_64 rng(7);
  for (const auto& spec : sample_specs()) {
    CAPTURE(spec.to_string());
    const LocalRing ring(spec);
    std::uniform_int_distribution<std::uint32_t> pick(0, ring.size() - 1);
    const unsigned level = ring.level();
    for (int trial = 0; trial < 1000; ++trial) {
      const RingElem x{pick(rng)}, y{pick(rng)};
      if (ring.is_unit(x)) CHECK(ring.mul(x, ring.inverse(x)) == ring.one());
      const unsigned vx = ring.valuation(x), vy = ring.valuation(y), vxy = ring.valuation(ring.mul(x, y));
      if (vx != kInfiniteValuation && vy != kInfiniteValuation) {
        if (vx + vy < level) CHECK(vxy == vx + vy);
        else CHECK(vxy == kInfiniteValuation);
      } else {
        CHECK(vxy == kInfiniteValuation);
      }
      for (unsigned i = 0; i <= level; ++i) {
        const LocalRing q(spec.at_level(i));
        const auto rx = ring.residue(x, i), ry = ring.residue(y, i);
        CHECK(ring.residue(ring.add(x, y), i) == q.add(rx, ry));
        CHECK(ring.residue(ring.mul(x, y), i) == q.mul(rx, ry));
      }
      if (vy != kInfiniteValuation && vx != kInfiniteValuation && vx >= vy) {
        const auto z = ring.divide_exact(x, y);
        CHECK(ring.mul(y, z) == x);
      }
    }
  }
}

TEST_CASE("additive generators span the ring") {
  for (const auto& spec : sample_specs()) {
    const LocalRing ring(spec);
    std::vector<bool> seen(ring.size(), false);
    std::vector<RingElem> frontier{ring.zero()};
    seen[0] = true;
    while (!frontier.empty()) {
      const auto x = frontier.back();
      frontier.pop_back();
      for (auto g : ring.additive_generators()) {
        const auto y = ring.add(x, g);
        if (!seen[y.code]) {
          seen[y.code] = true;
          frontier.push_back(y);
        }
      }
    }
    CHECK(std::count(seen.begin(), seen.end(), true) == static_cast<long>(ring.size()));
  }
}
