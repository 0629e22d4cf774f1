#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "repzeta/charzeta.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/modarith.hpp"

using namespace repzeta;

namespace {

std::vector<std::uint64_t> sorted(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct Fixture {
  FiniteGroup group;
  ConjugacyData conj;
  ClassConstants constants;
  explicit Fixture(FiniteGroup g) : group(std::move(g)), conj(conjugacy(group)), constants(class_constants(group, conj)) {}
};

}  // namespace

TEST_CASE("prime field helpers") {
  const modp::Field f{13};
  CHECK(f.mul(f.inv(5), 5) == 1);
  // (x-2)(x-3)(x-3) = x^3 - 8x^2 + 21x - 18
  const modp::Poly p{f.reduce(-18), 21 % 13, f.reduce(-8), 1};
  std::mt19937_64 rng(1);
  CHECK(modp::distinct_roots(f, p, rng) == std::vector<std::uint64_t>{2, 3});
  // diag(1, 2) conjugated by [[1,1],[0,1]]
  modp::Mat m{{1, 1}, {0, 2}};
  CHECK(modp::charpoly(f, m) == modp::Poly{2, f.reduce(-3), 1});
  modp::Mat m3{{0, 1, 0}, {0, 0, 1}, {6, f.reduce(-11), 6}};
  const auto cp = modp::charpoly(f, m3);
  CHECK(modp::distinct_roots(f, cp, rng) == std::vector<std::uint64_t>{1, 2, 3});
}

TEST_CASE("class constants agree three ways") {
  for (const char* name : {"trivial", "symmetric_3", "q8", "d4", "symmetric_4", "d5"}) {
    CAPTURE(name);
    const Fixture fx(build_named(name));
    const auto by_v = class_constants_by_v(fx.group, fx.conj);
    const auto pairs = class_constants_by_pairs(fx.group, fx.conj);
    CHECK(fx.constants == by_v);
    CHECK(fx.constants == pairs);
    const std::size_t k = fx.conj.count();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t total = 0;
        for (std::size_t l = 0; l < k; ++l) total += std::uint64_t{fx.constants(i, j, l)} * fx.conj.classes[l].size;
        CHECK(total == fx.conj.classes[i].size * fx.conj.classes[j].size);
      }
  }
  const Fixture trivial(build_named("trivial"));
  CHECK(trivial.constants(0, 0, 0) == 1);
  const Fixture s3(build_named("symmetric_3"));
  std::uint64_t transpositions = 0;
  for (std::size_t l = 0; l < 3; ++l) transpositions += s3.constants(2, 2, l) * s3.conj.classes[l].size;
  CHECK(transpositions == 9);

  const Fixture sl(build_sl(2, LocalRingSpec::parse("zmod:3")));
  CHECK(sl.constants == class_constants_by_pairs(sl.group, sl.conj));
  CHECK(sl.constants == class_constants(sl.group, sl.conj, 4));
}

TEST_CASE("Dixon degrees") {
  const auto check_table = [](const Fixture& fx, const ModCharTable& t) {
    const std::size_t k = fx.conj.count();
    REQUIRE(t.degrees.size() == k);
    std::uint64_t sum = 0;
    for (auto d : t.degrees) {
      sum += d * d;
      CHECK(fx.group.order() % d == 0);
    }
    CHECK(sum == fx.group.order());
    const modp::Field f{t.ell};
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t u = 0; u < k; ++u) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < k; ++i)
          acc = f.add(acc, f.mul(fx.conj.classes[i].size % f.p, f.mul(t.chi[s][i], t.chi[u][fx.conj.inverse_class[i]])));
        CHECK(acc == (s == u ? fx.group.order() % f.p : 0));
      }
  };
  const Fixture s3(build_named("symmetric_3"));
  const auto t3 = dixon_mod_table(s3.conj, s3.constants, 6);
  CHECK(sorted(t3.degrees) == std::vector<std::uint64_t>{1, 1, 2});
  CHECK(t3.ell == 13);
  check_table(s3, t3);

  const Fixture q8(build_named("quaternion8"));
  const auto tq = dixon_mod_table(q8.conj, q8.constants, 8);
  CHECK(sorted(tq.degrees) == std::vector<std::uint64_t>{1, 1, 1, 1, 2});
  check_table(q8, tq);

  const Fixture sl(build_sl(2, LocalRingSpec::parse("zmod:3")));
  const auto tsl = dixon_mod_table(sl.conj, sl.constants, 24);
  CHECK(sorted(tsl.degrees) == std::vector<std::uint64_t>{1, 1, 1, 2, 2, 2, 3});
  check_table(sl, tsl);

  for (const char* name : {"trivial", "d4", "symmetric_4", "symmetric_5", "d7"}) {
    CAPTURE(name);
    const Fixture fx(build_named(name));
    check_table(fx, dixon_mod_table(fx.conj, fx.constants, fx.group.order()));
  }
  const Fixture sl5(build_sl(2, LocalRingSpec::parse("zmod:5")));
  check_table(sl5, dixon_mod_table(sl5.conj, sl5.constants, sl5.group.order()));
}

TEST_CASE("three primes give the same degrees") {
  for (const auto& g : {build_named("symmetric_4"), build_sl(2, LocalRingSpec::parse("zmod:2^2")),
                        build_sl(2, LocalRingSpec::parse("zmod:5"))}) {
    const Fixture fx(g);
    const auto primes = dixon_primes(g.order(), fx.conj.exponent, 3);
    REQUIRE(primes.size() == 3);
    std::vector<std::vector<std::uint64_t>> runs;
    for (auto ell : primes) {
      DixonOptions opt;
      opt.prime = ell;
      opt.seed = ell;
      runs.push_back(dixon_mod_table(fx.conj, fx.constants, g.order(), opt).degrees);
    }
    CHECK(runs[0] == runs[1]);
    CHECK(runs[1] == runs[2]);
  }
}

TEST_CASE("zeta special values") {
  CHECK(zeta_even({1}, 2) == 1);
  CHECK(zeta_even({1}, 8) == 1);
  CHECK(zeta_even(character_degrees(build_named("symmetric_3")), 2) == mpq_class(9, 4));
  CHECK(zeta_even(character_degrees(build_sl(2, LocalRingSpec::parse("zmod:3"))), 2) == mpq_class(139, 36));
  // closed form for SL_2(F_q), q odd
  for (std::uint64_t q : {5, 7}) {
    std::vector<std::uint64_t> expected{1, q};
    for (std::uint64_t i = 0; i < (q - 3) / 2; ++i) expected.push_back(q + 1);
    for (std::uint64_t i = 0; i < (q - 1) / 2; ++i) expected.push_back(q - 1);
    for (int i = 0; i < 2; ++i) expected.push_back((q + 1) / 2), expected.push_back((q - 1) / 2);
    const auto degrees = character_degrees(build_sl(2, LocalRingSpec{RingKind::integer_quotient, static_cast<std::uint32_t>(q), 1}));
    CHECK(sorted(degrees) == sorted(expected));
  }
  const auto d = character_degrees(build_named("symmetric_4"));
  for (unsigned s = 2; s < 10; s += 2) CHECK(zeta_even(d, s + 2) < zeta_even(d, s));
}
