#include <random>

#include "doctest.h"
#include "repzeta/wordmap.hpp"

using namespace repzeta;

namespace {

std::vector<FiniteGroup> small_groups() {
  std::vector<FiniteGroup> out;
  for (const char* name : {"trivial", "symmetric_3", "d4", "q8", "d5", "symmetric_4"}) out.push_back(build_named(name));
  out.push_back(build_sl(2, LocalRingSpec::parse("zmod:3")));
  out.push_back(build_sl(2, LocalRingSpec::parse("zmod:2^2")));
  return out;
}

mpz_class pow_mpz(std::uint64_t base, unsigned e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

}  // namespace

TEST_CASE("commutator distribution") {
  for (const auto& g : small_groups()) {
    CAPTURE(g.name());
    const auto c = conjugacy(g);
    const auto fast = commutator_distribution(g, c);
    CHECK(fast == commutator_distribution_brute(g, c));
    CHECK(mass(fast, c) == pow_mpz(g.order(), 2));
    CHECK(fast == commutator_distribution(g, c, 3));
  }
  const auto s3 = build_named("symmetric_3");
  const auto c3 = conjugacy(s3);
  const auto dist = commutator_distribution(s3, c3);
  CHECK(dist[0] == 18);
  CHECK(dist[1] == 9);  // 3-cycles
  CHECK(dist[2] == 0);
  // cyclic group of order 5: abelian, every commutator trivial
  std::vector<std::uint32_t> entries;
  for (std::uint32_t s = 0; s < 5; ++s)
    for (std::uint32_t x = 0; x < 5; ++x) entries.push_back((x + s) % 5);
  const auto cyclic = FiniteGroup::from_permutations("C5", GroupFamily::trivial, 5, entries, {1});
  const auto cc = conjugacy(cyclic);
  const auto abelian = commutator_distribution(cyclic, cc);
  CHECK(abelian[cc.class_of[0]] == 25);
  for (std::size_t i = 1; i < abelian.size(); ++i) CHECK(abelian[i] == 0);
  const auto triv = build_named("trivial");
  CHECK(commutator_distribution(triv, conjugacy(triv))[0] == 1);
}

TEST_CASE("fiber counts against tuple enumeration") {
  for (const auto& g : small_groups()) {
    if (g.order() > 50) continue;
    CAPTURE(g.name());
    const auto analysis = analyze_group(g);
    for (unsigned n = 1; n <= 2; ++n) {
      const auto fibers = fiber_counts(analysis, n);
      const auto brute = fiber_counts_brute(g, n);
      for (Index x = 0; x < g.order(); ++x) REQUIRE(fibers[analysis.conj.class_of[x]] == brute[x]);
      CHECK(mass(fibers, analysis.conj) == pow_mpz(g.order(), 2 * n));
      std::mt19937_64 rng(5);
      std::uniform_int_distribution<Index> pick(0, static_cast<Index>(g.order() - 1));
      for (int t = 0; t < 100; ++t) {
        const Index x = pick(rng), h = pick(rng);
        CHECK(brute[x] == brute[g.conjugate(x, h)]);
      }
    }
  }
  const auto s3 = analyze_group(build_named("symmetric_3"));
  CHECK(fiber_counts(s3, 2)[0] == 486);
  CHECK(fiber_counts(s3, 1)[1] == 9);
  const auto triv = analyze_group(build_named("trivial"));
  for (unsigned n = 1; n <= 3; ++n) CHECK(fiber_counts(triv, n)[0] == 1);
}

TEST_CASE("convolution preserves mass") {
  const auto g = analyze_group(build_named("symmetric_4"));
  ClassFunction f(g.conj.count()), h(g.conj.count());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = static_cast<long>(i * 3 + 1);
    h[i] = static_cast<long>(7 - i);
  }
  CHECK(mass(convolve(f, h, g.constants), g.conj) == mass(f, g.conj) * mass(h, g.conj));
}

TEST_CASE("zeta from fibers equals zeta from degrees") {
  for (const auto& g : small_groups()) {
    CAPTURE(g.name());
    const auto analysis = analyze_group(g);
    const auto degrees = dixon_mod_table(analysis.conj, analysis.constants, g.order()).degrees;
    for (unsigned n = 2; n <= 3; ++n)
      CHECK(zeta_from_fibers(fiber_counts(analysis, n), g.order(), n) == zeta_even(degrees, 2 * n - 2));
  }
  CHECK(zeta_from_fibers(fiber_counts(analyze_group(build_named("s3")), 2), 6, 2) == mpq_class(9, 4));
  CHECK(zeta_from_fibers(fiber_counts(analyze_group(build_sl(2, LocalRingSpec::parse("zmod:3"))), 2), 24, 2) ==
        mpq_class(139, 36));
}

TEST_CASE("Frobenius congruences") {
  for (const auto& g : small_groups()) {
    CAPTURE(g.name());
    const auto analysis = analyze_group(g);
    const auto primes = dixon_primes(g.order(), analysis.conj.exponent, 3);
    for (unsigned n = 1; n <= 2; ++n) {
      const auto report = frobenius_identity_check(analysis, fiber_counts(analysis, n), n, primes);
      CHECK(report.ok());
      CHECK(report.checked == 3 * analysis.conj.count());
    }
  }
  const auto s3 = analyze_group(build_named("s3"));
  auto broken = fiber_counts(s3, 2);
  broken[0] += 1;
  CHECK_FALSE(frobenius_identity_check(s3, broken, 2, dixon_primes(6, 6, 3)).ok());
}

TEST_CASE("congruence density profile") {
  const auto profile = congruence_density_profile(2, LocalRingSpec::parse("zmod:2^3"), 2);
  REQUIRE(profile.size() == 4);
  CHECK(profile[0].density == 1);
  CHECK(profile[1].density == mpq_class(9, 4));
  for (std::size_t i = 0; i < profile.size(); ++i) {
    CHECK(profile[i].matches);
    if (i > 0) CHECK(profile[i].density >= profile[i - 1].density);
  }
}

TEST_CASE("stabilization and cross characteristic") {
  const auto series = stabilization_series(2, RingKind::integer_quotient, 2, 3, 2);
  REQUIRE(series.rows.size() == 3);
  CHECK(series.rows[0].zeta == mpq_class(9, 4));
  CHECK_FALSE(series.rows[0].increment.has_value());
  for (std::size_t i = 1; i < series.rows.size(); ++i) CHECK(*series.rows[i].increment > 0);
  ComputeOptions small;
  small.element_budget = 1000;
  const auto cut = stabilization_series(2, RingKind::integer_quotient, 2, 5, 2, small);
  CHECK(cut.truncated);
  CHECK(cut.rows.size() == 3);

  const auto level1 = cross_char_compare(5, 1, 2);
  CHECK(level1.equal);
  CHECK(level1.zeta_zmod == sl_zeta(2, LocalRingSpec::parse("zmod:5"), 2));
  const auto level2 = cross_char_compare(3, 2, 2);
  CHECK(level2.order == 648);
  MESSAGE("zmod:3^2 " << level2.zeta_zmod.get_str() << " tpoly:3^2 " << level2.zeta_tpoly.get_str());
}
