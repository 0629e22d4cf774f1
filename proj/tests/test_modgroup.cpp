#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "doctest.h"
#include "repzeta/errors.hpp"
#include "repzeta/modgroup.hpp"

using namespace repzeta;

namespace {

std::set<std::uint64_t> encodings(const FiniteGroup& g) {
  std::set<std::uint64_t> out;
  for (Index i = 0; i < g.order(); ++i) out.insert(g.encoding(i));
  return out;
}

}  // namespace

TEST_CASE("SL_2 orders against the determinant scan") {
  for (const char* spelling : {"zmod:2", "zmod:3", "zmod:2^2", "zmod:5", "tpoly:2^2", "zmod:3^2", "tpoly:3^2",
                               "zmod:2^3", "zmod:5^2", "tpoly:5^2"}) {
    CAPTURE(spelling);
    const auto spec = LocalRingSpec::parse(spelling);
    const auto g = build_sl(2, spec);
    const auto scan = sl_encodings_by_scan(2, spec);
    CHECK(g.order() == scan.size());
    CHECK(encodings(g) == std::set<std::uint64_t>(scan.begin(), scan.end()));
    CHECK(g.order() == projected_sl_order(2, spec));
    // p^{3r}(1 - p^{-2})
    const std::uint64_t q = spec.cardinality(), p = spec.p;
    CHECK(g.order() * p * p == q * q * q * (p * p - 1));
  }
  CHECK(build_sl(2, LocalRingSpec::parse("zmod:2")).order() == 6);
  CHECK(build_sl(2, LocalRingSpec::parse("zmod:3")).order() == 24);
  CHECK(build_sl(2, LocalRingSpec::parse("zmod:2^2")).order() == 48);
}

TEST_CASE("closure, inverses and determinants") {
  const auto g = build_sl(2, LocalRingSpec::parse("zmod:3^2"));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(g.order() - 1));
  for (int t = 0; t < 10000; ++t) {
    const Index a = pick(rng), b = pick(rng);
    const Index ab = g.mul(a, b);
    CHECK(ab < g.order());
    CHECK(g.mul(a, g.inverse(a)) == g.identity());
  }
  for (Index a = 0; a < g.order(); ++a) CHECK(determinant(g.ring(), 2, g.entries(a)) == g.ring().one());
  const auto g3 = build_sl(3, LocalRingSpec::parse("zmod:2"));
  CHECK(g3.order() == 168);
}

TEST_CASE("element order is deterministic") {
  const auto a = build_sl(2, LocalRingSpec::parse("zmod:3^2"));
  const auto b = build_sl(2, LocalRingSpec::parse("zmod:3^2"));
  for (Index i = 0; i < a.order(); ++i) REQUIRE(a.encoding(i) == b.encoding(i));
}

TEST_CASE("budget is enforced from the projected order") {
  GroupOptions opt;
  opt.element_budget = 1000;
  try {
    (void)build_sl(2, LocalRingSpec::parse("zmod:3^3"), opt);
    FAIL("expected a size-limit error");
  } catch (const SizeLimitExceeded& e) {
    CHECK(e.projected() == 17496);
  }
}

TEST_CASE("named groups") {
  CHECK(build_named("trivial").order() == 1);
  CHECK(build_named("symmetric_3").order() == 6);
  CHECK(build_named("s4").order() == 24);
  CHECK(build_named("quaternion8").order() == 8);
  CHECK(build_named("q8").order() == 8);
  CHECK(build_named("dihedral_4").order() == 8);
  CHECK(build_named("named:d5").order() == 10);
  CHECK(build_named("symmetric_8").order() == 40320);
  CHECK_THROWS_AS(build_named("monster"), UnknownGroup);
  CHECK_THROWS_AS(build_named("symmetric_9"), InvalidArgument);
}

TEST_CASE("conjugacy classes") {
  const auto check_invariants = [](const FiniteGroup& g, const ConjugacyData& c) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < c.count(); ++i) {
      total += c.classes[i].size;
      CHECK(c.classes[i].size * c.centralizer[i] == g.order());
      CHECK(c.inverse_class[c.inverse_class[i]] == i);
    }
    CHECK(total == g.order());
    CHECK(c.class_of[g.identity()] == 0);
  };
  const auto s3 = build_named("symmetric_3");
  const auto c3 = conjugacy(s3);
  REQUIRE(c3.count() == 3);
  CHECK(c3.classes[0].size == 1);
  CHECK(c3.classes[1].size == 2);
  CHECK(c3.classes[2].size == 3);
  CHECK(c3.exponent == 6);
  check_invariants(s3, c3);
  CHECK(conjugacy(build_named("trivial")).count() == 1);
  CHECK(conjugacy(build_named("q8")).count() == 5);
  CHECK(conjugacy(build_named("d4")).count() == 5);

  const auto sl = build_sl(2, LocalRingSpec::parse("zmod:3"));
  const auto csl = conjugacy(sl);
  CHECK(csl.count() == 7);
  check_invariants(sl, csl);
  // brute-force orbit oracle
  std::vector<std::uint32_t> oracle(sl.order(), 0xffffffffu);
  std::uint32_t next = 0;
  for (Index x = 0; x < sl.order(); ++x) {
    if (oracle[x] != 0xffffffffu) continue;
    for (Index h = 0; h < sl.order(); ++h) oracle[sl.conjugate(x, h)] = next;
    ++next;
  }
  CHECK(next == 7);
  for (Index x = 0; x < sl.order(); ++x)
    for (Index y = 0; y < sl.order(); ++y) REQUIRE((oracle[x] == oracle[y]) == (csl.class_of[x] == csl.class_of[y]));

  const auto big = build_sl(2, LocalRingSpec::parse("zmod:2^3"));
  check_invariants(big, conjugacy(big));
}

TEST_CASE("congruence filtration and quotients") {
  const auto g = build_sl(2, LocalRingSpec::parse("zmod:2^2"));
  const auto f = congruence_filtration(g);
  REQUIRE(f.levels() == 2);
  CHECK(f.kernels[0].size() == 48);
  CHECK(f.kernels[1].size() == 8);
  CHECK(f.kernels[2].size() == 1);

  const auto g9 = build_sl(2, LocalRingSpec::parse("zmod:3^2"));
  const auto f9 = congruence_filtration(g9);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(g9.order() - 1));
  for (std::uint32_t i = 0; i <= 2; ++i) {
    const auto q = quotient_group(g9, i);
    CHECK(f9.kernels[i].size() * q.group.order() == g9.order());
    const std::set<Index> kernel(f9.kernels[i].begin(), f9.kernels[i].end());
    for (int t = 0; t < 200; ++t) {
      const Index h = pick(rng);
      const Index k = f9.kernels[i][static_cast<std::size_t>(pick(rng)) % f9.kernels[i].size()];
      CHECK(kernel.contains(g9.conjugate(k, h)));
      const Index a = pick(rng), b = pick(rng);
      CHECK(q.projection[g9.mul(a, b)] == q.group.mul(q.projection[a], q.projection[b]));
    }
  }
  CHECK(quotient_group(g9, 1).group.order() == 24);
  CHECK(quotient_group(g9, 0).group.order() == 1);
  CHECK(quotient_group(g9, 2).group.order() == 648);
  const auto q1 = quotient_group(g9, 1).group;
  CHECK(conjugacy(q1).count() == 7);
}

TEST_CASE("class count does not depend on generator order") {
  const auto g = build_sl(2, LocalRingSpec::parse("zmod:2^3"));
  std::vector<std::uint32_t> entries;
  for (Index i = 0; i < g.order(); ++i) entries.insert(entries.end(), g.entries(i).begin(), g.entries(i).end());
  std::vector<Index> gens(g.generators().begin(), g.generators().end());
  std::reverse(gens.begin(), gens.end());
  const auto h = FiniteGroup::from_matrices("copy", g.ring_ptr(), 2, std::move(entries), gens);
  CHECK(conjugacy(h).count() == conjugacy(g).count());
}

TEST_CASE("binary group cache round trip") {
  const auto spec = LocalRingSpec::parse("zmod:3^2");
  const auto g = build_sl(2, spec);
  const auto c = conjugacy(g);
  const auto path = std::filesystem::temp_directory_path() / cache_file_name(2, spec);
  save_group_cache(path, g, c);
  const auto [h, hc] = load_group_cache(path);
  std::filesystem::remove(path);
  CHECK(h.order() == g.order());
  CHECK(h.name() == g.name());
  CHECK(hc.class_of == c.class_of);
  CHECK(hc.exponent == c.exponent);
  for (Index i = 0; i < g.order(); ++i) REQUIRE(h.encoding(i) == g.encoding(i));
  CHECK(cache_file_name(2, spec) == "sl_d2_zmod_3_2.grp");
}
