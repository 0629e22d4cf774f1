#include "doctest.h"
#include "repzeta/errors.hpp"
#include "repzeta/padicpush.hpp"

using namespace repzeta;

namespace {

mpq_class qpow(long q, int e) {
  mpq_class out = 1;
  for (int k = 0; k < (e < 0 ? -e : e); ++k) out *= q;
  return e < 0 ? mpq_class(1 / out) : out;
}

}  // namespace

TEST_CASE("padicpush: spec parsing and validation") {
  const auto s = MonomialSpec::parse("1,1", "0,1", 3);
  CHECK(s.a == std::vector<unsigned>{1, 1});
  CHECK(s.to_string() == "A=(1,1),B=(0,1),q=3");
  CHECK_THROWS_AS(MonomialSpec::parse("1,1", "0", 3), InvalidArgument);
  CHECK_THROWS_AS(MonomialSpec::parse("0,0", "0,0", 3), InvalidArgument);
  CHECK_THROWS_AS(MonomialSpec::parse("1", "0", 6), InvalidArgument);
  CHECK_THROWS_AS(MonomialSpec::parse("1,x", "0,0", 3), InvalidArgument);
  CHECK(is_prime_power(9));
  CHECK(is_prime_power(2));
  CHECK_FALSE(is_prime_power(12));
  CHECK_FALSE(is_prime_power(1));
}

TEST_CASE("padicpush: annulus masses") {
  for (std::uint64_t q : {2u, 3u, 5u}) {
    const MonomialSpec id{{1}, {0}, q};
    for (unsigned r = 0; r <= 10; ++r) CHECK(annulus_mass(id, r) == mpq_class(q - 1, q) * qpow(q, -int(r)));
  }
  const MonomialSpec sq{{2}, {1}, 3};
  for (unsigned r = 1; r <= 15; r += 2) CHECK(annulus_mass(sq, r) == 0);
  const MonomialSpec two{{1, 1}, {0, 1}, 3};
  const mpq_class c(2, 3);
  CHECK(annulus_mass(two, 2) == c * c * (qpow(3, -2) + qpow(3, -3) + qpow(3, -4)));
}

TEST_CASE("padicpush: dynamic programming agrees with valuation-vector enumeration") {
  for (const auto& s : pushforward_suite()) {
    CAPTURE(s.to_string());
    const auto dp = annulus_masses(s, 12);
    for (unsigned r = 0; r <= 12; ++r) CHECK(dp[r] == annulus_mass_enumerated(s, r, 12));
  }
}

TEST_CASE("padicpush: attained annuli are exactly those with positive mass") {
  for (const auto& s : pushforward_suite())
    for (const auto& p : density_series(s, 30)) CHECK(p.attained == (p.mass > 0));
}

TEST_CASE("padicpush: partial sums approach the total mass within the tail bound") {
  for (const auto& s : pushforward_suite()) {
    CAPTURE(s.to_string());
    mpq_class partial = 0;
    for (const auto& m : annulus_masses(s, 60)) partial += m;
    const mpq_class gap = total_mass(s) - partial;
    CHECK(gap >= 0);
    CHECK(gap <= mass_tail_bound(s, 60));
  }
}

TEST_CASE("padicpush: continuity hypotheses") {
  auto tag = [](std::vector<unsigned> a, std::vector<unsigned> b) {
    return continuity_guaranteed(MonomialSpec{a, b, 3}).tag;
  };
  CHECK(tag({1}, {0}) == ContinuityCase::case1);
  CHECK(tag({2}, {1}) == ContinuityCase::none);
  CHECK(tag({1, 1}, {0, 1}) == ContinuityCase::case1);
  CHECK(tag({1, 1}, {0, 0}) == ContinuityCase::none);
  CHECK(tag({2, 2}, {2, 3}) == ContinuityCase::case2);
  CHECK(*continuity_guaranteed(MonomialSpec{{0, 1}, {2, 0}, 3}).unit_index == 1);
  CHECK_THROWS_AS(limit_average_density(MonomialSpec{{1, 1}, {0, 0}, 3}), CriterionNotMet);
}

TEST_CASE("padicpush: canonical limits and series") {
  const MonomialSpec id{{1}, {0}, 3};
  CHECK(limit_average_density(id).value == 1);
  for (const auto& p : density_series(id, 40)) CHECK(p.average_density == 1);
  CHECK(observed_behavior(density_series(id, 60)) == SeriesBehavior::constant);

  const MonomialSpec sq{{2}, {1}, 3};
  const auto osc = density_series(sq, 60);
  for (const auto& p : osc) CHECK((p.r % 2 == 0 ? p.average_density > 0 : p.average_density == 0));
  CHECK(observed_behavior(osc) == SeriesBehavior::non_convergent);

  const MonomialSpec two{{1, 1}, {0, 1}, 3};
  CHECK(limit_average_density(two).value == 1);
  const auto conv = density_series(two, 60);
  for (unsigned r = 2; r <= 60; ++r)
    CHECK(abs(conv[r].average_density - 1) < abs(conv[r - 1].average_density - 1));
  CHECK(observed_behavior(conv) == SeriesBehavior::converging);
}

TEST_CASE("padicpush: densities stay within the analytic bound of the limit") {
  for (const auto& s : pushforward_suite()) {
    if (!continuity_guaranteed(s).guaranteed) continue;
    CAPTURE(s.to_string());
    const auto lim = limit_average_density(s).value;
    for (const auto& p : density_series(s, 60)) {
      const mpq_class dev = abs(lim - p.average_density);
      CHECK(dev <= density_tail_bound(s, p.r));
    }
  }
}

TEST_CASE("padicpush: Cauchy tail on [40, 60] where the bound predicts it") {
  const mpq_class threshold(1, 1000000000);
  std::size_t checked = 0;
  for (const auto& s : pushforward_suite()) {
    if (!continuity_guaranteed(s).guaranteed) continue;
    const auto lim = limit_average_density(s).value;
    if (lim == 0 || density_tail_bound(s, 40) >= threshold * lim) continue;
    CAPTURE(s.to_string());
    ++checked;
    const auto series = density_series(s, 60);
    mpq_class lo = series[40].average_density, hi = lo;
    for (unsigned r = 40; r <= 60; ++r) {
      lo = std::min(lo, series[r].average_density);
      hi = std::max(hi, series[r].average_density);
    }
    CHECK(hi - lo < threshold * lim);
  }
  CHECK(checked >= 10);
}

TEST_CASE("padicpush: criterion and observed behaviour agree on the suite") {
  const auto suite = pushforward_suite();
  CHECK(suite.size() == 30);
  for (const auto& s : suite) {
    CAPTURE(s.to_string());
    const bool guaranteed = continuity_guaranteed(s).guaranteed;
    const auto seen = observed_behavior(density_series(s, 60));
    CHECK(guaranteed == (seen != SeriesBehavior::non_convergent));
  }
}
