#include "repzeta/padicpush.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "repzeta/errors.hpp"
#include "repzeta/localring.hpp"

namespace repzeta {

namespace {

mpq_class q_pow_neg(std::uint64_t q, unsigned long e) {
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), mpz_class(std::to_string(q)).get_mpz_t(), e);
  return mpq_class(mpz_class(1), den);
}

// c / (1 - q^-(b+1)), the mass of one variable that the map ignores
mpq_class free_factor(std::uint64_t q, unsigned b) { return unit_mass(q) / (1 - q_pow_neg(q, b + 1)); }

mpq_class free_part(const MonomialSpec& s) {
  mpq_class f = 1;
  for (std::size_t i = 0; i < s.a.size(); ++i)
    if (s.a[i] == 0) f *= free_factor(s.q, s.b[i]);
  return f;
}

std::vector<unsigned> parse_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InvalidArgument("bad exponent list '" + text + "'");
    out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  if (out.empty()) throw InvalidArgument("empty exponent list");
  return out;
}

std::string join(const std::vector<unsigned>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

bool is_prime_power(std::uint64_t q) noexcept {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    return q == 1;
  }
  return true;
}

void MonomialSpec::validate() const {
  if (a.size() != b.size()) throw InvalidArgument("A and B must have the same length");
  if (a.empty() || std::all_of(a.begin(), a.end(), [](unsigned x) { return x == 0; }))
    throw InvalidArgument("A must have a nonzero entry");
  if (!is_prime_power(q)) throw InvalidArgument("q must be a prime power");
}

MonomialSpec MonomialSpec::parse(const std::string& a, const std::string& b, std::uint64_t q) {
  MonomialSpec s{parse_list(a), parse_list(b), q};
  s.validate();
  return s;
}

std::string MonomialSpec::to_string() const { return "A=(" + join(a) + "),B=(" + join(b) + "),q=" + std::to_string(q); }

mpq_class unit_mass(std::uint64_t q) {
  mpq_class c(mpz_class(std::to_string(q - 1)), mpz_class(std::to_string(q)));
  c.canonicalize();
  return c;
}

mpq_class haar_annulus(std::uint64_t q, unsigned r) { return unit_mass(q) * q_pow_neg(q, r); }

std::vector<mpq_class> annulus_masses(const MonomialSpec& s, unsigned r_max) {
  s.validate();
  // f[r] = sum over valuation vectors of the processed variables with sum a_i r_i = r
  std::vector<mpq_class> f(r_max + 1, 0);
  f[0] = 1;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    if (s.a[i] == 0) continue;
    const mpq_class step = q_pow_neg(s.q, s.b[i] + 1);
    for (unsigned r = s.a[i]; r <= r_max; ++r) f[r] += step * f[r - s.a[i]];
    const mpq_class c = unit_mass(s.q);
    for (auto& x : f) x *= c;
  }
  const auto free = free_part(s);
  for (auto& x : f) x *= free;
  return f;
}

mpq_class annulus_mass(const MonomialSpec& s, unsigned r) { return annulus_masses(s, r).back(); }

mpq_class annulus_mass_enumerated(const MonomialSpec& s, unsigned r, unsigned max_entry) {
  s.validate();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < s.a.size(); ++i)
    if (s.a[i] != 0) active.push_back(i);
  std::vector<unsigned> v(active.size(), 0);
  mpq_class sum = 0;
  const mpq_class c = unit_mass(s.q);
  while (true) {
    unsigned long total = 0, weight = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      total += std::uint64_t{s.a[active[k]]} * v[k];
      weight += std::uint64_t{s.b[active[k]] + 1} * v[k];
    }
    if (total == r) {
      mpq_class term = q_pow_neg(s.q, weight);
      for (std::size_t k = 0; k < active.size(); ++k) term *= c;
      sum += term;
    }
    std::size_t k = 0;
    while (k < v.size() && v[k] == max_entry) v[k++] = 0;
    if (k == v.size()) break;
    ++v[k];
  }
  // variables with a_i = 0: geometric series over their valuation
  for (std::size_t i = 0; i < s.a.size(); ++i)
    if (s.a[i] == 0) {
      mpq_class series = 0;
      mpq_class ratio = q_pow_neg(s.q, s.b[i] + 1);
      series = c / (1 - ratio);
      sum *= series;
    }
  return sum;
}

bool attained(const MonomialSpec& s, unsigned r) {
  std::vector<char> reach(r + 1, 0);
  reach[0] = 1;
  for (unsigned x = 1; x <= r; ++x)
    for (unsigned a : s.a)
      if (a != 0 && a <= x && reach[x - a]) {
        reach[x] = 1;
        break;
      }
  return reach[r] != 0;
}

mpq_class total_mass(const MonomialSpec& s) {
  mpq_class t = 1;
  for (unsigned b : s.b) t *= free_factor(s.q, b);
  return t;
}

mpq_class mass_tail_bound(const MonomialSpec& s, unsigned r_max) {
  // sum a_i r_i > r_max forces a_i r_i >= (r_max+1)/m for some active i, and
  // the relative mass of {r_i >= t} is q^-(b_i+1)t.
  const auto m = static_cast<unsigned>(std::count_if(s.a.begin(), s.a.end(), [](unsigned x) { return x != 0; }));
  mpq_class share = 0;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    if (s.a[i] == 0) continue;
    const std::uint64_t t = (std::uint64_t{r_max} + 1 + std::uint64_t{m} * s.a[i] - 1) / (std::uint64_t{m} * s.a[i]);
    share += q_pow_neg(s.q, (s.b[i] + 1) * t);
  }
  return total_mass(s) * share;
}

std::string to_string(ContinuityCase c) {
  switch (c) {
    case ContinuityCase::none: return "none";
    case ContinuityCase::case1: return "case-1";
    case ContinuityCase::case2: return "case-2";
  }
  return "?";
}

Continuity continuity_guaranteed(const MonomialSpec& s) {
  s.validate();
  Continuity out;
  // case 1: some a_k = 1 and a_i <= b_i for every other i; prefer a k with b_k = 0
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    if (s.a[k] != 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < s.a.size() && ok; ++i)
      if (i != k && s.a[i] > s.b[i]) ok = false;
    if (!ok) continue;
    if (!out.unit_index || s.b[k] == 0) out.unit_index = k;
  }
  if (out.unit_index) {
    out.guaranteed = true;
    out.tag = ContinuityCase::case1;
    return out;
  }
  bool all = true;
  for (std::size_t i = 0; i < s.a.size(); ++i) all = all && s.a[i] <= s.b[i];
  if (all) {
    out.guaranteed = true;
    out.tag = ContinuityCase::case2;
  }
  return out;
}

DensityLimit limit_average_density(const MonomialSpec& s) {
  const auto cont = continuity_guaranteed(s);
  if (!cont.guaranteed) throw CriterionNotMet("neither continuity hypothesis holds for " + s.to_string());
  DensityLimit out;
  if (cont.tag == ContinuityCase::case1 && s.b[*cont.unit_index] == 0) {
    // c^{n-1} prod_{i != k} 1 / (1 - q^-(b_i+1-a_i))
    const std::size_t k = *cont.unit_index;
    out.value = 1;
    for (std::size_t i = 0; i < s.a.size(); ++i)
      if (i != k) out.value *= unit_mass(s.q) / (1 - q_pow_neg(s.q, s.b[i] + 1 - s.a[i]));
    out.derived_from = ContinuityCase::case1;
    return out;
  }
  // a unit variable with b_k >= 1 satisfies the second hypothesis as well
  out.value = 0;
  out.derived_from = ContinuityCase::case2;
  return out;
}

mpq_class density_tail_bound(const MonomialSpec& s, unsigned r) {
  const auto lim = limit_average_density(s);
  const mpq_class c = unit_mass(s.q);
  if (lim.derived_from == ContinuityCase::case1) {
    // limit - D(r) = c^{n-1} * sum over (r_i)_{i != k} with sum a_i r_i > r of q^-sum e_i r_i
    const std::size_t k = *continuity_guaranteed(s).unit_index;
    unsigned m = 0;
    for (std::size_t i = 0; i < s.a.size(); ++i)
      if (i != k && s.a[i] != 0) ++m;
    if (m == 0) return 0;
    mpq_class share = 0;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      if (i == k || s.a[i] == 0) continue;
      const std::uint64_t t = (std::uint64_t{r} + 1 + std::uint64_t{m} * s.a[i] - 1) / (std::uint64_t{m} * s.a[i]);
      share += q_pow_neg(s.q, (s.b[i] + 1 - s.a[i]) * t);
    }
    return lim.value * share;
  }
  // D(r) <= c^{m-1} F q^{-floor(r e/a)} (r+1)^{m-1}, where (b+1)/a is least over
  // the active variables, e = b+1-a and F is the factor of the inactive ones
  std::size_t best = s.a.size();
  unsigned m = 0;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    if (s.a[i] == 0) continue;
    ++m;
    if (best == s.a.size() ||
        std::uint64_t{s.b[i] + 1} * s.a[best] < std::uint64_t{s.b[best] + 1} * s.a[i])
      best = i;
  }
  const std::uint64_t e = s.b[best] + 1 - s.a[best];
  mpq_class bound = free_part(s) * q_pow_neg(s.q, (std::uint64_t{r} * e) / s.a[best]);
  for (unsigned k = 1; k < m; ++k) bound *= c * (r + 1);
  return bound;
}

std::vector<AnnulusProfile> density_series(const MonomialSpec& s, unsigned r_max) {
  const auto masses = annulus_masses(s, r_max);
  std::vector<AnnulusProfile> out;
  out.reserve(masses.size());
  for (unsigned r = 0; r <= r_max; ++r) {
    AnnulusProfile p;
    p.r = r;
    p.mass = masses[r];
    p.average_density = masses[r] / haar_annulus(s.q, r);
    p.attained = attained(s, r);
    out.push_back(std::move(p));
  }
  return out;
}

std::string to_string(SeriesBehavior b) {
  switch (b) {
    case SeriesBehavior::constant: return "constant";
    case SeriesBehavior::converging: return "converging";
    case SeriesBehavior::non_convergent: return "non-convergent";
  }
  return "?";
}

SeriesBehavior observed_behavior(const std::vector<AnnulusProfile>& series) {
  if (series.size() < kMinClassifiedSeries) throw InvalidArgument("series too short to classify");
  const bool constant = std::all_of(series.begin(), series.end(), [&](const AnnulusProfile& p) {
    return p.average_density == series.front().average_density;
  });
  if (constant) return SeriesBehavior::constant;
  const std::size_t n = series.size(), third = n / 3;
  auto spread = [&](std::size_t lo, std::size_t hi) {
    auto [mn, mx] = std::minmax_element(series.begin() + lo, series.begin() + hi,
                                        [](const auto& x, const auto& y) { return x.average_density < y.average_density; });
    return mpq_class(mx->average_density - mn->average_density);
  };
  const auto middle = spread(third, 2 * third + 1), last = spread(2 * third, n);
  return 2 * last <= middle ? SeriesBehavior::converging : SeriesBehavior::non_convergent;
}

std::vector<MonomialSpec> pushforward_suite() {
  const std::vector<std::tuple<std::vector<unsigned>, std::vector<unsigned>, std::uint64_t>> rows{
      {{1}, {0}, 3},          {{2}, {1}, 3},          {{1, 1}, {0, 1}, 3},    {{1, 1}, {0, 0}, 3},
      {{1}, {0}, 2},          {{1}, {0}, 5},          {{1}, {2}, 3},          {{2}, {2}, 2},
      {{2}, {3}, 3},          {{3}, {3}, 2},          {{1, 2}, {0, 2}, 3},    {{1, 2}, {0, 3}, 2},
      {{1, 1, 1}, {0, 1, 1}, 3}, {{1, 1, 1}, {0, 2, 1}, 5}, {{1, 0}, {0, 0}, 3}, {{1, 0}, {0, 3}, 2},
      {{0, 1}, {2, 0}, 3},    {{2, 1}, {1, 0}, 3},    {{1, 2}, {0, 1}, 3},    {{2, 3}, {2, 3}, 2},
      {{2, 2}, {2, 3}, 3},    {{1, 3}, {0, 3}, 2},    {{3}, {1}, 2},          {{2}, {0}, 7},
      {{1, 1}, {1, 1}, 2},    {{0, 2}, {5, 2}, 3},    {{1, 1, 2}, {0, 1, 2}, 2}, {{2, 2}, {1, 3}, 3},
      {{1, 1}, {0, 1}, 4},    {{1, 1, 1}, {0, 0, 1}, 3},
  };
  std::vector<MonomialSpec> out;
  for (const auto& [a, b, q] : rows) out.push_back({a, b, q});
  return out;
}

}  // namespace repzeta
