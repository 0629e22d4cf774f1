#include "repzeta/charzeta.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "repzeta/errors.hpp"
#include "repzeta/localring.hpp"
#include "repzeta/modarith.hpp"
#include "repzeta/parallel.hpp"

namespace repzeta {

namespace {

ClassConstants empty_constants(std::size_t k) {
  ClassConstants out;
  out.k = k;
  out.a.assign(k * k * k, 0);
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Basis rows in reduced echelon form together with their pivot columns.
struct Subspace {
  modp::Mat basis;
  std::vector<std::size_t> pivots;
};

}  // namespace

ClassConstants class_constants(const FiniteGroup& g, const ConjugacyData& c, unsigned threads) {
  const std::size_t k = c.count();
  auto out = empty_constants(k);
  const auto n = static_cast<Index>(g.order());
  // Each worker owns a range of target classes, so writes never overlap.
  parallel_chunks(k, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t l = begin; l < end; ++l) {
      const Index z = c.classes[l].representative;
      for (Index u = 0; u < n; ++u) {
        const Index v = g.mul(g.inverse(u), z);
        ++out.at(c.class_of[u], c.class_of[v], l);
      }
    }
  });
  return out;
}

ClassConstants class_constants_by_v(const FiniteGroup& g, const ConjugacyData& c) {
  const std::size_t k = c.count();
  auto out = empty_constants(k);
  for (std::size_t l = 0; l < k; ++l) {
    const Index z = c.classes[l].representative;
    for (Index v = 0; v < g.order(); ++v) {
      const Index u = g.mul(z, g.inverse(v));
      ++out.at(c.class_of[u], c.class_of[v], l);
    }
  }
  return out;
}

ClassConstants class_constants_by_pairs(const FiniteGroup& g, const ConjugacyData& c) {
  const std::size_t k = c.count();
  auto out = empty_constants(k);
  std::vector<std::int64_t> rep_class(g.order(), -1);
  for (std::size_t l = 0; l < k; ++l) rep_class[c.classes[l].representative] = static_cast<std::int64_t>(l);
  for (Index u = 0; u < g.order(); ++u)
    for (Index v = 0; v < g.order(); ++v) {
      const auto l = rep_class[g.mul(u, v)];
      if (l >= 0) ++out.at(c.class_of[u], c.class_of[v], static_cast<std::size_t>(l));
    }
  return out;
}

std::vector<std::uint64_t> dixon_primes(std::uint64_t order, std::uint64_t exponent, std::size_t count) {
  std::vector<std::uint64_t> out;
  // first candidate: smallest value = 1 mod exponent above 2|G|
  std::uint64_t l = (2 * order / exponent) * exponent + 1;
  while (out.size() < count) {
    if (l > 2 * order && is_prime(l)) out.push_back(l);
    l += exponent;
  }
  if (out.back() >= (1ull << 32)) throw SizeLimitExceeded("Dixon prime does not fit 32 bits", out.back());
  return out;
}

ModCharTable dixon_mod_table(const ConjugacyData& c, const ClassConstants& a, std::uint64_t group_order,
                             const DixonOptions& options) {
  const std::size_t k = c.count();
  ModCharTable out;
  out.ell = options.prime != 0 ? options.prime : dixon_primes(group_order, c.exponent, 1).front();
  out.seed = options.seed;
  if ((out.ell - 1) % c.exponent != 0 || out.ell <= 2 * group_order || !is_prime(out.ell))
    throw InvalidArgument("Dixon prime must be a prime = 1 mod the exponent above 2|G|");
  const modp::Field f{out.ell};
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, f.p - 1);

  // Combination matrix C[j][l] = sum_i coeff_i a(i, j, l); every class matrix M_i has
  // (M_i)[j][l] = a(i, j, l) and M_i omega = omega_i omega.
  auto random_combination = [&] {
    std::vector<std::uint64_t> coeff(k);
    for (auto& x : coeff) x = pick(rng);
    modp::Mat m(k, modp::Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) {
          const auto v = a(i, j, l);
          if (v != 0) m[j][l] = (m[j][l] + coeff[i] * (v % f.p)) % f.p;
        }
    }
    return m;
  };

  std::deque<Subspace> pending;
  {
    Subspace full;
    for (std::size_t i = 0; i < k; ++i) {
      modp::Vec e(k, 0);
      e[i] = 1;
      full.basis.push_back(std::move(e));
      full.pivots.push_back(i);
    }
    pending.push_back(std::move(full));
  }
  std::vector<modp::Vec> eigen;
  modp::Mat comb = random_combination();
  unsigned failures = 0;
  while (!pending.empty()) {
    Subspace sub = std::move(pending.front());
    pending.pop_front();
    const std::size_t m = sub.basis.size();
    if (m == 1) {
      eigen.push_back(sub.basis[0]);
      continue;
    }
    // Restriction R with C b_t = sum_s R[s][t] b_s, read off at the pivot rows.
    modp::Mat r(m, modp::Vec(m, 0));
    for (std::size_t t = 0; t < m; ++t) {
      for (std::size_t s = 0; s < m; ++s) {
        const auto row = sub.pivots[s];
        std::uint64_t acc = 0;
        for (std::size_t l = 0; l < k; ++l)
          if (sub.basis[t][l] != 0) acc = (acc + comb[row][l] * sub.basis[t][l]) % f.p;
        r[s][t] = acc;
      }
    }
    const auto roots = modp::distinct_roots(f, modp::charpoly(f, r), rng);
    if (roots.size() <= 1) {
      if (++failures > options.retry_budget)
        throw DegenerateSplitting("eigenspace of dimension " + std::to_string(m) + " did not split after " +
                                  std::to_string(options.retry_budget) + " random combinations");
      comb = random_combination();
      pending.push_back(std::move(sub));
      continue;
    }
    std::size_t found = 0;
    for (auto lambda : roots) {
      auto shifted = r;
      for (std::size_t s = 0; s < m; ++s) shifted[s][s] = f.sub(shifted[s][s], lambda);
      const auto kernel = modp::nullspace(f, shifted, m);
      Subspace piece;
      for (const auto& w : kernel) {
        modp::Vec v(k, 0);
        for (std::size_t t = 0; t < m; ++t)
          if (w[t] != 0)
            for (std::size_t l = 0; l < k; ++l) v[l] = (v[l] + w[t] * sub.basis[t][l]) % f.p;
        piece.basis.push_back(std::move(v));
      }
      piece.pivots = modp::rref(f, piece.basis);
      found += piece.basis.size();
      pending.push_back(std::move(piece));
    }
    if (found != m) throw InternalInconsistency("class algebra is not diagonalizable modulo the Dixon prime");
  }
  if (eigen.size() != k) throw InternalInconsistency("eigenvector count differs from the class count");

  struct Row {
    std::uint64_t degree;
    modp::Vec omega, chi;
  };
  std::vector<Row> rows;
  const auto order_mod = group_order % f.p;
  for (auto& v : eigen) {
    if (v[0] == 0) throw InternalInconsistency("central character vanishes on the identity class");
    const auto scale = f.inv(v[0]);
    for (auto& x : v) x = f.mul(x, scale);
    std::uint64_t norm = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto size_inv = f.inv(c.classes[i].size % f.p);
      norm = f.add(norm, f.mul(f.mul(v[i], v[c.inverse_class[i]]), size_inv));
    }
    if (norm == 0) throw InternalInconsistency("zero norm for a central character");
    const auto d2 = f.mul(order_mod, f.inv(norm));
    const auto d = isqrt(d2);
    if (d2 == 0 || d2 > group_order || d * d != d2)
      throw InternalInconsistency("lifted squared degree " + std::to_string(d2) + " is not a square in [1, |G|]");
    Row row{d, v, modp::Vec(k)};
    for (std::size_t i = 0; i < k; ++i)
      row.chi[i] = f.mul(f.mul(d % f.p, v[i]), f.inv(c.classes[i].size % f.p));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& x, const Row& y) { return std::tie(x.degree, x.chi) < std::tie(y.degree, y.chi); });
  for (auto& row : rows) {
    out.degrees.push_back(row.degree);
    out.omega.push_back(std::move(row.omega));
    out.chi.push_back(std::move(row.chi));
  }
  return out;
}

mpq_class zeta_even(const std::vector<std::uint64_t>& degrees, unsigned s) {
  mpq_class total = 0;
  for (auto d : degrees) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), d, s);
    total += mpq_class(mpz_class(1), den);
  }
  total.canonicalize();
  return total;
}

std::vector<std::uint64_t> character_degrees(const FiniteGroup& g, std::uint64_t seed) {
  const auto c = conjugacy(g);
  const auto a = class_constants(g, c);
  DixonOptions opt;
  opt.seed = seed;
  return dixon_mod_table(c, a, g.order(), opt).degrees;
}

}  // namespace repzeta
