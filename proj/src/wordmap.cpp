#include "repzeta/wordmap.hpp"

#include <functional>

#include "repzeta/errors.hpp"
#include "repzeta/modarith.hpp"
#include "repzeta/parallel.hpp"

namespace repzeta {

GroupAnalysis analyze_group(FiniteGroup g, unsigned threads) {
  auto conj = conjugacy(g);
  auto constants = class_constants(g, conj, threads);
  return {std::move(g), std::move(conj), std::move(constants)};
}

mpz_class mass(const ClassFunction& f, const ConjugacyData& c) {
  mpz_class total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) total += f[i] * mpz_class(static_cast<unsigned long>(c.classes[i].size));
  return total;
}

ClassFunction commutator_distribution(const FiniteGroup& g, const ConjugacyData& c, unsigned threads) {
  const std::size_t k = c.count();
  std::vector<std::uint64_t> counts(k, 0);
  const auto n = static_cast<Index>(g.order());
  parallel_chunks(k, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t l = begin; l < end; ++l) {
      const Index z = c.classes[l].representative;
      std::uint64_t total = 0;
      for (Index x = 0; x < n; ++x) {
        const auto cx = c.class_of[x];
        if (c.class_of[g.mul(g.inverse(x), z)] == c.inverse_class[cx]) total += c.centralizer[cx];
      }
      counts[l] = total;
    }
  });
  ClassFunction out(k);
  for (std::size_t l = 0; l < k; ++l) out[l] = mpz_class(static_cast<unsigned long>(counts[l]));
  return out;
}

ClassFunction commutator_distribution_brute(const FiniteGroup& g, const ConjugacyData& c) {
  std::vector<std::uint64_t> per_element(g.order(), 0);
  for (Index x = 0; x < g.order(); ++x)
    for (Index y = 0; y < g.order(); ++y) ++per_element[g.commutator(x, y)];
  ClassFunction out(c.count());
  for (std::size_t l = 0; l < c.count(); ++l)
    out[l] = mpz_class(static_cast<unsigned long>(per_element[c.classes[l].representative]));
  return out;
}

ClassFunction convolve(const ClassFunction& f, const ClassFunction& h, const ClassConstants& a) {
  const std::size_t k = a.k;
  ClassFunction out(k, 0);
  mpz_class fh;
  for (std::size_t i = 0; i < k; ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (h[j] == 0) continue;
      fh = f[i] * h[j];
      for (std::size_t l = 0; l < k; ++l) {
        const auto v = a(i, j, l);
        if (v != 0) mpz_addmul_ui(out[l].get_mpz_t(), fh.get_mpz_t(), v);
      }
    }
  }
  return out;
}

ClassFunction fiber_counts(const GroupAnalysis& g, unsigned n, unsigned threads) {
  if (n == 0) throw InvalidArgument("fiber_counts: n must be at least 1");
  const auto single = commutator_distribution(g.group, g.conj, threads);
  auto out = single;
  for (unsigned i = 1; i < n; ++i) out = convolve(out, single, g.constants);
  return out;
}

std::vector<std::uint64_t> fiber_counts_brute(const FiniteGroup& g, unsigned n) {
  const auto order = static_cast<Index>(g.order());
  if (n == 0) throw InvalidArgument("fiber_counts_brute: n must be at least 1");
  std::vector<Index> comm(std::size_t{order} * order), table(std::size_t{order} * order);
  for (Index x = 0; x < order; ++x)
    for (Index y = 0; y < order; ++y) {
      comm[std::size_t{x} * order + y] = g.commutator(x, y);
      table[std::size_t{x} * order + y] = g.mul(x, y);
    }
  std::vector<std::uint64_t> out(order, 0);
  // depth-first over (x_1, y_1, ..., x_n, y_n), carrying the partial product
  std::function<void(unsigned, Index)> walk = [&](unsigned depth, Index acc) {
    if (depth == n) {
      ++out[acc];
      return;
    }
    for (Index x = 0; x < order; ++x)
      for (Index y = 0; y < order; ++y) walk(depth + 1, table[std::size_t{acc} * order + comm[std::size_t{x} * order + y]]);
  };
  walk(0, g.identity());
  return out;
}

mpq_class zeta_from_fibers(const ClassFunction& fibers, std::uint64_t order, unsigned n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), order, 2 * n - 1);
  mpq_class z(fibers.at(0), den);
  z.canonicalize();
  return z;
}

FrobeniusReport frobenius_identity_check(const GroupAnalysis& g, const ClassFunction& fibers, unsigned n,
                                         const std::vector<std::uint64_t>& primes, std::uint64_t seed) {
  FrobeniusReport report;
  report.n = n;
  report.primes = primes;
  const std::size_t k = g.conj.count();
  for (auto ell : primes) {
    DixonOptions opt;
    opt.prime = ell;
    opt.seed = seed;
    const auto table = dixon_mod_table(g.conj, g.constants, g.group.order(), opt);
    const modp::Field f{ell};
    const auto scale = f.pow(g.group.order() % ell, 2 * n - 1);
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t sum = 0;
      for (std::size_t s = 0; s < k; ++s) {
        const auto weight = f.pow(f.inv(table.degrees[s] % ell), 2 * n - 1);
        sum = f.add(sum, f.mul(table.chi[s][i], weight));
      }
      const auto rhs = f.mul(scale, sum);
      const auto lhs = mpz_fdiv_ui(fibers[i].get_mpz_t(), ell);
      ++report.checked;
      if (lhs != rhs) report.violations.push_back({ell, i, lhs, rhs});
    }
  }
  return report;
}

mpq_class sl_zeta(unsigned d, const LocalRingSpec& spec, unsigned s, const ComputeOptions& options) {
  if (spec.level() == 0) return 1;
  GroupOptions gopt;
  gopt.element_budget = options.element_budget;
  const auto g = build_sl(d, spec, gopt);
  const auto c = conjugacy(g);
  const auto a = class_constants(g, c, options.threads);
  DixonOptions opt;
  opt.seed = options.seed;
  return zeta_even(dixon_mod_table(c, a, g.order(), opt).degrees, s);
}

std::vector<DensityLevel> congruence_density_profile(unsigned d, const LocalRingSpec& spec, unsigned n,
                                                     const ComputeOptions& options) {
  GroupOptions gopt;
  gopt.element_budget = options.element_budget;
  const auto analysis = analyze_group(build_sl(d, spec, gopt), options.threads);
  const auto fibers = fiber_counts(analysis, n, options.threads);
  const auto filtration = congruence_filtration(analysis.group);
  const std::uint64_t order = analysis.group.order();
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), order, 2 * n);
  std::vector<DensityLevel> out;
  for (std::uint32_t i = 0; i <= filtration.levels(); ++i) {
    DensityLevel row;
    row.level = i;
    row.kernel_order = filtration.kernels[i].size();
    row.quotient_order = order / row.kernel_order;
    mpz_class hits = 0;
    for (Index g : filtration.kernels[i]) hits += fibers[analysis.conj.class_of[g]];
    row.density = mpq_class(hits * mpz_class(static_cast<unsigned long>(row.quotient_order)), total);
    row.density.canonicalize();
    const auto quotient = quotient_group(analysis.group, i);
    const auto qc = conjugacy(quotient.group);
    const auto qa = class_constants(quotient.group, qc, options.threads);
    DixonOptions opt;
    opt.seed = options.seed;
    row.quotient_zeta = zeta_even(dixon_mod_table(qc, qa, quotient.group.order(), opt).degrees, 2 * n - 2);
    row.matches = row.density == row.quotient_zeta;
    out.push_back(std::move(row));
  }
  return out;
}

StabilizationSeries stabilization_series(unsigned d, RingKind kind, std::uint32_t p, std::uint32_t r_max, unsigned n,
                                         const ComputeOptions& options) {
  StabilizationSeries out;
  for (std::uint32_t i = 1; i <= r_max; ++i) {
    const LocalRingSpec spec{kind, p, i};
    const auto projected = projected_sl_order(d, spec);
    if (projected > options.element_budget) {
      out.truncated = true;
      out.truncated_projected_order = projected;
      break;
    }
    GroupOptions gopt;
    gopt.element_budget = options.element_budget;
    const auto g = build_sl(d, spec, gopt);
    const auto c = conjugacy(g);
    const auto a = class_constants(g, c, options.threads);
    DixonOptions opt;
    opt.seed = options.seed;
    StabilizationRow row;
    row.level = i;
    row.order = g.order();
    row.classes = c.count();
    row.zeta = zeta_even(dixon_mod_table(c, a, g.order(), opt).degrees, 2 * n - 2);
    if (!out.rows.empty()) row.increment = mpq_class(row.zeta - out.rows.back().zeta);
    out.rows.push_back(std::move(row));
  }
  return out;
}

CrossCharReport cross_char_compare(std::uint32_t p, std::uint32_t r, unsigned n, const ComputeOptions& options) {
  CrossCharReport out;
  out.p = p;
  out.r = r;
  out.n = n;
  GroupOptions gopt;
  gopt.element_budget = options.element_budget;
  DixonOptions opt;
  opt.seed = options.seed;
  auto side = [&](RingKind kind, std::size_t& classes) {
    const auto g = build_sl(2, LocalRingSpec{kind, p, r}, gopt);
    out.order = g.order();
    const auto c = conjugacy(g);
    classes = c.count();
    const auto a = class_constants(g, c, options.threads);
    return zeta_even(dixon_mod_table(c, a, g.order(), opt).degrees, 2 * n - 2);
  };
  out.zeta_zmod = side(RingKind::integer_quotient, out.classes_zmod);
  out.zeta_tpoly = side(RingKind::truncated_polynomial, out.classes_tpoly);
  out.equal = out.zeta_zmod == out.zeta_tpoly;
  return out;
}

}  // namespace repzeta
