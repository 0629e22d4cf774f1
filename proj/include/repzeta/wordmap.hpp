#pragma once

// The commutator word map (x_1, y_1, ..., x_n, y_n) -> [x_1, y_1] ... [x_n, y_n]
// on a finite group: fiber counts as class functions, zeta values read off
// the identity fiber, and the experiments built on top of them.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "repzeta/charzeta.hpp"
#include "repzeta/modgroup.hpp"

namespace repzeta {

/// One exact value per conjugacy class.
using ClassFunction = std::vector<mpz_class>;

struct ComputeOptions {
  std::uint64_t element_budget = 2'000'000;
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

/// A group with its conjugacy data and class constants.
struct GroupAnalysis {
  FiniteGroup group;
  ConjugacyData conj;
  ClassConstants constants;
};

GroupAnalysis analyze_group(FiniteGroup g, unsigned threads = 1);

/// sum_i |C_i| f_i
mpz_class mass(const ClassFunction& f, const ConjugacyData& c);

/// c(g) = #{(x, y) : [x, y] = g} = sum_x |C_G(x)| [x^-1 g ~ x^-1].
ClassFunction commutator_distribution(const FiniteGroup& g, const ConjugacyData& c, unsigned threads = 1);
/// Oracle over all pairs.
ClassFunction commutator_distribution_brute(const FiniteGroup& g, const ConjugacyData& c);

/// (f * h)_l = sum_{i,j} f_i h_j a(i, j, l)
ClassFunction convolve(const ClassFunction& f, const ClassFunction& h, const ClassConstants& a);

/// Fiber sizes of the n-fold commutator word over each class.
ClassFunction fiber_counts(const GroupAnalysis& g, unsigned n, unsigned threads = 1);

/// Oracle: enumerates G^{2n}; returns the count per element (not per class).
std::vector<std::uint64_t> fiber_counts_brute(const FiniteGroup& g, unsigned n);

/// N_n(1) / |G|^{2n-1}
mpq_class zeta_from_fibers(const ClassFunction& fibers, std::uint64_t order, unsigned n);

struct FrobeniusViolation {
  std::uint64_t ell = 0;
  std::size_t class_index = 0;
  std::uint64_t lhs = 0, rhs = 0;
};

struct FrobeniusReport {
  unsigned n = 0;
  std::vector<std::uint64_t> primes;
  std::size_t checked = 0;
  std::vector<FrobeniusViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks N_n(g) = |G|^{2n-1} sum_s chi_s(g) d_s^{1-2n} (mod l) on every class for every l.
FrobeniusReport frobenius_identity_check(const GroupAnalysis& g, const ClassFunction& fibers, unsigned n,
                                         const std::vector<std::uint64_t>& primes, std::uint64_t seed = 1);

struct DensityLevel {
  std::uint32_t level = 0;
  std::uint64_t kernel_order = 0;
  std::uint64_t quotient_order = 0;
  /// #Phi^{-1}(K_i) [G : K_i] / |G|^{2n}
  mpq_class density;
  /// zeta of G / K_i at 2n - 2, from its own character degrees.
  mpq_class quotient_zeta;
  bool matches = false;
};

/// D_0 .. D_r for SL_d over `spec`.
std::vector<DensityLevel> congruence_density_profile(unsigned d, const LocalRingSpec& spec, unsigned n,
                                                     const ComputeOptions& options = {});

struct StabilizationRow {
  std::uint32_t level = 0;
  std::uint64_t order = 0;
  std::size_t classes = 0;
  mpq_class zeta;
  /// zeta at this level minus the previous one; absent on the first row.
  std::optional<mpq_class> increment;
};

struct StabilizationSeries {
  std::vector<StabilizationRow> rows;
  bool truncated = false;
  std::uint64_t truncated_projected_order = 0;
};

/// zeta_{SL_d(R_i)}(2n - 2) for R_i the level-i ring of `kind` over p, i = 1..r_max.
StabilizationSeries stabilization_series(unsigned d, RingKind kind, std::uint32_t p, std::uint32_t r_max, unsigned n,
                                         const ComputeOptions& options = {});

struct CrossCharReport {
  std::uint32_t p = 0, r = 0;
  unsigned n = 0;
  std::uint64_t order = 0;
  std::size_t classes_zmod = 0, classes_tpoly = 0;
  mpq_class zeta_zmod, zeta_tpoly;
  bool equal = false;
};

/// SL_2(Z/p^r) against SL_2(F_p[t]/t^r) at s = 2n - 2, each built and analysed on its own.
CrossCharReport cross_char_compare(std::uint32_t p, std::uint32_t r, unsigned n, const ComputeOptions& options = {});

/// zeta_{SL_d(spec)}(s) from the Dixon degrees.
mpq_class sl_zeta(unsigned d, const LocalRingSpec& spec, unsigned s, const ComputeOptions& options = {});

}  // namespace repzeta
