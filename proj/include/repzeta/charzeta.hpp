#pragma once

// Class-algebra constants, Dixon-Schneider character data modulo a prime and
// exact zeta values sum_chi chi(1)^{-s}.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "repzeta/modgroup.hpp"

namespace repzeta {

/// a(i, j, k) = #{(u, v) in C_i x C_j : uv = z_k}, z_k the representative of C_k.
struct ClassConstants {
  std::size_t k = 0;
  std::vector<std::uint32_t> a;

  std::uint32_t operator()(std::size_t i, std::size_t j, std::size_t l) const { return a[(i * k + j) * k + l]; }
  std::uint32_t& at(std::size_t i, std::size_t j, std::size_t l) { return a[(i * k + j) * k + l]; }
  friend bool operator==(const ClassConstants&, const ClassConstants&) = default;
};

/// Loops over u in G: increments a[class(u)][class(u^-1 z_k)][k].
ClassConstants class_constants(const FiniteGroup& g, const ConjugacyData& c, unsigned threads = 1);
/// Same tensor, looping over the second factor v instead.
ClassConstants class_constants_by_v(const FiniteGroup& g, const ConjugacyData& c);
/// Oracle over all |G|^2 pairs.
ClassConstants class_constants_by_pairs(const FiniteGroup& g, const ConjugacyData& c);

/// Smallest prime l = 1 (mod exponent) with l > 2|G|, then the next ones.
std::vector<std::uint64_t> dixon_primes(std::uint64_t order, std::uint64_t exponent, std::size_t count);

struct DixonOptions {
  std::uint64_t seed = 1;
  unsigned retry_budget = 64;
  /// 0 picks the smallest admissible prime.
  std::uint64_t prime = 0;
};

struct ModCharTable {
  std::uint64_t ell = 0;
  std::uint64_t seed = 0;
  /// Characters sorted by (degree, values). omega[s][i] is the central character on C_i.
  std::vector<std::vector<std::uint64_t>> omega;
  std::vector<std::uint64_t> degrees;
  /// chi[s][i] = degree * omega / |C_i| mod ell.
  std::vector<std::vector<std::uint64_t>> chi;
};

ModCharTable dixon_mod_table(const ConjugacyData& c, const ClassConstants& a, std::uint64_t group_order,
                             const DixonOptions& options = {});

/// sum_s d_s^{-s}
mpq_class zeta_even(const std::vector<std::uint64_t>& degrees, unsigned s);

/// Convenience: conjugacy, constants and Dixon degrees for a group.
std::vector<std::uint64_t> character_degrees(const FiniteGroup& g, std::uint64_t seed = 1);

}  // namespace repzeta
