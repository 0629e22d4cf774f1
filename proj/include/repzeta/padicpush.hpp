#pragma once

// Pushforward of the measure |x^B| dx on O^n under the monomial map x^A,
// where O is a local ring with residue field of size q. Masses of the
// annuli |y| = q^-r are exact rationals.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace repzeta {

struct MonomialSpec {
  std::vector<unsigned> a;
  std::vector<unsigned> b;
  std::uint64_t q = 2;

  /// Throws InvalidArgument on length mismatch, A = 0, or q not a prime power.
  void validate() const;
  /// Comma-separated exponent lists, e.g. ("1,1", "0,1", 3).
  static MonomialSpec parse(const std::string& a, const std::string& b, std::uint64_t q);
  std::string to_string() const;
};

bool is_prime_power(std::uint64_t q) noexcept;

/// (q-1)/q
mpq_class unit_mass(std::uint64_t q);
/// Haar mass c q^-r of the annulus of index r.
mpq_class haar_annulus(std::uint64_t q, unsigned r);

/// Masses of the annuli r = 0..r_max by dynamic programming over r.
std::vector<mpq_class> annulus_masses(const MonomialSpec& s, unsigned r_max);
mpq_class annulus_mass(const MonomialSpec& s, unsigned r);
/// Oracle: direct sum over valuation vectors with entries <= max_entry.
/// Exact whenever r <= max_entry * min(nonzero a_i).
mpq_class annulus_mass_enumerated(const MonomialSpec& s, unsigned r, unsigned max_entry = 12);

/// r lies in the numerical semigroup generated by the nonzero a_i.
bool attained(const MonomialSpec& s, unsigned r);

/// Total mass, the product over i of c / (1 - q^-(b_i+1)).
mpq_class total_mass(const MonomialSpec& s);
/// Upper bound on total_mass minus the masses of annuli 0..r_max.
mpq_class mass_tail_bound(const MonomialSpec& s, unsigned r_max);

enum class ContinuityCase { none, case1, case2 };
std::string to_string(ContinuityCase c);

struct Continuity {
  bool guaranteed = false;
  ContinuityCase tag = ContinuityCase::none;
  /// case1: the variable with a = 1 that goes first.
  std::optional<std::size_t> unit_index;
};

Continuity continuity_guaranteed(const MonomialSpec& s);

struct DensityLimit {
  mpq_class value;
  /// Which argument produced the value: case1 when the unit variable has
  /// b = 0 (closed form), case2 otherwise (limit 0).
  ContinuityCase derived_from = ContinuityCase::none;
};

/// Throws CriterionNotMet when neither hypothesis holds.
DensityLimit limit_average_density(const MonomialSpec& s);

/// Bound on |limit - average_density(r)| in the closed-form case, or on
/// average_density(r) itself when the limit is 0.
mpq_class density_tail_bound(const MonomialSpec& s, unsigned r);

struct AnnulusProfile {
  unsigned r = 0;
  mpq_class mass;
  mpq_class average_density;
  bool attained = false;
};

std::vector<AnnulusProfile> density_series(const MonomialSpec& s, unsigned r_max);

enum class SeriesBehavior { constant, converging, non_convergent };
std::string to_string(SeriesBehavior b);

/// Classifies a series from its tail: constant if all densities agree,
/// converging if the spread over the last third of the range is at most half
/// the spread over the middle third, non-convergent otherwise.
/// Needs at least kMinClassifiedSeries annuli.
inline constexpr std::size_t kMinClassifiedSeries = 6;
SeriesBehavior observed_behavior(const std::vector<AnnulusProfile>& series);

/// The fixed 30-spec test suite, including the three canonical examples.
std::vector<MonomialSpec> pushforward_suite();

}  // namespace repzeta
