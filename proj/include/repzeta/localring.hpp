#pragma once

// Finite local rings Z/p^r and F_p[t]/t^r, plus the finite fields F_{p^k}
// needed for the Lang-Weil experiments. Elements are canonical integer codes,
// so equality is a plain integer compare and matrices of elements can be
// packed into lookup keys.

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace repzeta {

enum class RingKind {
  integer_quotient,      ///< Z/p^r, spelled zmod:p^r
  truncated_polynomial,  ///< F_p[t]/t^r, spelled tpoly:p^r
  galois_field,          ///< F_{p^r}, spelled gf:p^r (a field, level 1)
};

struct LocalRingSpec {
  RingKind kind = RingKind::integer_quotient;
  std::uint32_t p = 2;
  /// Exponent in the spelling p^r. For zmod/tpoly this is the nilpotency
  /// level; for gf it is the extension degree and the level is 1.
  std::uint32_t r = 1;

  /// Length of the ring as a module over itself (0 for the trivial ring).
  std::uint32_t level() const noexcept;
  std::uint64_t cardinality() const noexcept;
  std::uint64_t residue_field_size() const noexcept;

  /// "zmod:3^2", "tpoly:5^2", "gf:3^2".
  std::string to_string() const;
  /// Parses the CLI spelling and checks that p is prime and r >= 1.
  static LocalRingSpec parse(std::string_view text);

  /// Spec of the quotient by the i-th power of the maximal ideal.
  LocalRingSpec at_level(std::uint32_t i) const;

  friend bool operator==(const LocalRingSpec&, const LocalRingSpec&) = default;
};

/// Canonical element code in [0, cardinality). For zmod it is the residue;
/// for tpoly and gf it is sum c_i p^i over the coefficient vector.
struct RingElem {
  std::uint32_t code = 0;
  friend auto operator<=>(const RingElem&, const RingElem&) = default;
};

inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

bool is_prime(std::uint64_t n) noexcept;

class LocalRing {
 public:
  explicit LocalRing(LocalRingSpec spec);

  const LocalRingSpec& spec() const noexcept { return spec_; }
  std::uint32_t size() const noexcept { return size_; }
  std::uint32_t level() const noexcept { return spec_.level(); }

  RingElem zero() const noexcept { return RingElem{0}; }
  RingElem one() const noexcept { return RingElem{size_ > 1 ? 1u : 0u}; }
  RingElem from_int(std::int64_t v) const noexcept;
  /// Validates a raw code.
  RingElem elem(std::uint32_t code) const;

  RingElem add(RingElem a, RingElem b) const noexcept {
    return add_table_.empty() ? add_slow(a, b) : RingElem{add_table_[a.code * size_ + b.code]};
  }
  RingElem mul(RingElem a, RingElem b) const noexcept {
    return mul_table_.empty() ? mul_slow(a, b) : RingElem{mul_table_[a.code * size_ + b.code]};
  }
  RingElem neg(RingElem a) const noexcept;
  RingElem sub(RingElem a, RingElem b) const noexcept { return add(a, neg(b)); }
  RingElem pow(RingElem a, std::uint64_t e) const noexcept;

  /// Throws NonUnitError (carrying the valuation) when a is not a unit.
  RingElem inverse(RingElem a) const;
  bool is_unit(RingElem a) const noexcept { return valuation(a) == 0; }

  /// kInfiniteValuation for zero.
  unsigned valuation(RingElem a) const noexcept;

  /// Some x with a*x = b; requires valuation(b) >= valuation(a).
  RingElem divide_exact(RingElem b, RingElem a) const;

  /// Image in the level-i quotient ring; throws LevelOutOfRange if i > level.
  RingElem residue(RingElem x, std::uint32_t i) const;

  /// Elements whose additive span is the whole ring.
  std::vector<RingElem> additive_generators() const;

  std::string format(RingElem a) const;

 private:
  RingElem add_slow(RingElem a, RingElem b) const noexcept;
  RingElem mul_slow(RingElem a, RingElem b) const noexcept;

  LocalRingSpec spec_;
  std::uint32_t size_ = 1;
  std::uint32_t digits_ = 0;           // number of base-p digits in a code
  std::vector<std::uint32_t> modulus_; // gf: monic irreducible, low degree first
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> mul_table_;
};

}  // namespace repzeta
