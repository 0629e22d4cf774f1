#pragma once

// Fully enumerated finite groups: SL_d over finite local rings and a few
// permutation groups used as oracles. Elements are dense indices; products
// are computed on the fly and looked up by canonical encoding.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "repzeta/localring.hpp"

namespace repzeta {

using Index = std::uint32_t;
inline constexpr Index kNoIndex = 0xffffffffu;

enum class GroupFamily { special_linear, symmetric, dihedral, quaternion, trivial };

struct GroupOptions {
  std::uint64_t element_budget = 2'000'000;
};

class FiniteGroup {
 public:
  /// Matrix group over `ring`. `entries` holds d*d ring codes per element,
  /// row-major. Element 0 must be the identity.
  static FiniteGroup from_matrices(std::string name, std::shared_ptr<const LocalRing> ring, unsigned d,
                                   std::vector<std::uint32_t> entries, std::vector<Index> generators);
  /// Permutation group on n points; (a*b)(x) = a(b(x)). Element 0 must be the identity.
  static FiniteGroup from_permutations(std::string name, GroupFamily family, unsigned n,
                                       std::vector<std::uint32_t> entries, std::vector<Index> generators);

  const std::string& name() const noexcept { return name_; }
  GroupFamily family() const noexcept { return family_; }
  std::uint64_t order() const noexcept { return codes_.size(); }
  Index identity() const noexcept { return 0; }
  Index mul(Index a, Index b) const;
  Index inverse(Index a) const { return inverse_[a]; }
  /// [a, b] = a b a^-1 b^-1
  Index commutator(Index a, Index b) const { return mul(mul(a, b), mul(inverse_[a], inverse_[b])); }
  Index conjugate(Index g, Index by) const { return mul(mul(by, g), inverse_[by]); }
  std::span<const Index> generators() const noexcept { return generators_; }

  std::uint64_t encoding(Index a) const { return codes_[a]; }
  std::optional<Index> find(std::uint64_t encoding) const;

  bool is_matrix_group() const noexcept { return ring_ != nullptr; }
  /// Throws InvalidArgument for permutation groups.
  const LocalRing& ring() const;
  std::shared_ptr<const LocalRing> ring_ptr() const noexcept { return ring_; }
  /// Matrix size (matrix groups) or number of points (permutation groups).
  unsigned degree() const noexcept { return width_dim_; }
  /// d*d ring codes (matrix groups) or the point images (permutation groups).
  std::span<const std::uint32_t> entries(Index a) const {
    return {entries_.data() + std::size_t{a} * width_, width_};
  }

 private:
  FiniteGroup() = default;
  void finish();  // builds lookup and inverse tables

  std::string name_;
  GroupFamily family_ = GroupFamily::trivial;
  std::shared_ptr<const LocalRing> ring_;
  unsigned width_dim_ = 0;  // d for matrices, n for permutations
  unsigned width_ = 0;      // entries per element
  std::uint64_t radix_ = 1; // encoding base
  std::vector<std::uint32_t> entries_;
  std::vector<std::uint64_t> codes_;
  std::vector<Index> inverse_;
  std::vector<Index> generators_;
  std::vector<Index> direct_lookup_;
  std::unordered_map<std::uint64_t, Index> hash_lookup_;
};

/// |SL_d(R)| from the residue field size and the level, saturating at 2^64-1.
std::uint64_t projected_sl_order(unsigned d, const LocalRingSpec& spec) noexcept;

/// Breadth-first closure from the elementary matrices E_ij(u), u running over
/// additive generators of the ring; each BFS layer is sorted by encoding.
FiniteGroup build_sl(unsigned d, const LocalRingSpec& spec, const GroupOptions& options = {});

/// Oracle: encodings of all d x d matrices of determinant 1, found by scanning.
std::vector<std::uint64_t> sl_encodings_by_scan(unsigned d, const LocalRingSpec& spec);

/// symmetric_n (n <= 8), dihedral_n (n >= 3, order 2n), quaternion8, trivial.
/// Short aliases s3, d4, q8 are accepted as well.
FiniteGroup build_named(const std::string& name);

/// Determinant of a d x d matrix of ring codes.
RingElem determinant(const LocalRing& ring, unsigned d, std::span<const std::uint32_t> m);

struct ClassInfo {
  Index representative = 0;  ///< smallest element index in the class
  std::uint64_t size = 0;
};

struct ConjugacyData {
  std::vector<ClassInfo> classes;         ///< sorted by (size, representative)
  std::vector<std::uint32_t> class_of;    ///< element index -> class index
  std::vector<std::uint64_t> centralizer; ///< per class
  std::vector<std::uint32_t> inverse_class;
  std::uint64_t exponent = 1;

  std::size_t count() const noexcept { return classes.size(); }
};

ConjugacyData conjugacy(const FiniteGroup& group);

/// Order of an element.
std::uint64_t element_order(const FiniteGroup& group, Index g);

struct CongruenceFiltration {
  /// kernels[i] = {g : g = 1 mod m^i}, i = 0..level, as sorted element indices.
  std::vector<std::vector<Index>> kernels;
  std::size_t levels() const noexcept { return kernels.size() - 1; }
};

CongruenceFiltration congruence_filtration(const FiniteGroup& group);

struct QuotientGroup {
  FiniteGroup group;
  std::vector<Index> projection;  ///< element of G -> element of G/K_i
};

/// G / K_i realised as the image of G in SL_d over the level-i ring.
QuotientGroup quotient_group(const FiniteGroup& group, std::uint32_t level);

// Binary cache. Little-endian layout:
//   char[8]  magic "RZGROUP1"
//   u32 family, u32 degree, u32 ring kind (0xffffffff for permutation groups),
//   u32 p, u32 r, u64 order, u32 name length, name bytes,
//   u32 generator count, u32 generators[],
//   u32 width, u32 entries[order * width],
//   u32 class count, {u32 representative, u64 size}[class count],
//   u32 class_of[order], u32 inverse_class[class count], u64 exponent.
void save_group_cache(const std::filesystem::path& path, const FiniteGroup& group, const ConjugacyData& conj);
std::pair<FiniteGroup, ConjugacyData> load_group_cache(const std::filesystem::path& path);
/// File name for the cache key (family, d, ring), e.g. "sl_d2_zmod_3_2.grp".
std::string cache_file_name(unsigned d, const LocalRingSpec& spec);

}  // namespace repzeta
