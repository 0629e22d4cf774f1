#include "repzeta/modgroup.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <fstream>
#include <numeric>

#include "repzeta/errors.hpp"

namespace repzeta {

namespace {

constexpr unsigned kMaxMatrixDim = 6;
constexpr std::uint64_t kDirectLookupLimit = 1ull << 23;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t e) noexcept {
  std::uint64_t out = 1;
  while (e-- > 0) out = saturating_mul(out, base);
  return out;
}

// Leibniz expansion over the permutations of {0..d-1}; fine for d <= 6.
RingElem det_rows(const LocalRing& ring, unsigned d, const std::uint32_t* m, std::size_t stride) {
  if (d == 0) return ring.one();
  std::array<unsigned, kMaxMatrixDim> perm{};
  std::iota(perm.begin(), perm.begin() + d, 0u);
  RingElem total = ring.zero();
  do {
    // parity by counting inversions
    unsigned inversions = 0;
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    RingElem term = ring.one();
    for (unsigned i = 0; i < d && term.code != 0; ++i) term = ring.mul(term, RingElem{m[i * stride + perm[i]]});
    total = (inversions % 2 == 0) ? ring.add(total, term) : ring.sub(total, term);
  } while (std::next_permutation(perm.begin(), perm.begin() + d));
  return total;
}

std::vector<std::uint32_t> matrix_inverse(const LocalRing& ring, unsigned d, std::span<const std::uint32_t> m) {
  const RingElem det = det_rows(ring, d, m.data(), d);
  const RingElem det_inv = ring.inverse(det);
  std::vector<std::uint32_t> out(std::size_t{d} * d);
  if (d == 1) {
    out[0] = det_inv.code;
    return out;
  }
  std::vector<std::uint32_t> minor(std::size_t{d - 1} * (d - 1));
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      // cofactor C_ij, written to adj_ji
      std::size_t w = 0;
      for (unsigned a = 0; a < d; ++a) {
        if (a == i) continue;
        for (unsigned b = 0; b < d; ++b)
          if (b != j) minor[w++] = m[a * d + b];
      }
      RingElem c = det_rows(ring, d - 1, minor.data(), d - 1);
      if ((i + j) % 2 == 1) c = ring.neg(c);
      out[j * d + i] = ring.mul(c, det_inv).code;
    }
  return out;
}

std::vector<std::uint32_t> identity_matrix(const LocalRing& ring, unsigned d) {
  std::vector<std::uint32_t> id(std::size_t{d} * d, 0);
  for (unsigned i = 0; i < d; ++i) id[i * d + i] = ring.one().code;
  return id;
}

void matmul(const LocalRing& ring, unsigned d, const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) {
  for (unsigned i = 0; i < d; ++i)
    for (unsigned k = 0; k < d; ++k) {
      RingElem acc = ring.zero();
      for (unsigned j = 0; j < d; ++j) acc = ring.add(acc, ring.mul(RingElem{a[i * d + j]}, RingElem{b[j * d + k]}));
      out[i * d + k] = acc.code;
    }
}

std::uint64_t encode(std::span<const std::uint32_t> entries, std::uint64_t radix) {
  std::uint64_t code = 0;
  for (auto e : entries) code = code * radix + e;
  return code;
}

FiniteGroup permutation_group(std::string name, GroupFamily family, unsigned n,
                              const std::vector<std::vector<std::uint32_t>>& gens) {
  // Closure by BFS; the identity comes first.
  std::vector<std::uint32_t> entries(n);
  std::iota(entries.begin(), entries.end(), 0u);
  std::unordered_map<std::uint64_t, Index> seen;
  auto code_of = [n](const std::uint32_t* p) {
    std::uint64_t c = 0;
    for (unsigned i = 0; i < n; ++i) c = c * n + p[i];
    return c;
  };
  seen.emplace(code_of(entries.data()), 0);
  std::deque<Index> queue{0};
  std::vector<std::uint32_t> prod(n);
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      for (unsigned i = 0; i < n; ++i) prod[i] = entries[std::size_t{x} * n + g[i]];
      const auto c = code_of(prod.data());
      if (seen.contains(c)) continue;
      const auto idx = static_cast<Index>(entries.size() / std::max(n, 1u));
      seen.emplace(c, idx);
      entries.insert(entries.end(), prod.begin(), prod.end());
      queue.push_back(idx);
    }
  }
  std::vector<Index> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(seen.at(code_of(g.data())));
  return FiniteGroup::from_permutations(std::move(name), family, n, std::move(entries), std::move(gen_idx));
}

template <class T>
void write_pod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InvalidArgument("truncated group cache file");
  return v;
}

constexpr char kCacheMagic[8] = {'R', 'Z', 'G', 'R', 'O', 'U', 'P', '1'};

}  // namespace

FiniteGroup FiniteGroup::from_matrices(std::string name, std::shared_ptr<const LocalRing> ring, unsigned d,
                                       std::vector<std::uint32_t> entries, std::vector<Index> generators) {
  if (d == 0 || d > kMaxMatrixDim) throw InvalidArgument("matrix size must be in 1..6");
  FiniteGroup g;
  g.name_ = std::move(name);
  g.family_ = GroupFamily::special_linear;
  g.width_dim_ = d;
  g.width_ = d * d;
  g.radix_ = ring->size();
  if (saturating_pow(g.radix_, g.width_) >= (1ull << 63))
    throw InvalidArgument("matrix encoding does not fit 64 bits for " + ring->spec().to_string());
  g.ring_ = std::move(ring);
  g.entries_ = std::move(entries);
  g.generators_ = std::move(generators);
  const auto id = identity_matrix(*g.ring_, d);
  if (g.entries_.size() < id.size() || !std::equal(id.begin(), id.end(), g.entries_.begin()))
    throw InvalidArgument("element 0 of a matrix group must be the identity");
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(std::string name, GroupFamily family, unsigned n,
                                           std::vector<std::uint32_t> entries, std::vector<Index> generators) {
  FiniteGroup g;
  g.name_ = std::move(name);
  g.family_ = family;
  g.width_dim_ = n;
  g.width_ = n;
  g.radix_ = std::max(n, 1u);
  g.entries_ = std::move(entries);
  g.generators_ = std::move(generators);
  for (unsigned i = 0; i < n; ++i)
    if (g.entries_.at(i) != i) throw InvalidArgument("element 0 of a permutation group must be the identity");
  g.finish();
  return g;
}

void FiniteGroup::finish() {
  const std::size_t n = width_ == 0 ? 1 : entries_.size() / width_;
  codes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) codes_[i] = encode(entries(static_cast<Index>(i)), radix_);
  const std::uint64_t keyspace = saturating_pow(radix_, width_);
  if (keyspace <= kDirectLookupLimit) {
    direct_lookup_.assign(keyspace, kNoIndex);
    for (std::size_t i = 0; i < n; ++i) direct_lookup_[codes_[i]] = static_cast<Index>(i);
  } else {
    hash_lookup_.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) hash_lookup_.emplace(codes_[i], static_cast<Index>(i));
  }
  inverse_.assign(n, kNoIndex);
  for (std::size_t i = 0; i < n; ++i) {
    if (inverse_[i] != kNoIndex) continue;
    std::vector<std::uint32_t> inv;
    if (ring_) {
      inv = matrix_inverse(*ring_, width_dim_, entries(static_cast<Index>(i)));
    } else {
      inv.resize(width_);
      const auto p = entries(static_cast<Index>(i));
      for (unsigned k = 0; k < width_; ++k) inv[p[k]] = k;
    }
    const auto j = find(encode(inv, radix_));
    if (!j) throw InvalidArgument("element set of " + name_ + " is not closed under inversion");
    inverse_[i] = *j;
    inverse_[*j] = static_cast<Index>(i);
  }
}

std::optional<Index> FiniteGroup::find(std::uint64_t code) const {
  if (!direct_lookup_.empty()) {
    if (code >= direct_lookup_.size() || direct_lookup_[code] == kNoIndex) return std::nullopt;
    return direct_lookup_[code];
  }
  const auto it = hash_lookup_.find(code);
  if (it == hash_lookup_.end()) return std::nullopt;
  return it->second;
}

Index FiniteGroup::mul(Index a, Index b) const {
  std::array<std::uint32_t, kMaxMatrixDim * kMaxMatrixDim> out{};
  const auto* ea = entries_.data() + std::size_t{a} * width_;
  const auto* eb = entries_.data() + std::size_t{b} * width_;
  if (ring_) {
    matmul(*ring_, width_dim_, ea, eb, out.data());
  } else {
    for (unsigned i = 0; i < width_; ++i) out[i] = ea[eb[i]];
  }
  const auto idx = find(encode({out.data(), width_}, radix_));
  if (!idx) throw InternalInconsistency("product left the element set of " + name_);
  return *idx;
}

const LocalRing& FiniteGroup::ring() const {
  if (!ring_) throw InvalidArgument(name_ + " is not a matrix group");
  return *ring_;
}

std::uint64_t projected_sl_order(unsigned d, const LocalRingSpec& spec) noexcept {
  if (spec.level() == 0) return 1;
  const std::uint64_t f = spec.residue_field_size();
  // |SL_d(F_f)| * f^{(level-1)(d^2-1)}
  std::uint64_t order = saturating_pow(f, std::uint64_t{d} * (d - 1) / 2);
  for (unsigned k = 2; k <= d; ++k) order = saturating_mul(order, saturating_pow(f, k) - 1);
  return saturating_mul(order, saturating_pow(f, std::uint64_t{spec.level() - 1} * (std::uint64_t{d} * d - 1)));
}

FiniteGroup build_sl(unsigned d, const LocalRingSpec& spec, const GroupOptions& options) {
  if (d < 2 || d > kMaxMatrixDim) throw InvalidArgument("build_sl: d must be in 2..6");
  const std::uint64_t projected = projected_sl_order(d, spec);
  if (projected > options.element_budget)
    throw SizeLimitExceeded("SL_" + std::to_string(d) + "(" + spec.to_string() + ") has projected order " +
                                std::to_string(projected) + " above the element budget " +
                                std::to_string(options.element_budget),
                            projected);
  auto ring = std::make_shared<const LocalRing>(spec);
  const std::uint64_t radix = ring->size();
  const unsigned w = d * d;

  std::vector<std::vector<std::uint32_t>> gens;
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      if (i == j) continue;
      for (auto u : ring->additive_generators()) {
        auto e = identity_matrix(*ring, d);
        e[i * d + j] = u.code;
        gens.push_back(std::move(e));
      }
    }

  std::vector<std::uint32_t> entries = identity_matrix(*ring, d);
  std::unordered_map<std::uint64_t, Index> seen;
  seen.reserve(projected * 2);
  seen.emplace(encode({entries.data(), w}, radix), 0);
  std::vector<Index> layer{0};
  std::vector<std::pair<std::uint64_t, std::array<std::uint32_t, kMaxMatrixDim * kMaxMatrixDim>>> next;
  std::array<std::uint32_t, kMaxMatrixDim * kMaxMatrixDim> prod{};
  while (!layer.empty()) {
    next.clear();
    for (Index x : layer) {
      for (const auto& g : gens) {
        matmul(*ring, d, entries.data() + std::size_t{x} * w, g.data(), prod.data());
        const auto code = encode({prod.data(), w}, radix);
        if (seen.emplace(code, kNoIndex).second) next.emplace_back(code, prod);
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    layer.clear();
    for (const auto& [code, m] : next) {
      const auto idx = static_cast<Index>(entries.size() / w);
      seen[code] = idx;
      entries.insert(entries.end(), m.begin(), m.begin() + w);
      layer.push_back(idx);
    }
    if (entries.size() / w > options.element_budget)
      throw SizeLimitExceeded("SL closure exceeded the element budget", projected);
  }
  std::vector<Index> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(seen.at(encode({g.data(), w}, radix)));
  return FiniteGroup::from_matrices("SL_" + std::to_string(d) + "(" + spec.to_string() + ")", std::move(ring), d,
                                    std::move(entries), std::move(gen_idx));
}

RingElem determinant(const LocalRing& ring, unsigned d, std::span<const std::uint32_t> m) {
  if (d > kMaxMatrixDim || m.size() != std::size_t{d} * d) throw InvalidArgument("determinant: bad matrix shape");
  return det_rows(ring, d, m.data(), d);
}

std::vector<std::uint64_t> sl_encodings_by_scan(unsigned d, const LocalRingSpec& spec) {
  const LocalRing ring(spec);
  const std::uint64_t q = ring.size();
  const unsigned w = d * d;
  const std::uint64_t total = saturating_pow(q, w);
  if (total > (1ull << 26)) throw SizeLimitExceeded("determinant scan too large", total);
  std::vector<std::uint64_t> out;
  std::vector<std::uint32_t> m(w);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned k = w; k-- > 0;) {
      m[k] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    if (det_rows(ring, d, m.data(), d) == ring.one()) out.push_back(code);
  }
  return out;
}

FiniteGroup build_named(const std::string& raw) {
  std::string name = raw;
  if (name.rfind("named:", 0) == 0) name = name.substr(6);
  auto suffix_number = [&](std::size_t prefix) -> unsigned {
    const auto tail = name.substr(prefix);
    if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw UnknownGroup("unknown group '" + raw + "'");
    return static_cast<unsigned>(std::stoul(tail));
  };
  if (name == "trivial") return FiniteGroup::from_permutations("trivial", GroupFamily::trivial, 1, {0}, {});
  if (name == "quaternion8" || name == "q8") {
    // Left regular action of Q8 on itself. Element s*4+u is (-1)^s * {1,i,j,k}[u].
    static constexpr int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    static constexpr int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    auto times = [](unsigned a, unsigned b) {
      const unsigned ua = a % 4, ub = b % 4;
      unsigned s = (a / 4 + b / 4) % 2;
      if (unit_sign[ua][ub] < 0) s ^= 1u;
      return s * 4 + static_cast<unsigned>(unit_prod[ua][ub]);
    };
    std::vector<std::vector<std::uint32_t>> gens;
    for (unsigned g : {1u, 2u}) {
      std::vector<std::uint32_t> perm(8);
      for (unsigned x = 0; x < 8; ++x) perm[x] = times(g, x);
      gens.push_back(perm);
    }
    return permutation_group("Q8", GroupFamily::quaternion, 8, gens);
  }
  if (name.rfind("symmetric_", 0) == 0 || (name.size() >= 2 && name[0] == 's' && std::isdigit(name[1]))) {
    const unsigned n = suffix_number(name[0] == 's' && name[1] != 'y' ? 1 : 10);
    if (n < 1 || n > 8) throw InvalidArgument("symmetric_n requires 1 <= n <= 8");
    if (n == 1) return FiniteGroup::from_permutations("S1", GroupFamily::symmetric, 1, {0}, {});
    std::vector<std::uint32_t> swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), 0u);
    std::swap(swap[0], swap[1]);
    for (unsigned i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return permutation_group("S" + std::to_string(n), GroupFamily::symmetric, n, {swap, cycle});
  }
  if (name.rfind("dihedral_", 0) == 0 || (name.size() >= 2 && name[0] == 'd' && std::isdigit(name[1]))) {
    const unsigned n = suffix_number(name[0] == 'd' && name[1] != 'i' ? 1 : 9);
    if (n < 3 || n > 64) throw InvalidArgument("dihedral_n requires 3 <= n <= 64");
    std::vector<std::uint32_t> rot(n), refl(n);
    for (unsigned i = 0; i < n; ++i) {
      rot[i] = (i + 1) % n;
      refl[i] = (n - i) % n;
    }
    return permutation_group("D" + std::to_string(n), GroupFamily::dihedral, n, {rot, refl});
  }
  throw UnknownGroup("unknown group '" + raw + "'");
}

std::uint64_t element_order(const FiniteGroup& group, Index g) {
  std::uint64_t k = 1;
  for (Index x = g; x != group.identity(); x = group.mul(x, g)) ++k;
  return k;
}

ConjugacyData conjugacy(const FiniteGroup& group) {
  const auto n = static_cast<std::size_t>(group.order());
  std::vector<std::uint32_t> raw_class(n, 0xffffffffu);
  std::vector<ClassInfo> raw;
  std::vector<Index> stack;
  for (std::size_t x = 0; x < n; ++x) {
    if (raw_class[x] != 0xffffffffu) continue;
    const auto c = static_cast<std::uint32_t>(raw.size());
    raw.push_back({static_cast<Index>(x), 0});
    raw_class[x] = c;
    stack.assign(1, static_cast<Index>(x));
    std::uint64_t size = 0;
    while (!stack.empty()) {
      const Index y = stack.back();
      stack.pop_back();
      ++size;
      for (Index s : group.generators()) {
        const Index z = group.conjugate(y, s);
        if (raw_class[z] == 0xffffffffu) {
          raw_class[z] = c;
          stack.push_back(z);
        }
      }
    }
    raw.back().size = size;
  }
  std::vector<std::uint32_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return std::tie(raw[a].size, raw[a].representative) < std::tie(raw[b].size, raw[b].representative);
  });
  std::vector<std::uint32_t> relabel(raw.size());
  ConjugacyData out;
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    relabel[order[k]] = k;
    out.classes.push_back(raw[order[k]]);
  }
  out.class_of.resize(n);
  for (std::size_t x = 0; x < n; ++x) out.class_of[x] = relabel[raw_class[x]];
  for (const auto& c : out.classes) {
    out.centralizer.push_back(group.order() / c.size);
    out.inverse_class.push_back(out.class_of[group.inverse(c.representative)]);
    out.exponent = std::lcm(out.exponent, element_order(group, c.representative));
  }
  return out;
}

CongruenceFiltration congruence_filtration(const FiniteGroup& group) {
  const LocalRing& ring = group.ring();
  const unsigned d = group.degree();
  const unsigned level = ring.level();
  std::vector<unsigned> depth(group.order());
  for (Index g = 0; g < group.order(); ++g) {
    const auto m = group.entries(g);
    unsigned v = level;
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) {
        RingElem e{m[i * d + j]};
        if (i == j) e = ring.sub(e, ring.one());
        v = std::min(v, std::min(ring.valuation(e), level));
      }
    depth[g] = v;
  }
  CongruenceFiltration out;
  out.kernels.resize(level + 1);
  for (unsigned i = 0; i <= level; ++i)
    for (Index g = 0; g < group.order(); ++g)
      if (depth[g] >= i) out.kernels[i].push_back(g);
  return out;
}

QuotientGroup quotient_group(const FiniteGroup& group, std::uint32_t level) {
  const LocalRing& ring = group.ring();
  auto target = std::make_shared<const LocalRing>(ring.spec().at_level(level));
  const unsigned d = group.degree();
  const unsigned w = d * d;
  const std::uint64_t radix = target->size();
  std::unordered_map<std::uint64_t, Index> seen;
  std::vector<std::uint32_t> entries;
  QuotientGroup out{FiniteGroup::from_permutations("trivial", GroupFamily::trivial, 1, {0}, {}), {}};
  out.projection.resize(group.order());
  std::vector<std::uint32_t> img(w);
  for (Index g = 0; g < group.order(); ++g) {
    const auto m = group.entries(g);
    for (unsigned k = 0; k < w; ++k) img[k] = ring.residue(RingElem{m[k]}, level).code;
    const auto code = encode(img, radix);
    auto [it, inserted] = seen.emplace(code, static_cast<Index>(entries.size() / w));
    if (inserted) entries.insert(entries.end(), img.begin(), img.end());
    out.projection[g] = it->second;
  }
  std::vector<Index> gens;
  for (Index s : group.generators()) {
    const Index t = out.projection[s];
    if (t != 0 && std::find(gens.begin(), gens.end(), t) == gens.end()) gens.push_back(t);
  }
  auto name = "SL_" + std::to_string(d) + "(" + target->spec().to_string() + ")";
  out.group = FiniteGroup::from_matrices(std::move(name), std::move(target), d, std::move(entries), std::move(gens));
  return out;
}

std::string cache_file_name(unsigned d, const LocalRingSpec& spec) {
  const char* kind = spec.kind == RingKind::integer_quotient       ? "zmod"
                     : spec.kind == RingKind::truncated_polynomial ? "tpoly"
                                                                   : "gf";
  return "sl_d" + std::to_string(d) + "_" + kind + "_" + std::to_string(spec.p) + "_" + std::to_string(spec.r) + ".grp";
}

void save_group_cache(const std::filesystem::path& path, const FiniteGroup& group, const ConjugacyData& conj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write group cache " + path.string());
  os.write(kCacheMagic, sizeof kCacheMagic);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(group.family()));
  write_pod<std::uint32_t>(os, group.degree());
  if (group.is_matrix_group()) {
    const auto& s = group.ring().spec();
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(s.kind));
    write_pod<std::uint32_t>(os, s.p);
    write_pod<std::uint32_t>(os, s.r);
  } else {
    write_pod<std::uint32_t>(os, 0xffffffffu);
    write_pod<std::uint32_t>(os, 0);
    write_pod<std::uint32_t>(os, 0);
  }
  write_pod<std::uint64_t>(os, group.order());
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(group.name().size()));
  os.write(group.name().data(), static_cast<std::streamsize>(group.name().size()));
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(group.generators().size()));
  for (Index g : group.generators()) write_pod<std::uint32_t>(os, g);
  const auto width = static_cast<std::uint32_t>(group.entries(0).size());
  write_pod<std::uint32_t>(os, width);
  for (Index g = 0; g < group.order(); ++g)
    for (auto e : group.entries(g)) write_pod<std::uint32_t>(os, e);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(conj.count()));
  for (const auto& c : conj.classes) {
    write_pod<std::uint32_t>(os, c.representative);
    write_pod<std::uint64_t>(os, c.size);
  }
  for (auto c : conj.class_of) write_pod<std::uint32_t>(os, c);
  for (auto c : conj.inverse_class) write_pod<std::uint32_t>(os, c);
  write_pod<std::uint64_t>(os, conj.exponent);
}

std::pair<FiniteGroup, ConjugacyData> load_group_cache(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot read group cache " + path.string());
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || !std::equal(magic, magic + 8, kCacheMagic)) throw InvalidArgument("not a group cache file: " + path.string());
  const auto family = static_cast<GroupFamily>(read_pod<std::uint32_t>(is));
  const auto degree = read_pod<std::uint32_t>(is);
  const auto kind = read_pod<std::uint32_t>(is);
  const auto p = read_pod<std::uint32_t>(is);
  const auto r = read_pod<std::uint32_t>(is);
  const auto order = read_pod<std::uint64_t>(is);
  std::string name(read_pod<std::uint32_t>(is), '\0');
  is.read(name.data(), static_cast<std::streamsize>(name.size()));
  std::vector<Index> gens(read_pod<std::uint32_t>(is));
  for (auto& g : gens) g = read_pod<std::uint32_t>(is);
  const auto width = read_pod<std::uint32_t>(is);
  std::vector<std::uint32_t> entries(order * width);
  for (auto& e : entries) e = read_pod<std::uint32_t>(is);
  FiniteGroup group = [&] {
    if (kind == 0xffffffffu) return FiniteGroup::from_permutations(name, family, degree, std::move(entries), std::move(gens));
    LocalRingSpec spec{static_cast<RingKind>(kind), p, r};
    return FiniteGroup::from_matrices(name, std::make_shared<const LocalRing>(spec), degree, std::move(entries),
                                      std::move(gens));
  }();
  ConjugacyData conj;
  conj.classes.resize(read_pod<std::uint32_t>(is));
  for (auto& c : conj.classes) {
    c.representative = read_pod<std::uint32_t>(is);
    c.size = read_pod<std::uint64_t>(is);
  }
  conj.class_of.resize(order);
  for (auto& c : conj.class_of) c = read_pod<std::uint32_t>(is);
  conj.inverse_class.resize(conj.classes.size());
  for (auto& c : conj.inverse_class) c = read_pod<std::uint32_t>(is);
  conj.exponent = read_pod<std::uint64_t>(is);
  for (const auto& c : conj.classes) conj.centralizer.push_back(order / c.size);
  return {std::move(group), std::move(conj)};
}

}  // namespace repzeta
