#include "repzeta/localring.hpp"

#include <charconv>
#include <sstream>

#include "repzeta/errors.hpp"

namespace repzeta {

namespace {

constexpr std::uint32_t kTableLimit = 512;

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= base;
  return out;
}

std::vector<std::uint32_t> to_digits(std::uint32_t code, std::uint32_t p, std::uint32_t n) {
  std::vector<std::uint32_t> d(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p, std::uint32_t n) {
  std::uint32_t code = 0;
  for (std::uint32_t i = n; i-- > 0;) code = code * p + (i < d.size() ? d[i] : 0);
  return code;
}

// Remainder of a modulo the monic polynomial m over F_p (low degree first).
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& m,
                                    std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::uint64_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) {
      const std::size_t idx = i - dm + j;
      a[idx] = static_cast<std::uint32_t>((a[idx] + (p - c) * m[j]) % p);
    }
  }
  a.resize(dm);
  return a;
}

bool divides(const std::vector<std::uint32_t>& f, const std::vector<std::uint32_t>& g, std::uint32_t p) {
  for (auto c : poly_mod(g, f, p))
    if (c != 0) return false;
  return true;
}

// Smallest monic irreducible polynomial of the given degree, by trial division.
std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t degree) {
  const std::uint64_t count = ipow(p, degree);
  for (std::uint64_t tail = 0; tail < count; ++tail) {
    std::vector<std::uint32_t> f = to_digits(static_cast<std::uint32_t>(tail), p, degree);
    f.push_back(1);
    if (degree > 1 && f[0] == 0) continue;
    bool irreducible = true;
    for (std::uint32_t dg = 1; irreducible && dg <= degree / 2; ++dg) {
      const std::uint64_t n = ipow(p, dg);
      for (std::uint64_t t = 0; t < n; ++t) {
        std::vector<std::uint32_t> g = to_digits(static_cast<std::uint32_t>(t), p, dg);
        g.push_back(1);
        if (divides(g, f, p)) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) return f;
  }
  throw InternalInconsistency("no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t LocalRingSpec::level() const noexcept {
  if (kind == RingKind::galois_field) return r == 0 ? 0 : 1;
  return r;
}

std::uint64_t LocalRingSpec::cardinality() const noexcept { return ipow(p, r); }

std::uint64_t LocalRingSpec::residue_field_size() const noexcept {
  if (level() == 0) return 1;
  return kind == RingKind::galois_field ? ipow(p, r) : p;
}

std::string LocalRingSpec::to_string() const {
  const char* name = kind == RingKind::integer_quotient       ? "zmod"
                     : kind == RingKind::truncated_polynomial ? "tpoly"
                                                              : "gf";
  std::ostringstream os;
  os << name << ':' << p << '^' << r;
  return os.str();
}

LocalRingSpec LocalRingSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InvalidArgument("ring must be spelled kind:p^r, got '" + std::string(text) + "'");
  const auto kind_name = text.substr(0, colon);
  LocalRingSpec spec;
  if (kind_name == "zmod") {
    spec.kind = RingKind::integer_quotient;
  } else if (kind_name == "tpoly") {
    spec.kind = RingKind::truncated_polynomial;
  } else if (kind_name == "gf") {
    spec.kind = RingKind::galois_field;
  } else {
    throw InvalidArgument("unknown ring kind '" + std::string(kind_name) + "'");
  }
  auto rest = text.substr(colon + 1);
  const auto caret = rest.find('^');
  auto parse_uint = [&](std::string_view s) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw InvalidArgument("bad number '" + std::string(s) + "' in ring '" + std::string(text) + "'");
    return v;
  };
  spec.p = parse_uint(rest.substr(0, caret));
  spec.r = caret == std::string_view::npos ? 1 : parse_uint(rest.substr(caret + 1));
  if (!is_prime(spec.p)) throw InvalidArgument("ring characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.r < 1) throw InvalidArgument("ring level must be >= 1");
  if (spec.cardinality() >= (1ull << 24)) throw InvalidArgument("ring too large: " + spec.to_string());
  return spec;
}

LocalRingSpec LocalRingSpec::at_level(std::uint32_t i) const {
  if (i > level())
    throw LevelOutOfRange("level " + std::to_string(i) + " exceeds ring level " + std::to_string(level()));
  LocalRingSpec out = *this;
  if (kind == RingKind::galois_field) {
    if (i == 0) out.r = 0;
  } else {
    out.r = i;
  }
  return out;
}

LocalRing::LocalRing(LocalRingSpec spec) : spec_(spec) {
  if (!is_prime(spec_.p)) throw InvalidArgument("ring characteristic is not prime");
  const std::uint64_t card = spec_.cardinality();
  if (card >= (1ull << 24)) throw InvalidArgument("ring too large");
  size_ = static_cast<std::uint32_t>(card);
  digits_ = spec_.r;
  if (spec_.kind == RingKind::galois_field && spec_.r > 1) modulus_ = find_irreducible(spec_.p, spec_.r);
  if (size_ <= kTableLimit) {
    std::vector<std::uint32_t> add(std::size_t{size_} * size_), mul(std::size_t{size_} * size_);
    for (std::uint32_t a = 0; a < size_; ++a)
      for (std::uint32_t b = 0; b < size_; ++b) {
        add[a * size_ + b] = add_slow(RingElem{a}, RingElem{b}).code;
        mul[a * size_ + b] = mul_slow(RingElem{a}, RingElem{b}).code;
      }
    add_table_ = std::move(add);
    mul_table_ = std::move(mul);
  }
}

RingElem LocalRing::elem(std::uint32_t code) const {
  if (code >= size_) throw InvalidArgument("element code out of range for " + spec_.to_string());
  return RingElem{code};
}

RingElem LocalRing::from_int(std::int64_t v) const noexcept {
  if (size_ == 1) return zero();
  if (spec_.kind == RingKind::integer_quotient) {
    const auto m = static_cast<std::int64_t>(size_);
    return RingElem{static_cast<std::uint32_t>(((v % m) + m) % m)};
  }
  // Characteristic p: only the constant coefficient is populated.
  const auto p = static_cast<std::int64_t>(spec_.p);
  return RingElem{static_cast<std::uint32_t>(((v % p) + p) % p)};
}

RingElem LocalRing::add_slow(RingElem a, RingElem b) const noexcept {
  if (spec_.kind == RingKind::integer_quotient) return RingElem{static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % size_)};
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < digits_; ++i) {
    const std::uint32_t da = a.code % spec_.p, db = b.code % spec_.p;
    out += ((da + db) % spec_.p) * scale;
    a.code /= spec_.p;
    b.code /= spec_.p;
    scale *= spec_.p;
  }
  return RingElem{out};
}

RingElem LocalRing::neg(RingElem a) const noexcept {
  if (spec_.kind == RingKind::integer_quotient) return RingElem{(size_ - a.code) % size_};
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < digits_; ++i) {
    const std::uint32_t da = a.code % spec_.p;
    out += ((spec_.p - da) % spec_.p) * scale;
    a.code /= spec_.p;
    scale *= spec_.p;
  }
  return RingElem{out};
}

RingElem LocalRing::mul_slow(RingElem a, RingElem b) const noexcept {
  if (spec_.kind == RingKind::integer_quotient) return RingElem{static_cast<std::uint32_t>((std::uint64_t{a.code} * b.code) % size_)};
  const std::uint32_t p = spec_.p;
  const auto da = to_digits(a.code, p, digits_);
  const auto db = to_digits(b.code, p, digits_);
  std::vector<std::uint32_t> prod(digits_ == 0 ? 0 : 2 * digits_ - 1, 0);
  for (std::uint32_t i = 0; i < digits_; ++i)
    for (std::uint32_t j = 0; j < digits_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
  if (spec_.kind == RingKind::galois_field && !modulus_.empty()) prod = poly_mod(std::move(prod), modulus_, p);
  prod.resize(digits_);  // truncation t^r = 0 for tpoly; no-op for reduced gf products
  return RingElem{from_digits(prod, p, digits_)};
}

RingElem LocalRing::pow(RingElem a, std::uint64_t e) const noexcept {
  RingElem out = one();
  while (e > 0) {
    if (e & 1) out = mul(out, a);
    a = mul(a, a);
    e >>= 1;
  }
  return out;
}

unsigned LocalRing::valuation(RingElem a) const noexcept {
  if (a.code == 0) return kInfiniteValuation;
  if (spec_.kind == RingKind::galois_field) return 0;
  // For both zmod and tpoly the valuation is the p-adic valuation of the code.
  unsigned v = 0;
  while (a.code % spec_.p == 0) {
    a.code /= spec_.p;
    ++v;
  }
  return v;
}

RingElem LocalRing::inverse(RingElem a) const {
  if (size_ == 1) return zero();
  const unsigned v = valuation(a);
  if (v != 0) {
    const unsigned shown = v == kInfiniteValuation ? level() : v;
    throw NonUnitError("element " + format(a) + " of " + spec_.to_string() + " is not a unit (valuation " +
                           (v == kInfiniteValuation ? std::string("inf") : std::to_string(v)) + ")",
                       shown);
  }
  const std::uint64_t units = spec_.kind == RingKind::galois_field ? std::uint64_t{size_} - 1
                                                                    : std::uint64_t{size_} - size_ / spec_.p;
  return pow(a, units - 1);
}

RingElem LocalRing::divide_exact(RingElem b, RingElem a) const {
  const unsigned va = valuation(a), vb = valuation(b);
  if (vb < va) throw InvalidArgument("divide_exact: valuation of dividend below divisor");
  if (a.code == 0) return zero();
  if (va == 0) return mul(b, inverse(a));
  const auto scale = static_cast<std::uint32_t>(ipow(spec_.p, va));
  const RingElem a_unit{a.code / scale};
  const RingElem b_shift{b.code / scale};
  return mul(b_shift, inverse(a_unit));
}

RingElem LocalRing::residue(RingElem x, std::uint32_t i) const {
  if (i > level())
    throw LevelOutOfRange("residue level " + std::to_string(i) + " exceeds ring level " + std::to_string(level()));
  if (spec_.kind == RingKind::galois_field) return i == 0 ? RingElem{0} : x;
  return RingElem{static_cast<std::uint32_t>(x.code % ipow(spec_.p, i))};
}

std::vector<RingElem> LocalRing::additive_generators() const {
  std::vector<RingElem> gens;
  if (size_ == 1) return gens;
  if (spec_.kind == RingKind::integer_quotient) return {one()};
  std::uint32_t code = 1;
  for (std::uint32_t i = 0; i < digits_; ++i, code *= spec_.p) gens.push_back(RingElem{code});
  return gens;
}

std::string LocalRing::format(RingElem a) const {
  if (spec_.kind == RingKind::integer_quotient || a.code == 0) return std::to_string(a.code);
  const char var = spec_.kind == RingKind::truncated_polynomial ? 't' : 'a';
  const auto d = to_digits(a.code, spec_.p, digits_);
  std::string out;
  for (std::uint32_t i = 0; i < digits_; ++i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || d[i] != 1) out += std::to_string(d[i]);
    if (i >= 1) out += var;
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

}  // namespace repzeta
