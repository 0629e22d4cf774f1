#pragma once

// Arithmetic modulo a word-sized prime, plus the dense linear algebra and
// polynomial routines the Dixon method needs.

#include <cstdint>
#include <random>
#include <vector>

namespace repzeta::modp {

struct Field {
  std::uint64_t p;  // prime below 2^32

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return a * b % p; }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  /// a != 0
  std::uint64_t inv(std::uint64_t a) const noexcept { return pow(a, p - 2); }
  std::uint64_t reduce(std::int64_t v) const noexcept;
};

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<Vec>;
/// Coefficients, lowest degree first, no trailing zeros (zero polynomial is empty).
using Poly = std::vector<std::uint64_t>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(const Field& f, Mat& m);
/// Basis of {x : m x = 0}.
Mat nullspace(const Field& f, Mat m, std::size_t cols);

/// Characteristic polynomial det(x I - m) via Hessenberg reduction.
Poly charpoly(const Field& f, Mat m);

void trim(Poly& a);
Poly poly_mod(const Field& f, Poly a, const Poly& m);
Poly poly_gcd(const Field& f, Poly a, Poly b);
Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const Field& f, Poly base, std::uint64_t e, const Poly& m);

/// Distinct roots in the prime field, sorted.
std::vector<std::uint64_t> distinct_roots(const Field& f, const Poly& a, std::mt19937_64& rng);

}  // namespace repzeta::modp
