#include "repzeta/modarith.hpp"

#include <algorithm>
#include <utility>

namespace repzeta::modp {

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const noexcept {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Field::reduce(std::int64_t v) const noexcept {
  const auto m = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((v % m) + m) % m);
}

std::vector<std::size_t> rref(const Field& f, Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const auto inv = f.inv(m[row][col]);
    for (auto& x : m[row]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const auto factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

Mat nullspace(const Field& f, Mat m, std::size_t cols) {
  const auto pivots = rref(f, m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Mat out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

Poly charpoly(const Field& f, Mat h) {
  const std::size_t n = h.size();
  // Reduce to upper Hessenberg form by similarity transforms.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h[piv][j] == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (auto& row : h) std::swap(row[piv], row[j + 1]);
    }
    const auto inv = f.inv(h[j + 1][j]);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h[i][j] == 0) continue;
      const auto u = f.mul(h[i][j], inv);
      for (std::size_t c = 0; c < n; ++c) h[i][c] = f.sub(h[i][c], f.mul(u, h[j + 1][c]));
      for (std::size_t r = 0; r < n; ++r) h[r][j + 1] = f.add(h[r][j + 1], f.mul(u, h[r][i]));
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} prod(subdiagonal) p_{m-i-1}
  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Poly cur(m + 1, 0);
    for (std::size_t d = 0; d < p[m - 1].size(); ++d) {
      cur[d + 1] = f.add(cur[d + 1], p[m - 1][d]);
      cur[d] = f.sub(cur[d], f.mul(h[m - 1][m - 1], p[m - 1][d]));
    }
    std::uint64_t t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = f.mul(t, h[m - i][m - i - 1]);
      const auto coeff = f.mul(t, h[m - i - 1][m - 1]);
      if (coeff == 0) continue;
      for (std::size_t d = 0; d < p[m - i - 1].size(); ++d) cur[d] = f.sub(cur[d], f.mul(coeff, p[m - i - 1][d]));
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(const Field& f, Poly a, const Poly& m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const auto lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    const auto factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(factor, m[i]));
    trim(a);
  }
  return a;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(f, std::move(a), b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const auto inv = f.inv(a.back());
    for (auto& x : a) x = f.mul(x, inv);
  }
  return a;
}

Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % f.p;
  }
  return poly_mod(f, std::move(out), m);
}

Poly poly_powmod(const Field& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly r = poly_mod(f, {1}, m);
  base = poly_mod(f, std::move(base), m);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(f, r, base, m);
    base = poly_mulmod(f, base, base, m);
    e >>= 1;
  }
  return r;
}

namespace {

// g is a product of distinct monic linear factors.
void split_linear(const Field& f, const Poly& g, std::mt19937_64& rng, std::vector<std::uint64_t>& roots) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    roots.push_back(f.neg(f.mul(g[0], f.inv(g[1]))));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, f.p - 1);
  for (;;) {
    // gcd(g, (x + a)^((p-1)/2) - 1) is a proper factor with probability about 1/2.
    auto h = poly_powmod(f, {pick(rng), 1}, (f.p - 1) / 2, g);
    if (h.empty()) h = {f.neg(1)};
    else h[0] = f.sub(h[0], 1);
    trim(h);
    const auto d = poly_gcd(f, g, h);
    if (d.size() <= 1 || d.size() == g.size()) continue;
    // g / d by long division
    Poly q(g.size() - d.size() + 1, 0), rem = g;
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = rem[i + d.size() - 1];
      for (std::size_t j = 0; j < d.size(); ++j) rem[i + j] = f.sub(rem[i + j], f.mul(q[i], d[j]));
    }
    split_linear(f, d, rng, roots);
    split_linear(f, q, rng, roots);
    return;
  }
}

}  // namespace

std::vector<std::uint64_t> distinct_roots(const Field& f, const Poly& a, std::mt19937_64& rng) {
  Poly g = a;
  trim(g);
  if (g.size() <= 1) return {};
  // gcd with x^p - x keeps one copy of every linear factor.
  auto xp = poly_powmod(f, {0, 1}, f.p, g);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = f.sub(xp[1], 1);
  trim(xp);
  const auto lin = poly_gcd(f, g, xp);
  std::vector<std::uint64_t> roots;
  if (lin.empty()) {
    // x^p - x = 0 mod g: every element of the field is a root, cannot happen for deg g < p
    return roots;
  }
  split_linear(f, lin, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace repzeta::modp
