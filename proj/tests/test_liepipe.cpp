#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "repzeta/errors.hpp"
#include "repzeta/liepipe.hpp"

using namespace repzeta;

namespace {

using Dense = std::vector<std::vector<mpq_class>>;

Dense zero(unsigned n) { return Dense(n, std::vector<mpq_class>(n, 0)); }

Dense unit(unsigned n, unsigned r, unsigned c) {
  auto m = zero(n);
  m[r][c] = 1;
  return m;
}

Dense commutator(const Dense& a, const Dense& b) {
  const auto n = static_cast<unsigned>(a.size());
  auto out = zero(n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      if (a[i][k] != 0)
        for (unsigned j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
      if (b[i][k] != 0)
        for (unsigned j = 0; j < n; ++j) out[i][j] -= b[i][k] * a[k][j];
    }
  return out;
}

// Independent dense construction of the bases and coordinates, 0-based.
struct DenseAlgebra {
  std::vector<Dense> basis;
  std::vector<std::function<mpq_class(const Dense&)>> coords;
};

DenseAlgebra dense_sl(unsigned d) {
  DenseAlgebra a;
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      if (i == d - 1 && j == d - 1) continue;
      auto m = unit(d, i, j);
      if (i == j)
        for (unsigned k = 0; k < d; ++k) m[k][k] -= mpq_class(1, d);
      a.basis.push_back(m);
      a.coords.push_back([i, j](const Dense& x) { return x[i][j]; });
    }
  return a;
}

DenseAlgebra dense_so(unsigned d) {
  DenseAlgebra a;
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = i + 1; j < d; ++j) {
      auto m = unit(d, j, i);
      m[i][j] = -1;
      a.basis.push_back(m);
      a.coords.push_back([i, j](const Dense& x) { return x[j][i]; });
    }
  return a;
}

DenseAlgebra dense_sp(unsigned d) {
  DenseAlgebra a;
  const unsigned n = 2 * d;
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      auto e0 = zero(d);
      if (i == d - 1 && j == d - 1) {
        for (unsigned k = 0; k < d; ++k) e0[k][k] = 1;
        a.coords.push_back([d](const Dense& x) {
          mpq_class t = 0;
          for (unsigned k = 0; k < d; ++k) t += x[k][k];
          return t;
        });
      } else {
        e0[i][j] = 1;
        if (i == j)
          for (unsigned k = 0; k < d; ++k) e0[k][k] -= mpq_class(1, d);
        a.coords.push_back([i, j](const Dense& x) { return x[i][j]; });
      }
      auto m = zero(n);
      for (unsigned r = 0; r < d; ++r)
        for (unsigned c = 0; c < d; ++c) {
          m[r][c] = e0[r][c];
          m[d + r][d + c] = -e0[c][r];
        }
      a.basis.push_back(m);
    }
  for (int sign : {-1, 1})
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = i; j < d; ++j) {
        auto m = zero(n);
        const unsigned ro = sign < 0 ? 0 : d, co = sign < 0 ? d : 0;
        m[ro + i][co + j] += 1;
        m[ro + j][co + i] += 1;
        a.basis.push_back(m);
        // dual to the basis: the B (or C) entry, halved on the diagonal
        a.coords.push_back([=](const Dense& x) { return i == j ? x[ro + i][co + i] / 2 : x[ro + i][co + j]; });
      }
  return a;
}

DenseAlgebra dense(LieType t, unsigned d) {
  return t == LieType::sl ? dense_sl(d) : t == LieType::so ? dense_so(d) : dense_sp(d);
}

std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, mpq_class> oracle_constants(const DenseAlgebra& a) {
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, mpq_class> out;
  const auto n = static_cast<std::uint32_t>(a.basis.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const auto c = commutator(a.basis[i], a.basis[j]);
      for (std::uint32_t l = 0; l < n; ++l) {
        const auto v = a.coords[l](c);
        if (v != 0) out[{i, j, l}] = v;
      }
    }
  return out;
}

// Solves T x = y over Q by Gauss-Jordan elimination; T is square and invertible.
std::vector<mpq_class> solve(Dense t, std::vector<mpq_class> y) {
  const auto n = t.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (t[p][c] == 0) ++p;
    std::swap(t[p], t[c]);
    std::swap(y[p], y[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || t[r][c] == 0) continue;
      const mpq_class f = t[r][c] / t[c][c];
      for (std::size_t k = c; k < n; ++k) t[r][k] -= f * t[c][k];
      y[r] -= f * y[c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) y[r] /= t[r][r];
  return y;
}

}  // namespace

TEST_CASE("liepipe: basis sizes") {
  CHECK(lie_basis(LieType::sl, 2).basis.size() == 3);
  CHECK(lie_basis(LieType::sl, 8).basis.size() == 63);
  CHECK(lie_basis(LieType::so, 5).basis.size() == 10);
  CHECK(lie_basis(LieType::sp, 3).basis.size() == 21);
  CHECK_THROWS_AS(lie_basis(LieType::sl, 1), InvalidArgument);
  CHECK_THROWS_AS(lie_basis(LieType::so, 2), InvalidArgument);
  CHECK_THROWS_AS(parse_lie_type("gl"), InvalidArgument);
}

TEST_CASE("liepipe: structure constants match a dense commutator oracle") {
  for (auto t : {LieType::sl, LieType::so, LieType::sp}) {
    const unsigned lo = t == LieType::so ? 3 : 2;
    for (unsigned d = lo; d <= lo + 3; ++d) {
      CAPTURE(to_string(t));
      CAPTURE(d);
      const auto expected = oracle_constants(dense(t, d));
      const auto got = structure_constants(lie_basis(t, d));
      REQUIRE(got.size() == expected.size());
      for (const auto& c : got) {
        const auto it = expected.find({c.i, c.j, c.l});
        REQUIRE(it != expected.end());
        CHECK(it->second == c.value);
      }
    }
  }
}

TEST_CASE("liepipe: antisymmetry") {
  for (auto t : {LieType::sl, LieType::so, LieType::sp}) {
    const auto b = lie_basis(t, 4);
    const auto n = static_cast<std::uint32_t>(b.basis.size());
    for (std::uint32_t i = 0; i < n; i += 3)
      for (std::uint32_t j = 0; j < n; j += 2) {
        auto ab = bracket_coordinates(b, i, j);
        auto ba = bracket_coordinates(b, j, i);
        REQUIRE(ab.size() == ba.size());
        for (std::size_t k = 0; k < ab.size(); ++k) {
          CHECK(ab[k].first == ba[k].first);
          CHECK(ab[k].second == -ba[k].second);
        }
      }
  }
}

TEST_CASE("liepipe: Jacobi identity through basis coefficients") {
  std::mt19937_64 rng(7);
  for (auto t : {LieType::sl, LieType::so, LieType::sp}) {
    for (unsigned d = (t == LieType::so ? 3 : 2); d <= 6; ++d) {
      CAPTURE(to_string(t));
      CAPTURE(d);
      const auto b = lie_basis(t, d);
      const auto alg = dense(t, d);
      const auto n = static_cast<std::uint32_t>(b.basis.size());
      Dense tmat(n, std::vector<mpq_class>(n));
      for (std::uint32_t l = 0; l < n; ++l)
        for (std::uint32_t i = 0; i < n; ++i) tmat[l][i] = alg.coords[l](alg.basis[i]);
      std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<mpq_class>> coeff;
      auto bracket = [&](std::uint32_t i, std::uint32_t j) -> const std::vector<mpq_class>& {
        auto it = coeff.find({i, j});
        if (it != coeff.end()) return it->second;
        std::vector<mpq_class> y(n, 0);
        for (auto& [l, v] : bracket_coordinates(b, i, j)) y[l] = v;
        return coeff.emplace(std::make_pair(i, j), solve(tmat, y)).first->second;
      };
      auto nested = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
        std::vector<mpq_class> out(n, 0);
        const auto& ij = bracket(i, j);
        for (std::uint32_t m = 0; m < n; ++m) {
          if (ij[m] == 0) continue;
          const auto& mk = bracket(m, k);
          for (std::uint32_t r = 0; r < n; ++r) out[r] += ij[m] * mk[r];
        }
        return out;
      };
      std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
      for (int trial = 0; trial < 60; ++trial) {
        const auto i = pick(rng), j = pick(rng), k = pick(rng);
        const auto x = nested(i, j, k), y = nested(j, k, i), z = nested(k, i, j);
        bool vanishes = true;
        for (std::uint32_t r = 0; r < n; ++r) vanishes = vanishes && x[r] + y[r] + z[r] == 0;
        CHECK(vanishes);
      }
    }
  }
}

TEST_CASE("liepipe: sl S_0 equals its closed form") {
  for (unsigned d = 2; d <= 40; ++d) {
    CAPTURE(d);
    CHECK(structure_polygraph(lie_basis(LieType::sl, d)).triples() == sl_closed_form_s0(d).triples());
  }
}

TEST_CASE("liepipe: so S_0 is the symmetric-difference polygraph") {
  for (unsigned d = 3; d <= 8; ++d) {
    const auto b = lie_basis(LieType::so, d);
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t v = 0; v < b.labels.size(); ++v) index[b.labels[v]] = v;
    std::vector<std::pair<unsigned, unsigned>> sets;
    for (unsigned i = 1; i <= d; ++i)
      for (unsigned j = i + 1; j <= d; ++j) sets.emplace_back(i, j);
    std::vector<Triple> expected;
    for (std::uint32_t s = 0; s < sets.size(); ++s)
      for (std::uint32_t t = s + 1; t < sets.size(); ++t) {
        std::map<unsigned, int> count;
        for (auto x : {sets[s].first, sets[s].second, sets[t].first, sets[t].second}) ++count[x];
        if (count.size() != 3) continue;
        std::vector<unsigned> sym;
        for (auto [x, c] : count)
          if (c == 1) sym.push_back(x);
        expected.push_back(make_triple(s, t, index["{" + std::to_string(sym[0]) + "," + std::to_string(sym[1]) + "}"]));
      }
    CHECK(structure_polygraph(b).triples() == Polygraph(b.labels.size(), b.labels.size(), expected).triples());
  }
}

TEST_CASE("liepipe: sl pipeline early stages") {
  for (unsigned d = 2; d <= 12; ++d) {
    CAPTURE(d);
    const auto r = pipeline_sl(d);
    REQUIRE(r.stages.size() >= 3);
    CHECK(r.stages[0].name == "S_0");
    CHECK(r.stages[0].matches);
    CHECK(r.stages[1].name == "S_1");
    CHECK(r.stages[1].matches);
    CHECK_FALSE(r.terminal.edges().empty());
  }
}

TEST_CASE("liepipe: the corner triples of sl survive both gradings") {
  // [e_(d-1,d-1), e_(d-1,d)] = e_(d-1,d) is the only S_1 triple over the output (d-1,d),
  // and the closed form for S_2 has none.
  for (unsigned d = 2; d <= 10; ++d) {
    const auto b = lie_basis(LieType::sl, d);
    const std::uint32_t diag = (d - 2) * d + (d - 2), corner = (d - 2) * d + (d - 1);
    const auto c = bracket_coordinates(b, diag, corner);
    REQUIRE(c.size() == 1);
    CHECK(c[0].first == corner);
    CHECK(c[0].second == 1);
    const auto r = pipeline_sl(d);
    CHECK(r.stages[2].name == "S_2");
    CHECK(r.stages[2].missing_count == 0);
    CHECK(r.stages[2].extra_count == 2);
  }
}

TEST_CASE("liepipe: so pipeline matches its closed forms up to the colouring") {
  for (unsigned d = 3; d <= 12; ++d) {
    CAPTURE(d);
    const auto r = pipeline_so(d);
    for (const auto& s : r.stages) {
      CAPTURE(s.name);
      CHECK(s.matches);
    }
  }
}

TEST_CASE("liepipe: sp components S_0^1, S_0^2 and S_0^5 hold") {
  for (unsigned d = 2; d <= 8; ++d) {
    CAPTURE(d);
    const auto r = pipeline_sp(d);
    for (const auto& s : r.stages)
      if (s.name == "S_0^1" || s.name == "S_0^2" || s.name == "S_0^5") CHECK(s.matches);
  }
}

TEST_CASE("liepipe: sp trace correction produces triples outside the published components") {
  // [e_(k,k), e_[j,l]-] has coordinate -2/d on [j,l]- even when k is not in {j,l}.
  const unsigned d = 4;
  const auto b = lie_basis(LieType::sp, d);
  std::uint32_t k = 0, jl = 0;
  for (std::uint32_t v = 0; v < b.labels.size(); ++v) {
    if (b.labels[v] == "(1,1)") k = v;
    if (b.labels[v] == "[2,3]-") jl = v;
  }
  const auto c = bracket_coordinates(b, k, jl);
  REQUIRE(c.size() == 1);
  CHECK(c[0].first == jl);
  CHECK(c[0].second == mpq_class(-1, 2));
}

TEST_CASE("liepipe: reports are deterministic and replayable") {
  for (auto t : {LieType::sl, LieType::so, LieType::sp}) {
    const auto a = run_pipeline(t, 6), b = run_pipeline(t, 6);
    CHECK(a.digests == b.digests);
    CHECK(a.discrepancies == b.discrepancies);
    CHECK(replay_pipeline(a).empty());
    auto tampered = a;
    tampered.digests[0].second = "0:0";
    CHECK_FALSE(replay_pipeline(tampered).empty());
  }
}

TEST_CASE("liepipe: bounds and genus") {
  CHECK(bound_root("sl", 5) == 22);
  CHECK(bound_root("so", 7) == 22);
  CHECK(bound_root("sp", 3) == 40);
  CHECK(bound_root("e8") == 745);
  CHECK(bound_root("G2") == 43);
  CHECK(bound_root_group({"sl:3", "sp:2", "g2"}) == 43);
  CHECK(bound_root_group({"sl:3", "so:5"}) == 22);
  CHECK_THROWS_AS(bound_root("a5"), InvalidArgument);
  CHECK_THROWS_AS(bound_root_group({"sl:x"}), InvalidArgument);
  CHECK_THROWS_AS(bound_root_group({}), InvalidArgument);
  CHECK(min_genus(22).headline == 12);
  CHECK(min_genus(22).strict == 12);
  CHECK(min_genus(745).headline == 374);
  // least integer >= 745/2 + 1 = 373.5
  CHECK(min_genus(745).strict == 374);
  for (std::uint64_t b = 1; b < 200; ++b) {
    const auto g = min_genus(b);
    CHECK(2 * g.strict >= b + 2);
    CHECK(2 * (g.strict - 1) < b + 2);
    CHECK(g.headline == (b + 1) / 2 + 1);
  }
}
