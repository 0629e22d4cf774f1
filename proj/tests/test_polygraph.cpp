#include <functional>
#include <random>

#include "doctest.h"
#include "repzeta/errors.hpp"
#include "repzeta/polygraph.hpp"

using namespace repzeta;

namespace {

ScalarWeight scalar(std::initializer_list<long> values) {
  ScalarWeight w;
  for (long v : values) w.emplace_back(v);
  return w;
}

Graph random_tree(std::mt19937_64& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<Vertex> parent(0, v - 1);
    edges.push_back(make_edge(parent(rng), v));
  }
  return Graph(n, edges);
}

// independent cycle test by depth-first search
bool has_cycle_dfs(const Graph& g) {
  const auto adj = g.adjacency();
  std::vector<int> state(g.vertex_count(), 0);
  std::function<bool(Vertex, Vertex)> visit = [&](Vertex v, Vertex from) {
    state[v] = 1;
    for (Vertex u : adj[v]) {
      if (u == from) continue;
      if (state[u] == 1) return true;
      if (state[u] == 0 && visit(u, v)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (state[v] == 0 && visit(v, static_cast<Vertex>(-1))) return true;
  return false;
}

}  // namespace

TEST_CASE("attach") {
  const Graph edge(2, {{0, 1}});
  const auto p = attach(edge);
  CHECK(p.output_count() == 1);
  CHECK(p.triples() == std::vector<Triple>{{0, 1, 0}});
  CHECK(attach(Graph(3, {})).triples().empty());
  CHECK(attach(Graph(3, {{0, 1}, {1, 2}, {0, 2}})).triples().size() == 3);
  const auto back = read_as_graph(attach(Graph(3, {{0, 1}, {1, 2}})));
  CHECK(back.attached);
  CHECK(back.graph == Graph(3, {{0, 1}, {1, 2}}));
}

TEST_CASE("gr_w") {
  const Polygraph p(3, 1, {{0, 1, 0}, {1, 2, 0}});
  CHECK(gr_w(p, scalar({0, 0, 1})).triples() == std::vector<Triple>{{1, 2, 0}});
  CHECK(gr_w(p, scalar({0, 0, 0})) == p);
  CHECK(gr_w(p, scalar({1, 0, 1})) == p);  // tie keeps both

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<Vertex> v(0, 7);
    std::uniform_int_distribution<std::uint32_t> j(0, 3);
    std::uniform_int_distribution<long> wv(-3, 3);
    std::vector<Triple> s;
    for (int t = 0; t < 15; ++t) {
      const Vertex a = v(rng), b = v(rng);
      if (a != b) s.push_back(make_triple(a, b, j(rng)));
    }
    const Polygraph q(8, 4, s);
    ScalarWeight w;
    for (int i = 0; i < 8; ++i) w.emplace_back(wv(rng));
    const auto once = gr_w(q, w);
    CHECK(gr_w(once, w) == once);
    // gr_w never empties an output that had triples
    for (std::uint32_t out = 0; out < 4; ++out) {
      const bool before = std::any_of(q.triples().begin(), q.triples().end(), [&](auto& t) { return t.out == out; });
      const bool after =
          std::any_of(once.triples().begin(), once.triples().end(), [&](auto& t) { return t.out == out; });
      CHECK(before == after);
    }
  }
}

TEST_CASE("level split") {
  const Polygraph p(2, 1, {{0, 1, 0}});
  CHECK(level_split(p, 1) == p);
  const auto two = level_split(p, 2);
  CHECK(two.vertex_count() == 4);
  CHECK(two.triples() == std::vector<Triple>{{0, 2, 0}, {1, 3, 0}});
  const Polygraph q(4, 3, {{0, 1, 0}, {1, 2, 1}, {2, 3, 2}, {0, 3, 2}});
  CHECK(level_split(q, 5).triples().size() == 4 * 5);
}

TEST_CASE("coloring") {
  const Graph path(3, {{0, 1}, {1, 2}});
  MultiWeight w{{mpz_class(1), mpz_class(0)}, {mpz_class(0), mpz_class(0)}, {mpz_class(0), mpz_class(1)}};
  const auto parts = color_split(path, w);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].edges() == std::vector<Edge>{{0, 1}});
  CHECK(parts[1].edges() == std::vector<Edge>{{1, 2}});
  MultiWeight level0{{mpz_class(1), mpz_class(0)}, {mpz_class(1), mpz_class(0)}, {mpz_class(1), mpz_class(0)}};
  CHECK(color_split(path, level0)[0].edges().size() == 2);
  MultiWeight tied{{mpz_class(1), mpz_class(1)}, {mpz_class(0), mpz_class(0)}, {mpz_class(0), mpz_class(1)}};
  CHECK_THROWS_AS(color_split(path, tied), NonUniqueMaximum);
}

TEST_CASE("forest check against depth-first search") {
  CHECK(forest_check(Graph(3, {{0, 1}, {1, 2}})).is_forest);
  CHECK(forest_check(Graph(3, {{0, 1}, {1, 2}})).max_degree == 2);
  CHECK_FALSE(forest_check(Graph(3, {{0, 1}, {1, 2}, {0, 2}})).is_forest);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 50);
    const std::size_t n = size(rng);
    std::uniform_int_distribution<Vertex> v(0, static_cast<Vertex>(n - 1));
    std::uniform_int_distribution<std::size_t> count(0, n + 2);
    std::vector<Edge> edges;
    const std::size_t m = count(rng);
    for (std::size_t k = 0; k < m; ++k) {
      const Vertex a = v(rng), b = v(rng);
      if (a != b) edges.push_back(make_edge(a, b));
    }
    const Graph g(n, edges);
    const auto info = forest_check(g);
    CHECK(info.is_forest == !has_cycle_dfs(g));
    const auto deg = g.degrees();
    CHECK(info.max_degree == (deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end())));
  }
}

TEST_CASE("tree reduction certificates") {
  const auto single = tree_edge_reduction(Graph(2, {{0, 1}}), 0);
  CHECK(single.dim_budget == 2);
  CHECK(replay_certificate(single).empty());

  const auto path = tree_edge_reduction(Graph(3, {{0, 1}, {1, 2}}), 0);
  CHECK(path.dim_budget == 4);
  REQUIRE(path.stars.size() == 2);
  CHECK(path.stars[0] == Star{0, {1}, 1});
  CHECK(path.stars[1] == Star{1, {2}, 0});
  CHECK(replay_certificate(path).empty());
  CHECK_THROWS_AS(tree_edge_reduction(Graph(3, {{0, 1}, {1, 2}}), 1), InvalidRoot);

  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto cert = tree_edge_reduction(star, 1);
  CHECK(cert.dim_budget <= 8);
  CHECK(replay_certificate(cert).empty());

  auto tampered = path;
  tampered.dim_budget = 6;
  CHECK_FALSE(replay_certificate(tampered).empty());

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 40);
    const auto tree = random_tree(rng, size(rng));
    const auto deg = tree.degrees();
    const unsigned top = *std::max_element(deg.begin(), deg.end());
    Vertex root = 0;
    while (tree.edges().size() >= 2 && deg[root] == top) ++root;
    const auto c = tree_edge_reduction(tree, root);
    CHECK(replay_certificate(c).empty());
    if (tree.edges().size() == 1) CHECK(c.dim_budget == 2);
    else CHECK(c.dim_budget <= 4ull * (top - 1));
  }
}

TEST_CASE("dot export") {
  CHECK(dot_export(Graph()) == "graph \"G\" {\n}\n");
  const auto one = dot_export(Graph(2, {{0, 1}}), {"a", "b"});
  CHECK(one.find("0 -- 1;") != std::string::npos);
  const auto colored = dot_export(Graph(3, {{0, 1}, {1, 2}}), {}, {0, 2});
  CHECK(colored.find("color=\"red\"") != std::string::npos);
  CHECK(colored.find("color=\"darkgreen\"") != std::string::npos);
}
