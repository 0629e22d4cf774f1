#include "repzeta/polygraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include <boost/pending/disjoint_sets.hpp>

#include "repzeta/errors.hpp"

namespace repzeta {

Edge make_edge(Vertex u, Vertex v) {
  if (u == v) throw InvalidArgument("edge endpoints must differ");
  return u < v ? Edge{u, v} : Edge{v, u};
}

Triple make_triple(Vertex u, Vertex v, std::uint32_t out) {
  if (u == v) throw InvalidArgument("triple pair must have two distinct vertices");
  return u < v ? Triple{u, v, out} : Triple{v, u, out};
}

Polygraph::Polygraph(std::size_t vertex_count, std::size_t output_count, std::vector<Triple> triples)
    : vertices_(vertex_count), outputs_(output_count), triples_(std::move(triples)) {
  for (auto& t : triples_) {
    if (t.a == t.b || t.a >= vertices_ || t.b >= vertices_ || t.out >= outputs_)
      throw InvalidArgument("polygraph triple out of range");
    if (t.a > t.b) std::swap(t.a, t.b);
  }
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
}

bool Polygraph::contains(const Triple& t) const { return std::binary_search(triples_.begin(), triples_.end(), t); }

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges) : vertices_(vertex_count), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.a == e.b) throw InvalidArgument("graphs have no self-loops");
    if (e.a >= vertices_ || e.b >= vertices_) throw InvalidArgument("edge endpoint out of range");
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::vector<unsigned> Graph::degrees() const {
  std::vector<unsigned> deg(vertices_, 0);
  for (const auto& e : edges_) ++deg[e.a], ++deg[e.b];
  return deg;
}

std::vector<std::vector<Vertex>> Graph::adjacency() const {
  std::vector<std::vector<Vertex>> adj(vertices_);
  for (const auto& e : edges_) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

Polygraph attach(const Graph& g) {
  std::vector<Triple> s;
  for (std::uint32_t k = 0; k < g.edges().size(); ++k) s.push_back({g.edges()[k].a, g.edges()[k].b, k});
  return Polygraph(g.vertex_count(), g.edges().size(), std::move(s));
}

GraphReading read_as_graph(const Polygraph& p) {
  GraphReading out;
  std::vector<std::size_t> per_output(p.output_count(), 0);
  std::map<Edge, std::size_t> pair_use;
  std::vector<Edge> edges;
  for (const auto& t : p.triples()) {
    ++per_output[t.out];
    const Edge e{t.a, t.b};
    if (pair_use[e]++ == 0) edges.push_back(e);
  }
  for (std::uint32_t j = 0; j < p.output_count(); ++j) {
    if (per_output[j] == 0) out.empty_outputs.push_back(j);
    if (per_output[j] > 1) out.shared_outputs.push_back(j);
  }
  for (const auto& [e, uses] : pair_use)
    if (uses > 1) ++out.repeated_pairs;
  out.graph = Graph(p.vertex_count(), std::move(edges));
  out.attached = out.empty_outputs.empty() && out.shared_outputs.empty() && out.repeated_pairs == 0;
  return out;
}

Polygraph gr_w(const Polygraph& p, const ScalarWeight& w) {
  if (w.size() != p.vertex_count()) throw InvalidArgument("weight must cover every vertex");
  std::vector<mpz_class> best(p.output_count());
  std::vector<bool> seen(p.output_count(), false);
  mpz_class pair;
  for (const auto& t : p.triples()) {
    pair = w[t.a] + w[t.b];
    if (!seen[t.out] || pair > best[t.out]) {
      best[t.out] = pair;
      seen[t.out] = true;
    }
  }
  std::vector<Triple> kept;
  for (const auto& t : p.triples()) {
    pair = w[t.a] + w[t.b];
    if (pair == best[t.out]) kept.push_back(t);
  }
  return Polygraph(p.vertex_count(), p.output_count(), std::move(kept));
}

Polygraph level_split(const Polygraph& p, std::size_t levels) {
  if (levels == 0) throw InvalidArgument("level set must be nonempty");
  std::vector<Triple> s;
  s.reserve(p.triples().size() * levels);
  for (const auto& t : p.triples())
    for (std::size_t m = 0; m < levels; ++m)
      s.push_back({static_cast<Vertex>(t.a * levels + m), static_cast<Vertex>(t.b * levels + m), t.out});
  return Polygraph(p.vertex_count() * levels, p.output_count(), std::move(s));
}

ScalarWeight flatten_levels(const MultiWeight& w) {
  ScalarWeight out;
  const std::size_t levels = w.empty() ? 0 : w[0].size();
  out.reserve(w.size() * levels);
  for (const auto& row : w) {
    if (row.size() != levels) throw InvalidArgument("multi-weight rows differ in length");
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<std::uint32_t> edge_colors(const Graph& g, const MultiWeight& w) {
  if (w.size() != g.vertex_count()) throw InvalidArgument("weight must cover every vertex");
  std::vector<std::uint32_t> colors;
  colors.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    const auto& wa = w[e.a];
    const auto& wb = w[e.b];
    if (wa.size() != wb.size() || wa.empty()) throw InvalidArgument("multi-weight rows differ in length");
    std::uint32_t arg = 0;
    mpz_class best = wa[0] + wb[0];
    bool tie = false;
    for (std::uint32_t m = 1; m < wa.size(); ++m) {
      const mpz_class v = wa[m] + wb[m];
      if (v > best) {
        best = v;
        arg = m;
        tie = false;
      } else if (v == best) {
        tie = true;
      }
    }
    if (tie)
      throw NonUniqueMaximum("edge {" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                             "} has no unique maximal level");
    colors.push_back(arg);
  }
  return colors;
}

std::vector<Graph> color_split(const Graph& g, const MultiWeight& w) {
  const auto colors = edge_colors(g, w);
  const std::size_t levels = w.empty() ? 0 : w[0].size();
  std::vector<std::vector<Edge>> parts(levels);
  for (std::size_t k = 0; k < colors.size(); ++k) parts[colors[k]].push_back(g.edges()[k]);
  std::vector<Graph> out;
  for (auto& part : parts) out.emplace_back(g.vertex_count(), std::move(part));
  return out;
}

ForestInfo forest_check(const Graph& g) {
  ForestInfo info;
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> rank(n, 0), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t v = 0; v < n; ++v) sets.make_set(v);
  for (const auto& e : g.edges()) {
    if (sets.find_set(e.a) == sets.find_set(e.b)) info.is_forest = false;
    else sets.union_set(e.a, e.b);
  }
  for (auto d : g.degrees()) info.max_degree = std::max(info.max_degree, d);
  return info;
}

std::vector<std::vector<Edge>> edge_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> rank(n, 0), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t v = 0; v < n; ++v) sets.make_set(v);
  for (const auto& e : g.edges()) sets.union_set(e.a, e.b);
  std::map<std::size_t, std::vector<Edge>> groups;
  // keyed by the smallest vertex of each component so the order is stable
  std::vector<std::size_t> smallest(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& s = smallest[sets.find_set(v)];
    s = std::min(s, v);
  }
  for (const auto& e : g.edges()) groups[smallest[sets.find_set(e.a)]].push_back(e);
  std::vector<std::vector<Edge>> out;
  for (auto& [key, edges] : groups) out.push_back(std::move(edges));
  return out;
}

namespace {

std::vector<unsigned> distances_from(const Graph& tree, Vertex root) {
  const auto adj = tree.adjacency();
  std::vector<unsigned> dist(tree.vertex_count(), ~0u);
  std::deque<Vertex> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : adj[v])
      if (dist[u] == ~0u) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  return dist;
}

// w(v)(m) = (1 + (-1)^(delta(v) + m)) delta(v)
MultiWeight parity_weight(const std::vector<unsigned>& dist) {
  MultiWeight w;
  for (auto d : dist) {
    std::vector<mpz_class> row(2);
    for (unsigned m = 0; m < 2; ++m) row[m] = ((d + m) % 2 == 0) ? 2 * static_cast<unsigned long>(d) : 0ul;
    w.push_back(std::move(row));
  }
  return w;
}

MultiWeight unit_weights(std::size_t children) {
  MultiWeight w(children + 1, std::vector<mpz_class>(children, 0));
  for (std::size_t i = 0; i < children; ++i) w[i + 1][i] = 1;
  return w;
}

Graph star_graph(std::size_t children) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < children; ++i) edges.push_back({0, static_cast<Vertex>(i + 1)});
  return Graph(children + 1, std::move(edges));
}

std::uint64_t budget_of(const std::vector<Star>& stars) {
  std::uint64_t widest[2] = {0, 0};
  for (const auto& s : stars) widest[s.color] = std::max<std::uint64_t>(widest[s.color], s.children.size());
  return 2 * widest[0] + 2 * widest[1];
}

void check_tree_and_root(const Graph& tree, Vertex root) {
  const auto info = forest_check(tree);
  if (tree.vertex_count() == 0 || !info.is_forest || tree.edges().size() + 1 != tree.vertex_count())
    throw InvalidArgument("tree_edge_reduction needs a tree");
  if (root >= tree.vertex_count()) throw InvalidRoot("root is not a vertex of the tree");
  if (tree.edges().size() >= 2 && tree.degrees()[root] == info.max_degree)
    throw InvalidRoot("root " + std::to_string(root) + " has maximal degree " + std::to_string(info.max_degree));
}

}  // namespace

ReductionCertificate tree_edge_reduction(const Graph& tree, Vertex root) {
  check_tree_and_root(tree, root);
  ReductionCertificate cert;
  cert.tree = tree;
  cert.root = root;
  cert.max_degree = forest_check(tree).max_degree;
  const auto dist = distances_from(tree, root);
  cert.parity_weight = parity_weight(dist);
  cert.colour_classes = color_split(tree, cert.parity_weight);

  const auto adj = tree.adjacency();
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    Star s{v, {}, (dist[v] + 1) % 2};
    for (Vertex u : adj[v])
      if (dist[u] == dist[v] + 1) s.children.push_back(u);
    if (s.children.empty()) continue;
    cert.star_weights.push_back(unit_weights(s.children.size()));
    const auto pieces = color_split(star_graph(s.children.size()), cert.star_weights.back());
    for (const auto& piece : pieces)
      for (const auto& e : piece.edges()) cert.final_edges.push_back(make_edge(v, s.children[e.b - 1]));
    cert.stars.push_back(std::move(s));
  }
  std::sort(cert.final_edges.begin(), cert.final_edges.end());
  cert.dim_budget = budget_of(cert.stars);
  return cert;
}

std::string replay_certificate(const ReductionCertificate& cert) {
  try {
    check_tree_and_root(cert.tree, cert.root);
  } catch (const Error& e) {
    return e.what();
  }
  const auto dist = distances_from(cert.tree, cert.root);
  if (parity_weight(dist) != cert.parity_weight) return "stage 1 weights differ from the parity weights";
  const auto classes = color_split(cert.tree, cert.parity_weight);
  if (classes != cert.colour_classes) return "stage 1 colour classes do not replay";
  for (std::uint32_t m = 0; m < 2; ++m) {
    std::vector<Edge> from_stars;
    for (const auto& s : cert.stars)
      if (s.color == m)
        for (Vertex c : s.children) from_stars.push_back(make_edge(s.center, c));
    if (Graph(cert.tree.vertex_count(), from_stars) != classes[m])
      return "colour class " + std::to_string(m) + " is not the union of its recorded stars";
  }
  if (cert.star_weights.size() != cert.stars.size()) return "one stage 2 weight per star expected";
  std::vector<Edge> finals;
  for (std::size_t k = 0; k < cert.stars.size(); ++k) {
    const auto& s = cert.stars[k];
    std::vector<Graph> pieces;
    try {
      pieces = color_split(star_graph(s.children.size()), cert.star_weights[k]);
    } catch (const Error& e) {
      return std::string("stage 2: ") + e.what();
    }
    for (const auto& piece : pieces) {
      for (const auto& comp : edge_components(piece))
        if (comp.size() > 1) return "a stage 2 component has more than one edge";
      for (const auto& e : piece.edges()) finals.push_back(make_edge(s.center, s.children[e.b - 1]));
    }
  }
  std::sort(finals.begin(), finals.end());
  if (finals != cert.final_edges) return "final components do not replay";
  if (finals != cert.tree.edges()) return "final edges do not cover the tree";
  if (budget_of(cert.stars) != cert.dim_budget) return "recorded budget differs from the recomputed one";
  if (cert.tree.edges().size() == 1 && cert.dim_budget != 2) return "single edge budget must be 2";
  if (cert.tree.edges().size() >= 2 && cert.dim_budget > 4ull * (cert.max_degree - 1))
    return "budget " + std::to_string(cert.dim_budget) + " exceeds 4(max_degree - 1)";
  return {};
}

std::string dot_export(const Graph& g, const std::vector<std::string>& labels, const std::vector<std::uint32_t>& colors,
                       const std::string& name) {
  static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
  if (!labels.empty() && labels.size() != g.vertex_count()) throw InvalidArgument("one label per vertex expected");
  if (!colors.empty() && colors.size() != g.edges().size()) throw InvalidArgument("one color per edge expected");
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << "  " << v;
    if (!labels.empty()) os << " [label=\"" << labels[v] << "\"]";
    os << ";\n";
  }
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    os << "  " << g.edges()[k].a << " -- " << g.edges()[k].b;
    if (!colors.empty()) os << " [color=\"" << palette[colors[k] % 8] << "\", level=" << colors[k] << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace repzeta
