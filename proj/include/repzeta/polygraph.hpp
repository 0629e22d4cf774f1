#pragma once

// Polygraphs (I, J, S), graphs, integer weights and the degeneration steps
// built from them: gr_w, level splitting, coloring, forest checks and the
// reduction of a tree to single edges.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace repzeta {

using Vertex = std::uint32_t;

/// ({a, b}, out) with a < b.
struct Triple {
  Vertex a = 0, b = 0;
  std::uint32_t out = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct Edge {
  Vertex a = 0, b = 0;  ///< a < b
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertices are 0..vertex_count-1 and outputs 0..output_count-1. Triples are kept
/// sorted and unique, so == is equality of the underlying sets.
class Polygraph {
 public:
  Polygraph() = default;
  Polygraph(std::size_t vertex_count, std::size_t output_count, std::vector<Triple> triples);

  std::size_t vertex_count() const noexcept { return vertices_; }
  std::size_t output_count() const noexcept { return outputs_; }
  const std::vector<Triple>& triples() const noexcept { return triples_; }
  bool contains(const Triple& t) const;

  friend bool operator==(const Polygraph&, const Polygraph&) = default;

 private:
  std::size_t vertices_ = 0, outputs_ = 0;
  std::vector<Triple> triples_;
};

class Graph {
 public:
  Graph() = default;
  /// Rejects self-loops; duplicate edges are merged.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::vector<unsigned> degrees() const;
  std::vector<std::vector<Vertex>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertices_ = 0;
  std::vector<Edge> edges_;
};

Edge make_edge(Vertex u, Vertex v);
Triple make_triple(Vertex u, Vertex v, std::uint32_t out);

using ScalarWeight = std::vector<mpz_class>;
/// weight[v][m] for levels m = 0..|M|-1
using MultiWeight = std::vector<std::vector<mpz_class>>;

/// (V, E, diagonal): output k is edge k.
Polygraph attach(const Graph& g);

/// Reads a polygraph back as the polygraph attached to a graph.
struct GraphReading {
  Graph graph;
  bool attached = false;                    ///< every output has exactly one triple, pairs distinct
  std::vector<std::uint32_t> empty_outputs; ///< outputs with no triple
  std::vector<std::uint32_t> shared_outputs;///< outputs with two or more triples
  std::size_t repeated_pairs = 0;           ///< pairs used by more than one output
};
GraphReading read_as_graph(const Polygraph& p);

/// Keeps, for every output, the triples of maximal w(a) + w(b).
Polygraph gr_w(const Polygraph& p, const ScalarWeight& w);

/// (I x M, J, S x M); vertex (x, m) has index x * levels + m.
Polygraph level_split(const Polygraph& p, std::size_t levels);
/// The weight of (x, m) is w[x][m], in the vertex numbering of level_split.
ScalarWeight flatten_levels(const MultiWeight& w);

/// Color of each edge: the level where w(a) + w(b) is maximal. Throws
/// NonUniqueMaximum naming the first edge with a tie.
std::vector<std::uint32_t> edge_colors(const Graph& g, const MultiWeight& w);
/// gr_{w,m} G for every level m.
std::vector<Graph> color_split(const Graph& g, const MultiWeight& w);

struct ForestInfo {
  bool is_forest = true;
  unsigned max_degree = 0;
};
ForestInfo forest_check(const Graph& g);

/// Connected components with at least one edge, as edge lists.
std::vector<std::vector<Edge>> edge_components(const Graph& g);

struct Star {
  Vertex center = 0;
  std::vector<Vertex> children;
  std::uint32_t color = 0;
  friend bool operator==(const Star&, const Star&) = default;
};

struct ReductionCertificate {
  Graph tree;
  Vertex root = 0;
  unsigned max_degree = 0;
  /// Stage 1: parity weights over M = Z/2 and the two colour classes.
  MultiWeight parity_weight;
  std::vector<Graph> colour_classes;
  std::vector<Star> stars;
  /// Stage 2: per star, unit-vector weights on (center, children...).
  std::vector<MultiWeight> star_weights;
  std::vector<Edge> final_edges;
  std::uint64_t dim_budget = 0;
};

/// Requires a tree and a root of non-maximal degree (any root for a single edge).
ReductionCertificate tree_edge_reduction(const Graph& tree, Vertex root);

/// Re-derives every stage from the tree, root and recorded weights. Empty on success.
std::string replay_certificate(const ReductionCertificate& cert);

/// Graphviz text. `labels` may be empty; `colors` (one per edge) may be empty.
std::string dot_export(const Graph& g, const std::vector<std::string>& labels = {},
                       const std::vector<std::uint32_t>& colors = {}, const std::string& name = "G");

}  // namespace repzeta
