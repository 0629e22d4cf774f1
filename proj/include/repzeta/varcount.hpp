#pragma once

// Point counts of symplectic graph varieties: one vector w_v in W_v = R^{dim}
// per vertex, with omega(w_u, w_v) = 0 for every edge, over a finite local ring.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "repzeta/localring.hpp"
#include "repzeta/polygraph.hpp"
#include "repzeta/wordmap.hpp"

namespace repzeta {

struct GraphVarietyInstance {
  Graph graph;
  /// Even dimension of W_v per vertex; equal across every edge.
  std::vector<unsigned> dim_w;
  LocalRingSpec ring;

  void validate() const;
  /// Same dimension on every vertex.
  static GraphVarietyInstance uniform(Graph g, unsigned dim, LocalRingSpec ring);
};

struct CountOptions {
  /// Limit on enumerated candidate assignments.
  std::uint64_t budget = 1'000'000'000;
  unsigned threads = 1;
  /// Vertex processing order; empty means 0..n-1.
  std::vector<Vertex> order;
};

struct CountReport {
  mpz_class count;
  std::int64_t expected_dimension = 0;  ///< sum of dims minus |E|
  mpq_class normalized;                 ///< count / |R|^expected_dimension
};

/// omega(x, y) = sum_{i<h} x_i y_{h+i} - x_{h+i} y_i, h = dim/2.
RingElem symplectic_form(const LocalRing& ring, const std::vector<RingElem>& x, const std::vector<RingElem>& y);

/// Number of x in R^m with M x = 0 (rows of M given), from the valuations of
/// a diagonal form of M.
mpz_class count_kernel(const LocalRing& ring, std::vector<std::vector<RingElem>> rows, unsigned m);

/// Depth-first assignment in the given order; a vertex with no later
/// neighbour is counted in closed form instead of enumerated.
CountReport count_graph_variety(const GraphVarietyInstance& inst, const CountOptions& options = {});
/// Oracle: enumerate every assignment. Throws SizeLimitExceeded above `budget`.
mpz_class count_graph_variety_naive(const GraphVarietyInstance& inst, std::uint64_t budget = 1'000'000);

struct NormalizedSequence {
  std::vector<mpq_class> values;  ///< a_r for r = 1..values.size()
  bool truncated = false;
};

/// a_r = count over Z/p^r divided by p^{r * expected dimension}, r = 1..r_max.
NormalizedSequence normalized_sequence(const Graph& g, unsigned dim_w, std::uint32_t p, unsigned r_max,
                                       const CountOptions& options = {});

struct LangWeilRow {
  std::uint64_t q = 0;
  LocalRingSpec field;
  std::uint64_t order = 0;
  mpq_class zeta;
  mpq_class deviation;  ///< zeta - 1
  bool computed = false;
  std::string error;
};

/// zeta_{SL_2(F_q)}(2n - 2) for each q; entries over budget are marked.
std::vector<LangWeilRow> langweil_report(const std::vector<std::uint64_t>& qs, unsigned n,
                                         const ComputeOptions& options = {});

/// The field F_q as a ring spec (zmod:p^1 for primes, gf:p^k otherwise).
LocalRingSpec field_spec(std::uint64_t q);

}  // namespace repzeta
