#include "repzeta/varcount.hpp"

#include <algorithm>
#include <functional>

#include "repzeta/errors.hpp"
#include "repzeta/parallel.hpp"
#include "repzeta/padicpush.hpp"

namespace repzeta {

namespace {

mpz_class upow(std::uint64_t base, std::uint64_t e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), mpz_class(std::to_string(base)).get_mpz_t(), e);
  return out;
}

// Decodes index k into a vector of m ring elements (little-endian digits).
void decode(std::uint64_t k, std::uint32_t size, std::vector<RingElem>& out) {
  for (auto& x : out) {
    x = RingElem{static_cast<std::uint32_t>(k % size)};
    k /= size;
  }
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < e; ++k) {
    if (out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

}  // namespace

void GraphVarietyInstance::validate() const {
  if (dim_w.size() != graph.vertex_count()) throw InvalidArgument("one dimension per vertex is required");
  for (unsigned d : dim_w)
    if (d < 2 || d % 2 != 0) throw InvalidArgument("dim W must be even and at least 2");
  for (const auto& e : graph.edges())
    if (dim_w[e.a] != dim_w[e.b]) throw InvalidArgument("dim W must agree across each edge");
}

GraphVarietyInstance GraphVarietyInstance::uniform(Graph g, unsigned dim, LocalRingSpec ring) {
  GraphVarietyInstance inst{std::move(g), {}, ring};
  inst.dim_w.assign(inst.graph.vertex_count(), dim);
  inst.validate();
  return inst;
}

RingElem symplectic_form(const LocalRing& ring, const std::vector<RingElem>& x, const std::vector<RingElem>& y) {
  const std::size_t h = x.size() / 2;
  RingElem s = ring.zero();
  for (std::size_t i = 0; i < h; ++i) {
    s = ring.add(s, ring.mul(x[i], y[h + i]));
    s = ring.sub(s, ring.mul(x[h + i], y[i]));
  }
  return s;
}

mpz_class count_kernel(const LocalRing& ring, std::vector<std::vector<RingElem>> rows, unsigned m) {
  const std::uint32_t level = ring.level();
  const std::uint64_t residue = ring.spec().residue_field_size();
  std::uint64_t exponent = 0;  // count = residue^exponent
  std::size_t top = 0;
  std::vector<bool> col_used(m, false);
  unsigned free_cols = m;
  while (true) {
    // pivot of least valuation among the remaining rows and unused columns
    unsigned best = kInfiniteValuation;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = top; r < rows.size(); ++r)
      for (unsigned c = 0; c < m; ++c) {
        if (col_used[c]) continue;
        const unsigned v = ring.valuation(rows[r][c]);
        if (v < best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    if (best == kInfiniteValuation || best >= level) break;
    std::swap(rows[top], rows[br]);
    const RingElem pivot = rows[top][bc];
    // clear the column below; the row's other entries do not change the count
    // because column operations with multiples of the pivot are invertible
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][bc] == ring.zero()) continue;
      const RingElem f = ring.divide_exact(rows[r][bc], pivot);
      for (unsigned c = 0; c < m; ++c) rows[r][c] = ring.sub(rows[r][c], ring.mul(f, rows[top][c]));
    }
    for (unsigned c = 0; c < m; ++c) {
      if (c == bc || col_used[c] || rows[top][c] == ring.zero()) continue;
      const RingElem f = ring.divide_exact(rows[top][c], pivot);
      for (std::size_t r = top; r < rows.size(); ++r) rows[r][c] = ring.sub(rows[r][c], ring.mul(f, rows[r][bc]));
    }
    col_used[bc] = true;
    --free_cols;
    exponent += best;  // pivot u * pi^e kills an ideal of size q^e
    ++top;
  }
  exponent += std::uint64_t{free_cols} * level;
  return upow(residue, exponent);
}

CountReport count_graph_variety(const GraphVarietyInstance& inst, const CountOptions& options) {
  inst.validate();
  const std::size_t n = inst.graph.vertex_count();
  std::vector<Vertex> order = options.order;
  if (order.empty())
    for (Vertex v = 0; v < n; ++v) order.push_back(v);
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < n; ++k)
      if (sorted.size() != n || sorted[k] != k) throw InvalidArgument("order must be a permutation of the vertices");
  }
  const LocalRing ring(inst.ring);
  const auto adj = inst.graph.adjacency();
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  // vertices with a later neighbour are enumerated; the rest are counted
  std::vector<bool> enumerate(n, false);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : adj[v])
      if (position[u] > position[v]) enumerate[v] = true;
  std::uint64_t candidates = 1;
  for (Vertex v = 0; v < n; ++v)
    if (enumerate[v]) {
      const auto s = saturating_pow(ring.size(), inst.dim_w[v]);
      candidates = (candidates > UINT64_MAX / s) ? UINT64_MAX : candidates * s;
    }
  if (candidates > options.budget)
    throw SizeLimitExceeded("point count needs " + std::to_string(candidates) + " candidate assignments", candidates);

  struct Worker {
    std::vector<std::vector<RingElem>> value;
    mpz_class total = 0;
  };

  auto constraints = [&](const Worker& w, Vertex v) {
    std::vector<std::vector<RingElem>> rows;
    const std::size_t h = inst.dim_w[v] / 2;
    for (Vertex u : adj[v]) {
      if (position[u] > position[v]) continue;
      const auto& y = w.value[u];
      std::vector<RingElem> row(inst.dim_w[v]);
      // omega(w_u, x) as a row acting on x
      for (std::size_t i = 0; i < h; ++i) {
        row[i] = ring.neg(y[h + i]);
        row[h + i] = y[i];
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };

  auto satisfies = [&](const Worker& w, Vertex v) {
    for (Vertex u : adj[v])
      if (position[u] < position[v] && symplectic_form(ring, w.value[u], w.value[v]) != ring.zero()) return false;
    return true;
  };

  // recursion over positions k..n-1, accumulating the product of closed-form factors
  std::function<void(Worker&, std::size_t, const mpz_class&)> visit = [&](Worker& w, std::size_t k,
                                                                          const mpz_class& factor) {
    if (k == n) {
      w.total += factor;
      return;
    }
    const Vertex v = order[k];
    if (!enumerate[v]) {
      const auto c = count_kernel(ring, constraints(w, v), inst.dim_w[v]);
      if (c != 0) visit(w, k + 1, factor * c);
      return;
    }
    const std::uint64_t total = saturating_pow(ring.size(), inst.dim_w[v]);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      decode(idx, ring.size(), w.value[v]);
      if (satisfies(w, v)) visit(w, k + 1, factor);
    }
  };

  CountReport report;
  std::int64_t dims = 0;
  for (unsigned d : inst.dim_w) dims += d;
  report.expected_dimension = dims - static_cast<std::int64_t>(inst.graph.edges().size());

  if (n == 0) {
    report.count = 1;
  } else {
    const Vertex first = order[0];
    const std::uint64_t split = enumerate[first] ? saturating_pow(ring.size(), inst.dim_w[first]) : 1;
    std::vector<Worker> workers(std::max(1u, options.threads == 0 ? default_threads() : options.threads));
    for (auto& w : workers) {
      w.value.resize(n);
      for (Vertex v = 0; v < n; ++v) w.value[v].assign(inst.dim_w[v], ring.zero());
    }
    parallel_chunks(split, options.threads, [&](std::size_t begin, std::size_t end, unsigned id) {
      Worker& w = workers[id];
      if (!enumerate[first]) {
        visit(w, 0, mpz_class(1));
        return;
      }
      for (std::size_t idx = begin; idx < end; ++idx) {
        decode(idx, ring.size(), w.value[first]);
        visit(w, 1, mpz_class(1));
      }
    });
    report.count = 0;
    for (const auto& w : workers) report.count += w.total;
  }
  const mpz_class size(ring.size());
  if (report.expected_dimension >= 0) {
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), size.get_mpz_t(), static_cast<unsigned long>(report.expected_dimension));
    report.normalized = mpq_class(report.count, den);
  } else {
    mpz_class num;
    mpz_pow_ui(num.get_mpz_t(), size.get_mpz_t(), static_cast<unsigned long>(-report.expected_dimension));
    report.normalized = mpq_class(report.count * num);
  }
  report.normalized.canonicalize();
  return report;
}

mpz_class count_graph_variety_naive(const GraphVarietyInstance& inst, std::uint64_t budget) {
  inst.validate();
  const LocalRing ring(inst.ring);
  std::uint64_t dims = 0;
  for (unsigned d : inst.dim_w) dims += d;
  const std::uint64_t total = saturating_pow(ring.size(), dims);
  if (total > budget) throw SizeLimitExceeded("naive point count exceeds budget", total);
  const std::size_t n = inst.graph.vertex_count();
  std::vector<RingElem> flat(dims);
  std::vector<std::vector<RingElem>> value(n);
  mpz_class count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode(idx, ring.size(), flat);
    std::size_t at = 0;
    for (Vertex v = 0; v < n; ++v) {
      value[v].assign(flat.begin() + at, flat.begin() + at + inst.dim_w[v]);
      at += inst.dim_w[v];
    }
    bool ok = true;
    for (const auto& e : inst.graph.edges())
      if (symplectic_form(ring, value[e.a], value[e.b]) != ring.zero()) {
        ok = false;
        break;
      }
    if (ok) ++count;
  }
  return count;
}

NormalizedSequence normalized_sequence(const Graph& g, unsigned dim_w, std::uint32_t p, unsigned r_max,
                                       const CountOptions& options) {
  NormalizedSequence out;
  for (unsigned r = 1; r <= r_max; ++r) {
    try {
      const auto inst = GraphVarietyInstance::uniform(g, dim_w, LocalRingSpec{RingKind::integer_quotient, p, r});
      out.values.push_back(count_graph_variety(inst, options).normalized);
    } catch (const SizeLimitExceeded&) {
      out.truncated = true;
      break;
    }
  }
  return out;
}

LocalRingSpec field_spec(std::uint64_t q) {
  if (!is_prime_power(q)) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  for (std::uint64_t x = q; x > 1; x /= p) ++k;
  if (k == 1) return LocalRingSpec{RingKind::integer_quotient, p, 1};
  return LocalRingSpec{RingKind::galois_field, p, k};
}

std::vector<LangWeilRow> langweil_report(const std::vector<std::uint64_t>& qs, unsigned n,
                                         const ComputeOptions& options) {
  if (n < 2) throw InvalidArgument("n must be at least 2");
  std::vector<LangWeilRow> rows;
  for (auto q : qs) {
    LangWeilRow row;
    row.q = q;
    row.field = field_spec(q);
    row.order = projected_sl_order(2, row.field);
    try {
      row.zeta = sl_zeta(2, row.field, 2 * n - 2, options);
      row.deviation = row.zeta - 1;
      row.computed = true;
    } catch (const SizeLimitExceeded& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace repzeta
