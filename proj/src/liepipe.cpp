#include "repzeta/liepipe.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "repzeta/errors.hpp"

namespace repzeta {

namespace {

constexpr std::size_t kListedDifferences = 8;

mpz_class ipow(unsigned long base, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

unsigned absdiff(unsigned a, unsigned b) { return a > b ? a - b : b - a; }

std::string pair_label(char open, unsigned i, unsigned j, char close, const char* suffix = "") {
  return std::string(1, open) + std::to_string(i) + "," + std::to_string(j) + close + suffix;
}

// Index helpers; all arguments are 1-based.
struct SlIndex {
  unsigned d;
  std::uint32_t operator()(unsigned i, unsigned j) const { return (i - 1) * d + (j - 1); }
  bool valid(unsigned i, unsigned j) const { return !(i == d && j == d); }
  std::size_t size() const { return std::size_t{d} * d - 1; }
};

struct SoIndex {
  unsigned d;
  std::uint32_t operator()(unsigned i, unsigned j) const {
    if (i > j) std::swap(i, j);
    // pairs {a < b} in lexicographic order
    return static_cast<std::uint32_t>((i - 1) * (2 * d - i) / 2 + (j - i - 1));
  }
  std::size_t size() const { return std::size_t{d} * (d - 1) / 2; }
};

struct SpIndex {
  unsigned d;
  std::size_t multisets() const { return std::size_t{d} * (d + 1) / 2; }
  std::uint32_t pair(unsigned i, unsigned j) const { return (i - 1) * d + (j - 1); }  // I_0, and (d,d) is I_1
  std::uint32_t ms(unsigned i, unsigned j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::uint32_t>((i - 1) * (2 * d - i + 2) / 2 + (j - i));
  }
  std::uint32_t minus(unsigned i, unsigned j) const { return static_cast<std::uint32_t>(d * d + ms(i, j)); }
  std::uint32_t plus(unsigned i, unsigned j) const {
    return static_cast<std::uint32_t>(d * d + multisets() + ms(i, j));
  }
  std::size_t size() const { return std::size_t{d} * d + 2 * multisets(); }
  bool in_i0(std::uint32_t v) const { return v + 1 < d * d; }
  bool in_i2(std::uint32_t v) const { return v >= d * d && v < d * d + multisets(); }
  bool in_i23(std::uint32_t v) const { return v >= d * d; }
};

std::string triple_label(const Triple& t, const std::vector<std::string>& labels) {
  return "({" + labels[t.a] + "," + labels[t.b] + "}," + labels[t.out] + ")";
}

std::string digest(const std::vector<Triple>& triples) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    for (int k = 0; k < 8; ++k) {
      h ^= (x >> (8 * k)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& t : triples) {
    mix(t.a);
    mix(t.b);
    mix(t.out);
  }
  std::ostringstream os;
  os << std::hex << h << ":" << std::dec << triples.size();
  return os.str();
}

std::vector<Triple> edges_as_triples(const Graph& g) {
  std::vector<Triple> out;
  for (const auto& e : g.edges()) out.push_back({e.a, e.b, 0});
  return out;
}

StageCheck compare_stage(const std::string& name, const Polygraph& computed, const Polygraph& closed,
                         const std::vector<std::string>& labels) {
  StageCheck s;
  s.name = name;
  s.computed = computed.triples().size();
  s.closed_form = closed.triples().size();
  std::vector<Triple> missing, extra;
  std::set_difference(closed.triples().begin(), closed.triples().end(), computed.triples().begin(),
                      computed.triples().end(), std::back_inserter(missing));
  std::set_difference(computed.triples().begin(), computed.triples().end(), closed.triples().begin(),
                      closed.triples().end(), std::back_inserter(extra));
  s.missing_count = missing.size();
  s.extra_count = extra.size();
  for (std::size_t k = 0; k < std::min(kListedDifferences, missing.size()); ++k)
    s.missing.push_back(triple_label(missing[k], labels));
  for (std::size_t k = 0; k < std::min(kListedDifferences, extra.size()); ++k)
    s.extra.push_back(triple_label(extra[k], labels));
  s.matches = missing.empty() && extra.empty();
  return s;
}

void record(PipelineReport& r, StageCheck s) {
  if (!s.matches && !s.exempt) {
    std::ostringstream os;
    os << s.name << ": " << s.missing_count << " closed-form triple(s) not computed, " << s.extra_count
       << " computed triple(s) outside the closed form";
    r.discrepancies.push_back(os.str());
  }
  r.stages.push_back(std::move(s));
}

bool is_comb(const std::vector<Edge>& component, const std::vector<unsigned>& degree) {
  std::map<Vertex, unsigned> spine_neighbours;
  for (const auto& e : component) {
    if (degree[e.a] >= 2 && degree[e.b] >= 2) {
      ++spine_neighbours[e.a];
      ++spine_neighbours[e.b];
    }
  }
  for (const auto& [v, k] : spine_neighbours)
    if (k > 2) return false;
  return true;
}

ForestCheck check_forest(const std::string& name, const Graph& g) {
  ForestCheck f;
  f.name = name;
  f.edges = g.edges().size();
  const auto info = forest_check(g);
  f.is_forest = info.is_forest;
  f.max_degree = info.max_degree;
  const auto comps = edge_components(g);
  f.components = comps.size();
  const auto degree = g.degrees();
  f.combs = f.is_forest && f.max_degree <= 3 &&
            std::all_of(comps.begin(), comps.end(), [&](const auto& c) { return is_comb(c, degree); });
  return f;
}

void record_forest(PipelineReport& r, ForestCheck f) {
  if (!f.passes()) {
    std::ostringstream os;
    os << f.name << ": " << (f.is_forest ? "forest" : "not a forest") << ", max degree " << f.max_degree;
    r.discrepancies.push_back(os.str());
  }
  r.forests.push_back(std::move(f));
}

Polygraph make_polygraph(std::size_t n, std::vector<Triple> triples) { return Polygraph(n, n, std::move(triples)); }

// Triples of the level-m copy, projected back to I.
Polygraph level_part(const Polygraph& p, std::size_t levels, std::size_t m, std::size_t n) {
  std::vector<Triple> out;
  for (const auto& t : p.triples())
    if (t.a % levels == m) out.push_back(make_triple(t.a / levels, t.b / levels, t.out));
  return make_polygraph(n, std::move(out));
}

}  // namespace

std::string to_string(LieType t) {
  switch (t) {
    case LieType::sl: return "sl";
    case LieType::so: return "so";
    case LieType::sp: return "sp";
  }
  return "?";
}

LieType parse_lie_type(const std::string& s) {
  if (s == "sl") return LieType::sl;
  if (s == "so") return LieType::so;
  if (s == "sp") return LieType::sp;
  throw InvalidArgument("unknown Lie type '" + s + "' (expected sl, so or sp)");
}

LieBasis lie_basis(LieType type, unsigned d) {
  LieBasis b;
  b.type = type;
  b.d = d;
  switch (type) {
    case LieType::sl: {
      if (d < 2) throw InvalidArgument("sl_d needs d >= 2");
      b.matrix_size = d;
      const SlIndex idx{d};
      for (unsigned i = 1; i <= d; ++i)
        for (unsigned j = 1; j <= d; ++j) {
          if (!idx.valid(i, j)) continue;
          b.labels.push_back(pair_label('(', i, j, ')'));
          SparseMatrix m;
          if (i != j) {
            m.entries.push_back({i - 1, j - 1, 1});
          } else {
            // e'_ii - I/d, scaled by d
            m.den = d;
            for (unsigned k = 1; k <= d; ++k)
              m.entries.push_back({k - 1, k - 1, (k == i ? static_cast<std::int64_t>(d) : 0) - 1});
          }
          b.basis.push_back(std::move(m));
          b.coordinates.push_back({{{i - 1, j - 1, mpq_class(1)}}});
        }
      break;
    }
    case LieType::so: {
      if (d < 3) throw InvalidArgument("so_d needs d >= 3");
      b.matrix_size = d;
      for (unsigned i = 1; i <= d; ++i)
        for (unsigned j = i + 1; j <= d; ++j) {
          b.labels.push_back(pair_label('{', i, j, '}'));
          // e'_{ji} - e'_{ij}: larger index first
          b.basis.push_back({1, {{j - 1, i - 1, 1}, {i - 1, j - 1, -1}}});
          b.coordinates.push_back({{{j - 1, i - 1, mpq_class(1)}}});
        }
      break;
    }
    case LieType::sp: {
      if (d < 1) throw InvalidArgument("sp_2d needs d >= 1");
      b.matrix_size = 2 * d;
      for (unsigned i = 1; i <= d; ++i)
        for (unsigned j = 1; j <= d; ++j) {
          b.labels.push_back(pair_label('(', i, j, ')'));
          SparseMatrix m;
          Functional f;
          if (i == d && j == d) {
            // e^0 = I, coordinate tr A
            for (unsigned k = 0; k < d; ++k) {
              m.entries.push_back({k, k, 1});
              m.entries.push_back({d + k, d + k, -1});
              f.terms.push_back({k, k, mpq_class(1)});
            }
          } else if (i != j) {
            m.entries.push_back({i - 1, j - 1, 1});
            m.entries.push_back({d + j - 1, d + i - 1, -1});
            f.terms.push_back({i - 1, j - 1, mpq_class(1)});
          } else {
            m.den = d;
            for (unsigned k = 1; k <= d; ++k) {
              const std::int64_t v = (k == i ? static_cast<std::int64_t>(d) : 0) - 1;
              m.entries.push_back({k - 1, k - 1, v});
              m.entries.push_back({d + k - 1, d + k - 1, -v});
            }
            f.terms.push_back({i - 1, i - 1, mpq_class(1)});
          }
          b.basis.push_back(std::move(m));
          b.coordinates.push_back(std::move(f));
        }
      for (int sign : {-1, 1}) {
        for (unsigned i = 1; i <= d; ++i)
          for (unsigned j = i; j <= d; ++j) {
            b.labels.push_back(pair_label('[', i, j, ']', sign < 0 ? "-" : "+"));
            SparseMatrix m;
            // B block (top right) for -1, C block (bottom left) for +1
            const unsigned ro = sign < 0 ? 0 : d, co = sign < 0 ? d : 0;
            if (i == j) {
              m.entries.push_back({ro + i - 1, co + i - 1, 2});
            } else {
              m.entries.push_back({ro + i - 1, co + j - 1, 1});
              m.entries.push_back({ro + j - 1, co + i - 1, 1});
            }
            b.basis.push_back(std::move(m));
            b.coordinates.push_back({{{ro + i - 1, co + j - 1, i == j ? mpq_class(1, 2) : mpq_class(1)}}});
          }
      }
      break;
    }
  }
  return b;
}

namespace {

struct BracketEngine {
  const LieBasis& b;
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, mpq_class>>> readers;

  explicit BracketEngine(const LieBasis& basis) : b(basis) {
    for (std::uint32_t l = 0; l < b.coordinates.size(); ++l)
      for (const auto& t : b.coordinates[l].terms) readers[key(t.row, t.col)].emplace_back(l, t.coeff);
  }
  std::uint64_t key(std::uint32_t r, std::uint32_t c) const { return std::uint64_t{r} * b.matrix_size + c; }

  // Coordinates of [e_i, e_j], sorted by coordinate index.
  std::vector<std::pair<std::uint32_t, mpq_class>> operator()(std::uint32_t i, std::uint32_t j) const {
    const auto& x = b.basis[i];
    const auto& y = b.basis[j];
    std::vector<std::pair<std::uint64_t, std::int64_t>> prod;
    for (const auto& p : x.entries)
      for (const auto& q : y.entries)
        if (p.col == q.row) prod.emplace_back(key(p.row, q.col), p.num * q.num);
    for (const auto& q : y.entries)
      for (const auto& p : x.entries)
        if (q.col == p.row) prod.emplace_back(key(q.row, p.col), -q.num * p.num);
    if (prod.empty()) return {};
    std::sort(prod.begin(), prod.end());
    std::map<std::uint32_t, mpq_class> values;
    const mpz_class den = mpz_class(static_cast<long>(x.den)) * static_cast<long>(y.den);
    for (std::size_t s = 0; s < prod.size();) {
      std::int64_t total = 0;
      std::size_t t = s;
      for (; t < prod.size() && prod[t].first == prod[s].first; ++t) total += prod[t].second;
      if (total != 0) {
        const auto it = readers.find(prod[s].first);
        if (it != readers.end())
          for (const auto& [l, coeff] : it->second) values[l] += coeff * mpq_class(mpz_class(static_cast<long>(total)), den);
      }
      s = t;
    }
    std::vector<std::pair<std::uint32_t, mpq_class>> out;
    for (auto& [l, v] : values) {
      v.canonicalize();
      if (v != 0) out.emplace_back(l, v);
    }
    return out;
  }
};

}  // namespace

std::vector<std::pair<std::uint32_t, mpq_class>> bracket_coordinates(const LieBasis& b, std::uint32_t i,
                                                                     std::uint32_t j) {
  return BracketEngine(b)(i, j);
}

std::vector<StructureConstant> structure_constants(const LieBasis& b) {
  const BracketEngine bracket(b);
  std::vector<StructureConstant> out;
  const auto n = static_cast<std::uint32_t>(b.basis.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      for (auto& [l, v] : bracket(i, j)) out.push_back({i, j, l, std::move(v)});
  return out;
}

Polygraph structure_polygraph(const LieBasis& b) {
  std::vector<Triple> s;
  for (const auto& c : structure_constants(b)) s.push_back({c.i, c.j, c.l});
  return make_polygraph(b.basis.size(), std::move(s));
}

Polygraph sl_closed_form_s0(unsigned d) {
  const SlIndex idx{d};
  std::vector<Triple> s;
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j)
      for (unsigned l = 1; l <= d; ++l)
        if (idx.valid(i, j) && idx.valid(j, l) && idx.valid(i, l) && idx(i, j) != idx(j, l))
          s.push_back(make_triple(idx(i, j), idx(j, l), idx(i, l)));
  return make_polygraph(idx.size(), std::move(s));
}

namespace {

template <class Pred>
Polygraph sl_closed_form(unsigned d, Pred keep) {
  const SlIndex idx{d};
  std::vector<Triple> s;
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j)
      for (unsigned l = 1; l <= d; ++l)
        if (idx.valid(i, j) && idx.valid(j, l) && idx.valid(i, l) && idx(i, j) != idx(j, l) && keep(i, j, l))
          s.push_back(make_triple(idx(i, j), idx(j, l), idx(i, l)));
  return make_polygraph(idx.size(), std::move(s));
}

// ({ {i,j}, {j,l} }, {i,l}) over distinct i, j, l
template <class Pred>
Polygraph so_closed_form(unsigned d, Pred keep) {
  const SoIndex idx{d};
  std::vector<Triple> s;
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j)
      for (unsigned l = 1; l <= d; ++l)
        if (i != j && j != l && i != l && keep(i, j, l)) s.push_back(make_triple(idx(i, j), idx(j, l), idx(i, l)));
  return make_polygraph(idx.size(), std::move(s));
}

// ({(i,j), [j,l]-}, [i,l]-) with (i,j) in I_0
template <class Pred>
Polygraph sp_s3_form(unsigned d, Pred keep) {
  const SpIndex idx{d};
  std::vector<Triple> s;
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j)
      for (unsigned l = 1; l <= d; ++l)
        if (!(i == d && j == d) && keep(i, j, l)) s.push_back(make_triple(idx.pair(i, j), idx.minus(j, l), idx.minus(i, l)));
  return make_polygraph(idx.size(), std::move(s));
}

Polygraph union_of(std::initializer_list<const Polygraph*> parts) {
  std::vector<Triple> all;
  std::size_t n = 0;
  for (const auto* p : parts) {
    n = p->vertex_count();
    all.insert(all.end(), p->triples().begin(), p->triples().end());
  }
  return make_polygraph(n, std::move(all));
}

Polygraph intersection_of(const Polygraph& a, const Polygraph& b) {
  std::vector<Triple> out;
  std::set_intersection(a.triples().begin(), a.triples().end(), b.triples().begin(), b.triples().end(),
                        std::back_inserter(out));
  return make_polygraph(a.vertex_count(), std::move(out));
}

void record_attached(PipelineReport& r, const std::string& name, const GraphReading& reading,
                     std::size_t empty_outputs, std::size_t edges) {
  StageCheck s;
  s.name = name;
  s.computed = edges;
  s.closed_form = edges;
  s.matches = empty_outputs == 0 && reading.shared_outputs.empty() && reading.repeated_pairs == 0;
  std::ostringstream os;
  os << empty_outputs << " output(s) without a triple, " << reading.shared_outputs.size()
     << " output(s) with several triples, " << reading.repeated_pairs << " repeated pair(s)";
  s.note = os.str();
  if (!s.matches) r.discrepancies.push_back(name + ": " + s.note);
  r.stages.push_back(std::move(s));
}

void colour_and_check(PipelineReport& r, const Graph& g3, const MultiWeight& w3, const std::string& prefix,
                      const std::vector<std::string>& labels) {
  r.terminal = g3;
  r.terminal_labels = labels;
  try {
    r.terminal_colors = edge_colors(g3, w3);
  } catch (const NonUniqueMaximum& e) {
    r.discrepancies.push_back(std::string("colouring: ") + e.what());
    r.terminal_colors.clear();
    return;
  }
  const auto parts = color_split(g3, w3);
  for (std::size_t m = 0; m < parts.size(); ++m) {
    r.digests.emplace_back(prefix + std::to_string(m), digest(edges_as_triples(parts[m])));
    record_forest(r, check_forest(prefix + std::to_string(m), parts[m]));
  }
}

}  // namespace

PipelineReport pipeline_sl(unsigned d) {
  PipelineReport r;
  r.type = LieType::sl;
  r.d = d;
  const auto basis = lie_basis(LieType::sl, d);
  const SlIndex idx{d};
  const auto n = idx.size();
  const auto& labels = basis.labels;

  const auto g0 = structure_polygraph(basis);
  r.digests.emplace_back("Gamma_0", digest(g0.triples()));
  record(r, compare_stage("S_0", g0, sl_closed_form_s0(d), labels));

  ScalarWeight w0(n), w1(n);
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j)
      if (idx.valid(i, j)) {
        w0[idx(i, j)] = -ipow(3, absdiff(i, j));
        w1[idx(i, j)] = i;
      }
  const auto g1 = gr_w(g0, w0);
  r.digests.emplace_back("Gamma_1", digest(g1.triples()));
  // |j - (i+l)/2| < 1 + delta_{il}
  record(r, compare_stage("S_1", g1, sl_closed_form(d, [](unsigned i, unsigned j, unsigned l) {
                            return absdiff(2 * j, i + l) < 2 * (1 + (i == l ? 1u : 0u));
                          }),
                          labels));
  const auto g2 = gr_w(g1, w1);
  r.digests.emplace_back("Gamma_2", digest(g2.triples()));
  // j = ceil((i+l)/2) + delta_{il}
  record(r, compare_stage("S_2", g2, sl_closed_form(d, [](unsigned i, unsigned j, unsigned l) {
                            return j == (i + l + 1) / 2 + (i == l ? 1u : 0u);
                          }),
                          labels));
  const auto reading = read_as_graph(g2);
  record_attached(r, "Gamma_2 = attach(Gamma_3)", reading, reading.empty_outputs.size(), reading.graph.edges().size());
  const Graph& g3 = reading.graph;

  // w_3 scaled by 5 so that the entry 3 * 5^{|i-j|-1} stays integral on the diagonal
  MultiWeight w3(n, std::vector<mpz_class>(3, 0));
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j) {
      if (!idx.valid(i, j)) continue;
      const int t = static_cast<int>(i) - static_cast<int>(j);
      const int s = t >= 0 ? 1 : -1;  // sign(t + 1/2)
      const auto mod3 = [](int x) { return static_cast<std::size_t>(((x % 3) + 3) % 3); };
      const auto scale = ipow(5, absdiff(i, j));
      w3[idx(i, j)][mod3(t)] = 5 * scale;
      w3[idx(i, j)][mod3(t - s)] = 3 * scale;
    }
  colour_and_check(r, g3, w3, "Gamma_4^", labels);
  return r;
}

PipelineReport pipeline_so(unsigned d) {
  PipelineReport r;
  r.type = LieType::so;
  r.d = d;
  const auto basis = lie_basis(LieType::so, d);
  const SoIndex idx{d};
  const auto n = idx.size();
  const auto& labels = basis.labels;
  if (d < 4) r.notes.push_back("so_3 is degenerate for this pipeline; stages are reported as computed");

  const auto g0 = structure_polygraph(basis);
  r.digests.emplace_back("Gamma_0", digest(g0.triples()));
  record(r, compare_stage("S_0", g0, so_closed_form(d, [](unsigned, unsigned, unsigned) { return true; }), labels));

  ScalarWeight w0(n), w1(n);
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = i + 1; j <= d; ++j) {
      w0[idx(i, j)] = -ipow(3, j - i);
      w1[idx(i, j)] = j;
    }
  const auto g1 = gr_w(g0, w0);
  r.digests.emplace_back("Gamma_1", digest(g1.triples()));
  // |j - (i+l)/2| < 1 + delta_{|i-l|,1}
  record(r, compare_stage("S_1", g1, so_closed_form(d, [](unsigned i, unsigned j, unsigned l) {
                            return absdiff(2 * j, i + l) < 2 * (1 + (absdiff(i, l) == 1 ? 1u : 0u));
                          }),
                          labels));
  const auto g2 = gr_w(g1, w1);
  r.digests.emplace_back("Gamma_2", digest(g2.triples()));
  record(r, compare_stage("S_2", g2, so_closed_form(d, [d](unsigned i, unsigned j, unsigned l) {
                            const unsigned lo = std::min(i, l), hi = std::max(i, l);
                            if (lo == d - 1 && hi == d) return j == d - 2;
                            if (hi - lo == 1) return j == hi + 1;
                            return j == (i + l + 1) / 2;
                          }),
                          labels));
  const auto reading = read_as_graph(g2);
  record_attached(r, "Gamma_2 = attach(Gamma_3)", reading, reading.empty_outputs.size(), reading.graph.edges().size());

  MultiWeight w3(n, std::vector<mpz_class>(3, 0));
  const auto top = ipow(3, d);
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = i + 1; j <= d; ++j) {
      auto& w = w3[idx(i, j)];
      const unsigned gap = j - i;
      const mpz_class corner = (i + 2 == d) ? mpz_class(2 * ipow(3, d - 1)) : mpz_class(0);
      if (gap == 1) {
        w[1] = top + 2 * j;
        w[2] = corner;
      } else if (gap == 2) {
        w[0] = top + 2 * j - 1;
        w[2] = corner;
      } else if (gap % 2 == 1) {
        w[2] = ipow(3, d - gap);
      } else {
        w[0] = ipow(3, d - gap);
      }
    }
  colour_and_check(r, reading.graph, w3, "Gamma_4^", labels);
  return r;
}

PipelineReport pipeline_sp(unsigned d) {
  PipelineReport r;
  r.type = LieType::sp;
  r.d = d;
  r.notes.push_back("Gamma_8 edge rule: the Kronecker delta written with index n is read as delta_{i,d}");
  r.notes.push_back("S_0^6 has no published formula; it is taken to be the residual of S_0 and only its containment is checked");
  const auto basis = lie_basis(LieType::sp, d);
  const SpIndex idx{d};
  const auto n = idx.size();
  const auto& labels = basis.labels;
  auto poly = [n](std::vector<Triple> t) { return make_polygraph(n, std::move(t)); };

  // closed forms S_0^1 .. S_0^5
  std::vector<Triple> t1, t2, t3, t4, t5;
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j)
      for (unsigned l = 1; l <= d; ++l) {
        const bool ij = !(i == d && j == d);
        if (ij && !(j == d && l == d) && !(i == d && l == d) && idx.pair(i, j) != idx.pair(j, l))
          t1.push_back(make_triple(idx.pair(i, j), idx.pair(j, l), idx.pair(i, l)));
        if (ij) {
          t3.push_back(make_triple(idx.pair(i, j), idx.minus(j, l), idx.minus(i, l)));
          t4.push_back(make_triple(idx.pair(i, j), idx.plus(i, l), idx.plus(j, l)));
        }
      }
  const std::uint32_t dd = idx.pair(d, d);
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = i; j <= d; ++j) {
      t2.push_back(make_triple(idx.plus(i, j), idx.minus(i, j), dd));
      t5.push_back(make_triple(dd, idx.minus(i, j), idx.minus(i, j)));
      t5.push_back(make_triple(dd, idx.plus(i, j), idx.plus(i, j)));
    }
  const auto s1 = poly(t1), s2 = poly(t2), s3 = poly(t3), s4 = poly(t4), s5 = poly(t5);

  const auto g0 = structure_polygraph(basis);
  r.digests.emplace_back("Gamma_0", digest(g0.triples()));
  const Polygraph* closed[] = {&s1, &s2, &s3, &s4, &s5};
  for (int k = 0; k < 5; ++k) {
    auto s = compare_stage("S_0^" + std::to_string(k + 1), intersection_of(g0, *closed[k]), *closed[k], labels);
    s.computed = s.closed_form - s.missing_count;
    record(r, std::move(s));
  }
  {
    const auto known = union_of({&s1, &s2, &s3, &s4, &s5});
    std::vector<Triple> residual, outside;
    std::set_difference(g0.triples().begin(), g0.triples().end(), known.triples().begin(), known.triples().end(),
                        std::back_inserter(residual));
    for (const auto& t : residual)
      if (!(idx.in_i23(t.a) && idx.in_i23(t.b) && idx.in_i0(t.out))) outside.push_back(t);
    StageCheck s;
    s.name = "S_0^6 within (I_23)^(2) x I_0";
    s.computed = residual.size();
    s.closed_form = residual.size() - outside.size();
    s.extra_count = outside.size();
    for (std::size_t k = 0; k < std::min(kListedDifferences, outside.size()); ++k)
      s.extra.push_back(triple_label(outside[k], labels));
    s.matches = outside.empty();
    s.note = "residual S_0^6 has " + std::to_string(residual.size()) + " triples";
    record(r, std::move(s));
  }

  // w_0 = indicator of I_0
  ScalarWeight w0(n, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    if (idx.in_i0(v)) w0[v] = 1;
  const auto g1 = gr_w(g0, w0);
  r.digests.emplace_back("Gamma_1", digest(g1.triples()));
  record(r, compare_stage("S_1", g1, union_of({&s1, &s2, &s3, &s4}), labels));

  // level splitting over M = {0,1,2,3}
  MultiWeight w2(n, std::vector<mpz_class>(4, 0));
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!idx.in_i23(v)) {
      w2[v][0] = 1;
    } else if (idx.in_i2(v)) {
      w2[v][1] = 3;
      w2[v][3] = 2;
    } else {
      w2[v][2] = 3;
      w2[v][3] = 2;
    }
  }
  const auto g3 = gr_w(level_split(g1, 4), flatten_levels(w2));
  r.digests.emplace_back("Gamma_3", digest(g3.triples()));
  const Polygraph parts[4] = {level_part(g3, 4, 0, n), level_part(g3, 4, 3, n), level_part(g3, 4, 1, n),
                              level_part(g3, 4, 2, n)};
  for (int k = 0; k < 4; ++k)
    record(r, compare_stage("Gamma_4^" + std::to_string(k + 1), parts[k], *closed[k], labels));
  {
    // (i,j) -> (j,i), [j,l]- -> [j,l]+ carries Gamma_4^3 onto Gamma_4^4
    std::vector<Triple> image;
    for (const auto& t : parts[2].triples()) {
      auto map = [&](std::uint32_t v) -> std::uint32_t {
        if (idx.in_i2(v)) return static_cast<std::uint32_t>(v + idx.multisets());
        if (idx.in_i0(v)) return (v % d) * d + v / d;
        return v;
      };
      image.push_back(make_triple(map(t.a), map(t.b), map(t.out)));
    }
    record(r, compare_stage("Gamma_4^3 ~ Gamma_4^4", poly(image), parts[3], labels));
  }

  const Polygraph& g5 = parts[2];
  ScalarWeight w5(n, 0), w6(n, 0);
  for (unsigned i = 1; i <= d; ++i)
    for (unsigned j = 1; j <= d; ++j) {
      if (!(i == d && j == d)) {
        w5[idx.pair(i, j)] = -ipow(3, absdiff(i, j));
        w6[idx.pair(i, j)] = -static_cast<long>(i + j);
      }
      if (i <= j) w5[idx.minus(i, j)] = -ipow(3, j - i);
    }
  const auto g6 = gr_w(g5, w5);
  r.digests.emplace_back("Gamma_6", digest(g6.triples()));
  // |j - (i+l)/2| < 1 + delta_{i,d} delta_{l,d}
  record(r, compare_stage("S_6", g6, sp_s3_form(d, [d](unsigned i, unsigned j, unsigned l) {
                            return absdiff(2 * j, i + l) < 2 * (1 + (i == d && l == d ? 1u : 0u));
                          }),
                          labels));
  const auto g7 = gr_w(g6, w6);
  r.digests.emplace_back("Gamma_7", digest(g7.triples()));
  // j = floor((i+l)/2) - delta_{i,d} delta_{l,d}, i <= l
  record(r, compare_stage("S_7", g7, sp_s3_form(d, [d](unsigned i, unsigned j, unsigned l) {
                            return i <= l && j + (i == d && l == d ? 1u : 0u) == (i + l) / 2;
                          }),
                          labels));
  const auto reading = read_as_graph(g7);
  std::size_t empty = 0;
  for (auto j : reading.empty_outputs)
    if (idx.in_i2(j)) ++empty;
  record_attached(r, "Gamma_7 = attach(Gamma_8)", reading, empty, reading.graph.edges().size());
  const Graph& g8 = reading.graph;
  r.digests.emplace_back("Gamma_8", digest(edges_as_triples(g8)));
  record_forest(r, check_forest("Gamma_8", g8));
  r.terminal = g8;
  r.terminal_labels = labels;
  return r;
}

PipelineReport run_pipeline(LieType type, unsigned d) {
  switch (type) {
    case LieType::sl: return pipeline_sl(d);
    case LieType::so: return pipeline_so(d);
    case LieType::sp: return pipeline_sp(d);
  }
  throw InvalidArgument("unknown Lie type");
}

std::string replay_pipeline(const PipelineReport& report) {
  const auto again = run_pipeline(report.type, report.d);
  if (again.digests != report.digests) return "stage digests differ on replay";
  if (again.discrepancies != report.discrepancies) return "discrepancy list differs on replay";
  return {};
}

std::optional<unsigned> exceptional_dimension(const std::string& name) {
  static const std::map<std::string, unsigned> dims{{"g2", 14}, {"f4", 52}, {"e6", 78}, {"e7", 133}, {"e8", 248}};
  const auto it = dims.find(name);
  if (it == dims.end()) return std::nullopt;
  return it->second;
}

std::uint64_t bound_root(const std::string& simple_type, unsigned rank_or_dim) {
  std::string t = simple_type;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "sl" || t == "so" || t == "sp") {
    const unsigned minimum = t == "sl" ? 2 : (t == "so" ? 3 : 1);
    if (rank_or_dim != 0 && rank_or_dim < minimum)
      throw InvalidArgument(t + " needs parameter at least " + std::to_string(minimum));
    return t == "sp" ? 40 : 22;
  }
  if (const auto dim = exceptional_dimension(t)) return 3ull * *dim + 1;
  throw InvalidArgument("unknown simple type '" + simple_type + "'");
}

std::uint64_t bound_root_group(const std::vector<std::string>& factors) {
  if (factors.empty()) throw InvalidArgument("at least one simple factor is required");
  std::uint64_t best = 0;
  for (const auto& f : factors) {
    const auto colon = f.find(':');
    unsigned param = 0;
    if (colon != std::string::npos) {
      const auto tail = f.substr(colon + 1);
      if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InvalidArgument("bad factor '" + f + "'");
      param = static_cast<unsigned>(std::stoul(tail));
    }
    best = std::max(best, bound_root(f.substr(0, colon), param));
  }
  return best;
}

GenusBound min_genus(std::uint64_t b) {
  if (b == 0) throw InvalidArgument("B must be positive");
  GenusBound g;
  g.headline = (b + 1) / 2 + 1;
  // least n with 2n >= b + 2
  g.strict = (b + 2 + 1) / 2;
  g.diverges = g.headline != g.strict;
  return g;
}

}  // namespace repzeta
