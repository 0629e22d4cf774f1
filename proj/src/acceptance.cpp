#include "repzeta/acceptance.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "repzeta/charzeta.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/liepipe.hpp"
#include "repzeta/padicpush.hpp"
#include "repzeta/polygraph.hpp"
#include "repzeta/varcount.hpp"
#include "repzeta/wordmap.hpp"

namespace repzeta {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (failures.size() < 6) failures.push_back(what);
    }
  }
  std::string text() const {
    std::string out = detail.str();
    for (const auto& f : failures) out += (out.empty() ? "" : "; ") + std::string("FAILED ") + f;
    return out;
  }
};

struct NamedGroup {
  std::string label;
  std::function<FiniteGroup()> build;
};

std::vector<NamedGroup> frobenius_groups() {
  return {
      {"trivial", [] { return build_named("trivial"); }},
      {"S3", [] { return build_named("s3"); }},
      {"D4", [] { return build_named("d4"); }},
      {"Q8", [] { return build_named("q8"); }},
      {"SL2(F3)", [] { return build_sl(2, LocalRingSpec::parse("zmod:3^1")); }},
      {"SL2(F5)", [] { return build_sl(2, LocalRingSpec::parse("zmod:5^1")); }},
  };
}

ClassFunction fibers_for(const GroupAnalysis& g, unsigned n, const AcceptanceOptions& o) {
  auto f = fiber_counts(g, n, o.threads);
  if (o.inject_fiber_fault) f[0] += 1;  // class 0 is the identity
  return f;
}

std::string q(const mpq_class& x) { return x.get_str(); }

void criterion_frobenius(Check& c, const AcceptanceOptions& o) {
  std::size_t brute = 0, congruences = 0;
  for (const auto& ng : frobenius_groups()) {
    const auto g = analyze_group(ng.build(), o.threads);
    const auto primes = dixon_primes(g.group.order(), g.conj.exponent, 3);
    for (unsigned n : {1u, 2u}) {
      const auto fibers = fibers_for(g, n, o);
      if (g.group.order() <= 50) {
        const auto per_element = fiber_counts_brute(g.group, n);
        bool same = true;
        for (Index x = 0; x < g.group.order(); ++x)
          same = same && fibers[g.conj.class_of[x]] == per_element[x];
        c.expect(same, ng.label + " n=" + std::to_string(n) + " convolution differs from enumeration");
        ++brute;
      }
      const auto rep = frobenius_identity_check(g, fibers, n, primes, o.seed);
      c.expect(rep.ok() && rep.primes.size() == 3,
               ng.label + " n=" + std::to_string(n) + " character-sum congruence fails");
      congruences += rep.checked;
    }
  }
  c.detail << brute << " brute-force comparisons, " << congruences << " congruences mod 3 primes";
}

void criterion_zeta(Check& c, const AcceptanceOptions& o) {
  std::size_t compared = 0;
  for (const auto& ng : frobenius_groups()) {
    const auto g = analyze_group(ng.build(), o.threads);
    const auto degrees = character_degrees(g.group, o.seed);
    for (unsigned n : {2u, 3u}) {
      const auto from_fibers = zeta_from_fibers(fibers_for(g, n, o), g.group.order(), n);
      const auto from_degrees = zeta_even(degrees, 2 * n - 2);
      c.expect(from_fibers == from_degrees, ng.label + " n=" + std::to_string(n) + ": " + q(from_fibers) +
                                                " from fibers vs " + q(from_degrees) + " from degrees");
      ++compared;
      if (n == 2 && ng.label == "S3") c.expect(from_fibers == mpq_class(9, 4), "zeta_S3(2) = " + q(from_fibers));
      if (n == 2 && ng.label == "SL2(F3)")
        c.expect(from_fibers == mpq_class(139, 36), "zeta_SL2(F3)(2) = " + q(from_fibers));
      if (n == 2 && (ng.label == "S3" || ng.label == "SL2(F3)")) c.detail << ng.label << ": " << q(from_fibers) << "; ";
    }
  }
  c.detail << compared << " dual-path comparisons";
}

void criterion_density(Check& c, const AcceptanceOptions& o) {
  ComputeOptions co;
  co.threads = o.threads;
  co.seed = o.seed;
  const auto profile = congruence_density_profile(2, LocalRingSpec::parse("zmod:2^4"), 2, co);
  c.expect(profile.size() == 5, "expected levels 0..4");
  if (profile.empty()) return;
  c.expect(profile[0].density == 1, "D_0 = " + q(profile[0].density));
  for (std::size_t i = 0; i < profile.size(); ++i) {
    c.expect(profile[i].density == profile[i].quotient_zeta,
             "D_" + std::to_string(i) + " = " + q(profile[i].density) + " but quotient zeta " + q(profile[i].quotient_zeta));
    if (i > 0) c.expect(profile[i].density >= profile[i - 1].density, "D_" + std::to_string(i) + " decreases");
  }
  c.detail << "D =";
  for (const auto& l : profile) c.detail << " " << q(l.density);
}

void criterion_stabilization(Check& c, const AcceptanceOptions& o) {
  ComputeOptions co;
  co.threads = o.threads;
  co.seed = o.seed;
  const std::uint32_t r_max = o.profile == Profile::full ? 5 : 4;
  const auto series = stabilization_series(2, RingKind::integer_quotient, 2, r_max, 2, co);
  c.expect(!series.truncated && series.rows.size() == r_max, "series truncated");
  std::vector<mpq_class> inc;
  for (const auto& row : series.rows)
    if (row.increment) inc.push_back(*row.increment);
  for (std::size_t i = 0; i < inc.size(); ++i)
    c.expect(inc[i] > 0, "increment " + std::to_string(i + 1) + " = " + q(inc[i]) + " not positive");
  c.expect(inc.size() >= 2 && inc.back() < inc.front(), "final increment not below the first");
  c.detail << "r=1.." << r_max << " zeta =";
  for (const auto& row : series.rows) c.detail << " " << q(row.zeta);
}

void criterion_crosschar(Check& c, const AcceptanceOptions& o) {
  ComputeOptions co;
  co.threads = o.threads;
  co.seed = o.seed;
  std::vector<std::uint32_t> ps{5};
  if (o.profile == Profile::full) ps.push_back(7);
  for (auto p : ps) {
    const auto rep = cross_char_compare(p, 2, 2, co);
    c.expect(rep.equal, "p=" + std::to_string(p) + ": " + q(rep.zeta_zmod) + " vs " + q(rep.zeta_tpoly));
    c.detail << "p=" << p << ": " << q(rep.zeta_zmod) << (rep.equal ? " = " : " != ") << q(rep.zeta_tpoly) << "; ";
  }
}

void criterion_langweil(Check& c, const AcceptanceOptions& o) {
  ComputeOptions co;
  co.threads = o.threads;
  co.seed = o.seed;
  const auto rows = langweil_report({5, 7, 9, 11, 13}, 2, co);
  for (const auto& r : rows) {
    c.expect(r.computed, "q=" + std::to_string(r.q) + ": " + r.error);
    c.expect(r.zeta > 1 && r.zeta < 2, "q=" + std::to_string(r.q) + ": " + q(r.zeta) + " outside (1, 2)");
    c.detail << "q=" << r.q << ": " << q(r.zeta) << "; ";
  }
  c.expect(rows.size() == 5 && rows.back().zeta < rows.front().zeta, "value at q=13 not below q=5");
}

void criterion_pipelines(Check& c, const AcceptanceOptions& o) {
  struct Range {
    LieType type;
    unsigned lo, hi, dot;
  };
  std::size_t failing = 0, total = 0;
  for (const Range& range : {Range{LieType::sl, 2, 40, 8}, Range{LieType::so, 4, 30, 8}, Range{LieType::sp, 2, 25, 7}}) {
    std::size_t bad = 0;
    std::string first;
    for (unsigned d = range.lo; d <= range.hi; ++d) {
      const auto r = run_pipeline(range.type, d);
      ++total;
      bool forests = true;
      for (const auto& f : r.forests) forests = forests && f.passes();
      if (!r.ok() || !forests || r.forests.empty()) {
        ++bad;
        if (first.empty())
          first = to_string(range.type) + " d=" + std::to_string(d) + ": " +
                  (r.discrepancies.empty() ? std::string("no forest stage") : r.discrepancies.front());
      }
      if (d == range.dot && !o.dot_dir.empty()) {
        std::filesystem::create_directories(o.dot_dir);
        const auto name = to_string(range.type) + "_d" + std::to_string(d);
        std::ofstream out(o.dot_dir / (name + ".dot"));
        out << dot_export(r.terminal, r.terminal_labels, r.terminal_colors, name);
        c.expect(static_cast<bool>(out), "could not write " + name + ".dot");
      }
    }
    c.detail << to_string(range.type) << " " << range.lo << ".." << range.hi << ": " << bad << " with discrepancies; ";
    c.expect(bad == 0, first);
    failing += bad;
  }
  c.detail << failing << "/" << total << " runs failing";
}

Graph random_tree(std::mt19937_64& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back(make_edge(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v));
  return Graph(n, edges);
}

void criterion_trees(Check& c, const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uint64_t worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto tree = random_tree(rng, std::uniform_int_distribution<std::size_t>(2, 40)(rng));
    const auto deg = tree.degrees();
    const unsigned top = *std::max_element(deg.begin(), deg.end());
    std::vector<Vertex> roots;
    for (Vertex v = 0; v < deg.size(); ++v)
      if (deg[v] < top || tree.edges().size() == 1) roots.push_back(v);
    const Vertex root = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
    const auto cert = tree_edge_reduction(tree, root);
    const auto replay = replay_certificate(cert);
    c.expect(replay.empty(), "trial " + std::to_string(trial) + ": " + replay);
    const std::uint64_t allowed = tree.edges().size() == 1 ? 2 : 4ull * (top - 1);
    c.expect(cert.dim_budget <= allowed, "trial " + std::to_string(trial) + ": budget " +
                                             std::to_string(cert.dim_budget) + " > " + std::to_string(allowed));
    worst = std::max<std::uint64_t>(worst, cert.dim_budget);
  }
  c.detail << "500 trees replayed, largest budget " << worst;
}

void criterion_constants(Check& c, const AcceptanceOptions&) {
  c.expect(bound_root("sl", 2) == 22, "B(sl)");
  c.expect(bound_root("so", 3) == 22, "B(so)");
  c.expect(bound_root("sp", 1) == 40, "B(sp)");
  c.expect(bound_root("e8") == 745, "B(E8)");
  c.expect(min_genus(745).headline == 374, "min_genus(745)");
  c.expect(min_genus(22).headline == 12, "min_genus(22)");
  c.detail << "B = 22/22/40/745, genus 374 and 12";
}

void criterion_pushforward(Check& c, const AcceptanceOptions&) {
  const auto suite = pushforward_suite();
  std::size_t agree = 0;
  for (const auto& s : suite) {
    const auto dp = annulus_masses(s, 12);
    bool same = true;
    for (unsigned r = 0; r <= 12; ++r) same = same && dp[r] == annulus_mass_enumerated(s, r, 12);
    c.expect(same, s.to_string() + ": DP differs from enumeration");
    const bool guaranteed = continuity_guaranteed(s).guaranteed;
    const auto seen = observed_behavior(density_series(s, 60));
    const bool match = guaranteed == (seen != SeriesBehavior::non_convergent);
    c.expect(match, s.to_string() + ": criterion " + (guaranteed ? "true" : "false") + " but series " + to_string(seen));
    if (match) ++agree;
  }
  const MonomialSpec id{{1}, {0}, 3}, sq{{2}, {1}, 3}, two{{1, 1}, {0, 1}, 3};
  c.expect(observed_behavior(density_series(id, 60)) == SeriesBehavior::constant &&
               density_series(id, 0)[0].average_density == 1,
           "identity map not constant density 1");
  c.expect(!continuity_guaranteed(sq).guaranteed &&
               observed_behavior(density_series(sq, 60)) == SeriesBehavior::non_convergent,
           "A=(2),B=(1) not oscillating with criterion false");
  const bool two_ok = continuity_guaranteed(two).guaranteed &&
                      observed_behavior(density_series(two, 60)) == SeriesBehavior::converging &&
                      limit_average_density(two).value == 1;
  c.expect(two_ok, "A=(1,1),B=(0,1) not converging to 1");
  c.detail << suite.size() << " specs, " << agree << " agree";
}

void criterion_pointcount(Check& c, const AcceptanceOptions& o) {
  const Graph edge(2, {make_edge(0, 1)});
  for (auto [text, expected] : {std::pair{"zmod:2^1", 10}, std::pair{"zmod:3^1", 33}}) {
    const auto inst = GraphVarietyInstance::uniform(edge, 2, LocalRingSpec::parse(text));
    const auto dfs = count_graph_variety(inst).count;
    const auto naive = count_graph_variety_naive(inst);
    c.expect(dfs == expected && naive == expected, std::string(text) + ": " + dfs.get_str() + " / " + naive.get_str());
  }
  std::mt19937_64 rng(o.seed);
  std::size_t same = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 3;
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        if (std::bernoulli_distribution(0.5)(rng)) edges.push_back(make_edge(a, b));
    const auto inst =
        GraphVarietyInstance::uniform(Graph(n, edges), 2, LocalRingSpec::parse(trial % 2 ? "zmod:3^1" : "zmod:2^2"));
    CountOptions shuffled;
    for (Vertex v = 0; v < n; ++v) shuffled.order.push_back(v);
    std::shuffle(shuffled.order.begin(), shuffled.order.end(), rng);
    const bool eq = count_graph_variety(inst).count == count_graph_variety(inst, shuffled).count;
    c.expect(eq, "instance " + std::to_string(trial) + " depends on the order");
    if (eq) ++same;
  }
  c.detail << "edge counts 10 and 33; " << same << "/50 instances order-independent";
}

struct Spec {
  const char* name;
  double limit;
  void (*run)(Check&, const AcceptanceOptions&);
};

const Spec kSpecs[kCriterionCount] = {
    {"Frobenius identity", 60, criterion_frobenius},
    {"zeta consistency", 30, criterion_zeta},
    {"congruence density monotonicity", 120, criterion_density},
    {"stabilization", 600, criterion_stabilization},
    {"cross-characteristic", 900, criterion_crosschar},
    {"Lang-Weil trend", 300, criterion_langweil},
    {"pipeline verification", 60, criterion_pipelines},
    {"tree reduction budget", 10, criterion_trees},
    {"constants", 1, criterion_constants},
    {"monomial pushforward", 10, criterion_pushforward},
    {"point counts", 60, criterion_pointcount},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("criterion id must be 1.." + std::to_string(kCriterionCount));
  const Spec& spec = kSpecs[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = spec.name;
  result.limit_seconds = spec.limit;
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    spec.run(check, options);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.expect(result.seconds <= spec.limit, "runtime above " + std::to_string(static_cast<int>(spec.limit)) + " s");
  result.passed = check.ok;
  result.detail = check.text();
  return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << (r.id < 10 ? " " : "") << r.id << " " << r.name << ": " << r.detail;
  return os.str();
}

}  // namespace repzeta
