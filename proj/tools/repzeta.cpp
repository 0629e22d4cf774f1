// Command-line front end. Exit codes: 0 ok, 1 discrepancies, 2 usage, 3 budget.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "repzeta/acceptance.hpp"
#include "repzeta/charzeta.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/liepipe.hpp"
#include "repzeta/modgroup.hpp"
#include "repzeta/padicpush.hpp"
#include "repzeta/parallel.hpp"
#include "repzeta/polygraph.hpp"
#include "repzeta/serialize.hpp"
#include "repzeta/varcount.hpp"
#include "repzeta/wordmap.hpp"

using namespace repzeta;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kDiscrepancy = 1, kUsage = 2, kBudget = 3;

struct Globals {
  bool json = false;
  bool csv = false;
  bool wall_time = false;
  std::string emit_dot;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::vector<std::string> argv;

  ComputeOptions compute() const {
    ComputeOptions o;
    if (budget) o.element_budget = *budget;
    o.threads = threads;
    o.seed = seed;
    return o;
  }
  RunManifest manifest(const std::string& sub) const {
    RunManifest m;
    m.subcommand = sub;
    m.argv = argv;
    m.seeds = {seed};
    return m;
  }
};

std::string q(const mpq_class& x) { return x.get_str(); }

void print_json(Json body, RunManifest m, std::chrono::steady_clock::time_point start, bool wall) {
  if (wall) m.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json out;
  out["manifest"] = to_json(m);
  for (auto& [k, v] : body.items()) out[k] = v;
  std::cout << out.dump(2) << "\n";
}

FiniteGroup make_group(const std::string& group, unsigned d, const std::string& ring, const Globals& g) {
  std::string name = group;
  if (name.rfind("named:", 0) == 0) return build_named(name.substr(6));
  if (name == "sl") {
    if (ring.empty()) throw InvalidArgument("--ring is required for sl");
    GroupOptions o;
    if (g.budget) o.element_budget = *g.budget;
    return build_sl(d, LocalRingSpec::parse(ring), o);
  }
  return build_named(name);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

unsigned to_uint(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: " + s);
  }
  if (used != s.size()) throw InvalidArgument("not a number: " + s);
  return static_cast<unsigned>(v);
}

// edge | path:n | cycle:n | complete:n | star:n | N:a-b,c-d,...
Graph parse_graph(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "edge") return Graph(2, {make_edge(0, 1)});
  if (colon == std::string::npos) throw InvalidArgument("graph spec needs a size: " + text);
  const std::string rest = text.substr(colon + 1);
  std::vector<Edge> edges;
  if (kind == "path" || kind == "cycle" || kind == "complete" || kind == "star") {
    const unsigned n = to_uint(rest);
    if (n < 2) throw InvalidArgument("graph needs at least 2 vertices");
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) {
        const bool keep = kind == "complete" || (kind == "star" && a == 0) || ((kind == "path" || kind == "cycle") && b == a + 1) ||
                          (kind == "cycle" && n > 2 && a == 0 && b == n - 1);
        if (keep) edges.push_back(make_edge(a, b));
      }
    return Graph(n, edges);
  }
  const unsigned n = to_uint(kind);
  for (const auto& pair : split(rest, ',')) {
    const auto dash = pair.find('-');
    if (dash == std::string::npos) throw InvalidArgument("edge must be a-b: " + pair);
    edges.push_back(make_edge(to_uint(pair.substr(0, dash)), to_uint(pair.substr(dash + 1))));
  }
  return Graph(n, edges);
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << text;
  if (!out) throw InvalidArgument("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  Globals g;
  for (int i = 0; i < argc; ++i) g.argv.emplace_back(argv[i]);

  CLI::App app{"Exact computations for representation zeta functions, polygraphs and p-adic pushforwards"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "JSON output with the run manifest");
  app.add_flag("--csv", g.csv, "CSV output (where tabular)");
  app.add_flag("--wall-time", g.wall_time, "record wall time in the manifest");
  app.add_option("--emit-dot", g.emit_dot, "directory for DOT files");
  app.add_option("--budget", g.budget, "element / enumeration budget");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

  std::string sub;
  auto command = [&](const std::string& name, const std::string& help) {
    return app.add_subcommand(name, help);
  };

  // group
  std::string family = "sl", ring, cache_dir;
  unsigned d = 2;
  auto* c_group = command("group", "build a group and its conjugacy classes");
  c_group->add_option("--family", family, "sl or a named group (s3, d4, q8, trivial, symmetric_n, dihedral_n)");
  c_group->add_option("--d", d, "matrix size");
  c_group->add_option("--ring", ring, "zmod:p^r, tpoly:p^r or gf:p^k");
  c_group->add_option("--cache-dir", cache_dir, "read or write the binary group cache here");

  // zeta
  std::string group = "sl";
  unsigned s = 2;
  auto* c_zeta = command("zeta", "zeta special value from character degrees");
  c_zeta->add_option("--group", group, "sl or named:NAME");
  c_zeta->add_option("--d", d, "matrix size");
  c_zeta->add_option("--ring", ring, "ring for sl");
  c_zeta->add_option("--s", s, "even argument")->check(CLI::Range(0u, 1000u));

  // frobcheck
  unsigned n = 2, prime_count = 3;
  auto* c_frob = command("frobcheck", "fiber counts against brute force and the character-sum congruence");
  c_frob->add_option("--group", group, "sl or named:NAME");
  c_frob->add_option("--d", d, "matrix size");
  c_frob->add_option("--ring", ring, "ring for sl");
  c_frob->add_option("--n", n, "genus")->check(CLI::Range(1u, 64u));
  c_frob->add_option("--primes", prime_count, "number of primes")->check(CLI::Range(1u, 32u));

  // stabilize
  std::uint32_t p = 2, rmax = 5, r = 2;
  auto* c_stab = command("stabilize", "zeta over the level-r rings, r = 1..rmax");
  c_stab->add_option("--family", family, "sl");
  c_stab->add_option("--kind", ring, "zmod or tpoly");
  c_stab->add_option("--d", d, "matrix size");
  c_stab->add_option("--p", p, "prime");
  c_stab->add_option("--rmax", rmax, "largest level");
  c_stab->add_option("--n", n, "genus")->check(CLI::Range(1u, 64u));

  // crosschar
  auto* c_cross = command("crosschar", "SL_2(Z/p^r) against SL_2(F_p[t]/t^r)");
  c_cross->add_option("--p", p, "prime");
  c_cross->add_option("--r", r, "level");
  c_cross->add_option("--n", n, "genus")->check(CLI::Range(1u, 64u));

  // densities
  auto* c_dens = command("densities", "congruence density profile");
  c_dens->add_option("--d", d, "matrix size");
  c_dens->add_option("--ring", ring, "ring")->required();
  c_dens->add_option("--n", n, "genus")->check(CLI::Range(1u, 64u));

  // pipeline
  std::string type = "sl";
  auto* c_pipe = command("pipeline", "polygraph degeneration pipeline for sl, so or sp");
  c_pipe->add_option("--type", type, "sl, so or sp")->check(CLI::IsMember({"sl", "so", "sp"}));
  c_pipe->add_option("--d", d, "parameter")->required();

  // bounds
  std::vector<std::string> factors;
  auto* c_bounds = command("bounds", "B(G) and the minimal genus");
  c_bounds->add_option("--factors", factors, "factors such as sl:5,e8")->delimiter(',')->required();

  // pushforward
  std::string a_text, b_text;
  std::uint64_t qq = 2;
  unsigned rmax_push = 40;
  auto* c_push = command("pushforward", "monomial pushforward masses and densities");
  c_push->add_option("--A", a_text, "exponents a_i")->required();
  c_push->add_option("--B", b_text, "exponents b_i")->required();
  c_push->add_option("--q", qq, "residue field size");
  c_push->add_option("--rmax", rmax_push, "largest annulus");

  // pointcount
  std::string graph_text = "edge", dimw_text = "2";
  std::vector<unsigned> order;
  unsigned sequence = 0;
  auto* c_point = command("pointcount", "points on a symplectic graph variety");
  c_point->add_option("--graph", graph_text, "edge, path:n, cycle:n, complete:n, star:n or N:a-b,...");
  c_point->add_option("--dimw", dimw_text, "dimension per vertex, one value or a list");
  c_point->add_option("--ring", ring, "ring")->required();
  c_point->add_option("--order", order, "vertex order")->delimiter(',');
  c_point->add_option("--sequence", sequence, "also print a_r over zmod:p^r for r = 1..N");

  // langweil
  std::vector<std::uint64_t> qs;
  auto* c_lw = command("langweil", "zeta of SL_2(F_q) for several q");
  c_lw->add_option("--q", qs, "field sizes")->delimiter(',')->required();
  c_lw->add_option("--n", n, "genus")->check(CLI::Range(1u, 64u));

  // verify-all
  std::string profile = "quick";
  bool inject = false;
  auto* c_verify = command("verify-all", "run the acceptance criteria");
  c_verify->add_option("--profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  c_verify->add_flag("--inject-fault", inject, "add 1 to every identity fiber");

  // polygraph
  Vertex root = 0;
  auto* c_poly = command("polygraph", "graph utilities");
  c_poly->require_subcommand(1);
  auto poly_sub = [&](const std::string& name, const std::string& help) {
    auto* c = c_poly->add_subcommand(name, help);
    c->add_option("--graph", graph_text, "edge, path:n, cycle:n, complete:n, star:n or N:a-b,...")->required();
    return c;
  };
  poly_sub("forest", "forest check");
  poly_sub("reduce", "tree-to-edges reduction certificate")->add_option("--root", root, "root vertex")->required();
  poly_sub("dot", "Graphviz output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  sub = app.get_subcommands().front()->get_name();
  if (sub == "polygraph") sub += " " + c_poly->get_subcommands().front()->get_name();
  if (g.json && g.csv) {
    std::cerr << "--json and --csv are exclusive\n";
    return kUsage;
  }

  const auto manifest = g.manifest(sub);
  auto emit = [&](Json body) { print_json(std::move(body), manifest, start, g.wall_time); };

  try {
    if (sub == "group") {
      std::optional<std::pair<FiniteGroup, ConjugacyData>> loaded;
      std::string cache_path;
      if (!cache_dir.empty() && family == "sl") {
        fs::create_directories(cache_dir);
        cache_path = (fs::path(cache_dir) / cache_file_name(d, LocalRingSpec::parse(ring))).string();
        if (fs::exists(cache_path)) loaded = load_group_cache(cache_path);
      }
      if (!loaded) {
        auto grp = make_group(family, d, ring, g);
        auto conj = conjugacy(grp);
        loaded.emplace(std::move(grp), std::move(conj));
        if (!cache_path.empty()) save_group_cache(cache_path, loaded->first, loaded->second);
      }
      const auto& [grp, conj] = *loaded;
      std::vector<std::uint64_t> sizes;
      for (const auto& c : conj.classes) sizes.push_back(c.size);
      if (g.json) {
        Json body{{"name", grp.name()}, {"order", grp.order()}, {"classes", conj.count()}, {"exponent", conj.exponent},
                  {"class_sizes", sizes}};
        if (!cache_path.empty()) body["cache"] = cache_path;
        emit(body);
      } else {
        std::cout << grp.name() << "\norder " << grp.order() << "\nclasses " << conj.count() << "\nexponent "
                  << conj.exponent << "\nclass sizes";
        for (auto x : sizes) std::cout << " " << x;
        std::cout << "\n";
        if (!cache_path.empty()) std::cout << "cache " << cache_path << "\n";
      }
      return kOk;
    }

    if (sub == "zeta") {
      const auto a = analyze_group(make_group(group, d, ring, g), g.threads);
      DixonOptions dopt;
      dopt.seed = g.seed;
      const auto table = dixon_mod_table(a.conj, a.constants, a.group.order(), dopt);
      const auto value = zeta_even(table.degrees, s);
      if (g.json) {
        emit({{"group", a.group.name()}, {"order", a.group.order()}, {"s", s}, {"degrees", table.degrees},
              {"ell", table.ell}, {"seed", table.seed}, {"zeta", rational_json(value)}});
      } else {
        std::cout << q(value) << "\n";
      }
      return kOk;
    }

    if (sub == "frobcheck") {
      const auto a = analyze_group(make_group(group, d, ring, g), g.threads);
      const auto fibers = fiber_counts(a, n, g.threads);
      std::optional<bool> brute;
      if (a.group.order() <= 50) {
        const auto per_element = fiber_counts_brute(a.group, n);
        brute = true;
        for (Index x = 0; x < a.group.order(); ++x) brute = *brute && fibers[a.conj.class_of[x]] == per_element[x];
      }
      const auto primes = dixon_primes(a.group.order(), a.conj.exponent, prime_count);
      const auto rep = frobenius_identity_check(a, fibers, n, primes, g.seed);
      const bool ok = rep.ok() && brute.value_or(true);
      if (g.json) {
        Json fib = Json::array();
        for (const auto& f : fibers) fib.push_back(f.get_str());
        Json body{{"group", a.group.name()}, {"order", a.group.order()}, {"fibers", fib}, {"frobenius", to_json(rep)}};
        body["brute_force_match"] = brute ? Json(*brute) : Json(nullptr);
        emit(body);
      } else {
        std::cout << a.group.name() << " n=" << n << "\nfibers";
        for (const auto& f : fibers) std::cout << " " << f.get_str();
        std::cout << "\nprimes";
        for (auto l : rep.primes) std::cout << " " << l;
        std::cout << "\ncongruences " << rep.checked << ", violations " << rep.violations.size() << "\n";
        if (brute) std::cout << "brute force " << (*brute ? "match" : "MISMATCH") << "\n";
      }
      return ok ? kOk : kDiscrepancy;
    }

    if (sub == "stabilize") {
      if (family != "sl") throw InvalidArgument("only sl is supported");
      const RingKind kind = ring.empty() || ring == "zmod" ? RingKind::integer_quotient
                            : ring == "tpoly"              ? RingKind::truncated_polynomial
                                                           : throw InvalidArgument("--kind must be zmod or tpoly");
      const auto series = stabilization_series(d, kind, p, rmax, n, g.compute());
      if (g.json) {
        emit({{"d", d}, {"p", p}, {"n", n}, {"series", to_json(series)}});
      } else if (g.csv) {
        std::cout << csv_manifest_line(manifest) << "\nlevel,zeta_num,zeta_den,increment_num,increment_den\n";
        for (const auto& row : series.rows) {
          std::cout << row.level << "," << row.zeta.get_num().get_str() << "," << row.zeta.get_den().get_str() << ",";
          if (row.increment) std::cout << row.increment->get_num().get_str() << "," << row.increment->get_den().get_str();
          else std::cout << ",";
          std::cout << "\n";
        }
      } else {
        for (const auto& row : series.rows)
          std::cout << "r=" << row.level << " order " << row.order << " zeta " << q(row.zeta)
                    << (row.increment ? " increment " + q(*row.increment) : std::string()) << "\n";
      }
      if (series.truncated) {
        std::cerr << "stopped: next level projects " << series.truncated_projected_order << " elements\n";
        return kBudget;
      }
      return kOk;
    }

    if (sub == "crosschar") {
      const auto rep = cross_char_compare(p, r, n, g.compute());
      if (g.json) emit(to_json(rep));
      else
        std::cout << "zmod:" << p << "^" << r << " " << q(rep.zeta_zmod) << "\ntpoly:" << p << "^" << r << " "
                  << q(rep.zeta_tpoly) << "\n" << (rep.equal ? "equal" : "DIFFERENT") << "\n";
      return rep.equal ? kOk : kDiscrepancy;
    }

    if (sub == "densities") {
      const auto profile = congruence_density_profile(d, LocalRingSpec::parse(ring), n, g.compute());
      bool ok = true;
      for (std::size_t i = 0; i < profile.size(); ++i)
        ok = ok && profile[i].matches && (i == 0 || profile[i].density >= profile[i - 1].density);
      if (g.json) {
        Json levels = Json::array();
        for (const auto& l : profile) levels.push_back(to_json(l));
        emit({{"levels", levels}, {"ok", ok}});
      } else if (g.csv) {
        std::cout << csv_manifest_line(manifest) << "\nlevel,density_num,density_den,quotient_zeta_num,quotient_zeta_den\n";
        for (const auto& l : profile)
          std::cout << l.level << "," << l.density.get_num().get_str() << "," << l.density.get_den().get_str() << ","
                    << l.quotient_zeta.get_num().get_str() << "," << l.quotient_zeta.get_den().get_str() << "\n";
      } else {
        for (const auto& l : profile)
          std::cout << "D_" << l.level << " = " << q(l.density) << (l.matches ? "" : "  (quotient zeta " + q(l.quotient_zeta) + ")")
                    << "\n";
      }
      return ok ? kOk : kDiscrepancy;
    }

    if (sub == "pipeline") {
      const auto rep = run_pipeline(parse_lie_type(type), d);
      if (!g.emit_dot.empty()) {
        const std::string name = type + "_d" + std::to_string(d);
        write_file(fs::path(g.emit_dot) / (name + ".dot"), dot_export(rep.terminal, rep.terminal_labels, rep.terminal_colors, name));
      }
      if (g.json) {
        emit(to_json(rep));
      } else {
        for (const auto& st : rep.stages)
          std::cout << st.name << ": " << st.computed << " computed, " << st.closed_form << " closed form, "
                    << (st.exempt ? "exempt" : st.matches ? "match" : "MISMATCH") << "\n";
        for (const auto& f : rep.forests)
          std::cout << f.name << ": " << f.edges << " edges, " << (f.is_forest ? "forest" : "NOT a forest")
                    << ", max degree " << f.max_degree << "\n";
        for (const auto& x : rep.discrepancies) std::cout << "discrepancy: " << x << "\n";
        for (const auto& x : rep.notes) std::cout << "note: " << x << "\n";
      }
      return rep.ok() ? kOk : kDiscrepancy;
    }

    if (sub == "bounds") {
      const auto b = bound_root_group(factors);
      const auto genus = min_genus(b);
      if (g.json) {
        emit({{"factors", factors}, {"B", b}, {"min_genus", genus.headline}, {"strict_min_genus", genus.strict},
              {"diverges_at_headline", genus.diverges}});
      } else {
        std::cout << b << "\ngenus " << genus.headline << " (strict " << genus.strict << ")\n";
      }
      return kOk;
    }

    if (sub == "pushforward") {
      const auto spec = MonomialSpec::parse(a_text, b_text, qq);
      const auto series = density_series(spec, rmax_push);
      const auto cont = continuity_guaranteed(spec);
      std::optional<SeriesBehavior> behaviour;
      if (series.size() >= kMinClassifiedSeries) behaviour = observed_behavior(series);
      const std::string observed = behaviour ? to_string(*behaviour) : "unclassified (rmax too small)";
      std::optional<DensityLimit> limit;
      if (cont.guaranteed) limit = limit_average_density(spec);
      if (g.json) {
        Json rows = Json::array();
        for (const auto& a : series) rows.push_back(to_json(a));
        Json body{{"spec", spec.to_string()},
                  {"continuity_guaranteed", cont.guaranteed},
                  {"case", to_string(cont.tag)},
                  {"observed", observed},
                  {"total_mass", rational_json(total_mass(spec))},
                  {"series", rows}};
        body["limit"] = limit ? rational_json(limit->value) : Json(nullptr);
        emit(body);
      } else if (g.csv) {
        std::cout << csv_manifest_line(manifest) << "\nr,mass_num,mass_den,density_num,density_den,attained\n";
        for (const auto& a : series)
          std::cout << a.r << "," << a.mass.get_num().get_str() << "," << a.mass.get_den().get_str() << ","
                    << a.average_density.get_num().get_str() << "," << a.average_density.get_den().get_str() << ","
                    << (a.attained ? 1 : 0) << "\n";
      } else {
        std::cout << spec.to_string() << "\ncontinuity " << (cont.guaranteed ? "guaranteed" : "not guaranteed") << " ("
                  << to_string(cont.tag) << ")\nobserved " << observed << "\n";
        if (limit) std::cout << "limit " << q(limit->value) << "\n";
        for (const auto& a : series)
          std::cout << "r=" << a.r << " mass " << q(a.mass) << " density " << q(a.average_density) << "\n";
      }
      return kOk;
    }

    if (sub == "pointcount") {
      const auto graph = parse_graph(graph_text);
      const auto spec = LocalRingSpec::parse(ring);
      GraphVarietyInstance inst;
      const auto dims = split(dimw_text, ',');
      if (dims.size() == 1) {
        inst = GraphVarietyInstance::uniform(graph, to_uint(dims[0]), spec);
      } else {
        inst.graph = graph;
        inst.ring = spec;
        for (const auto& x : dims) inst.dim_w.push_back(to_uint(x));
      }
      CountOptions opt;
      if (g.budget) opt.budget = *g.budget;
      opt.threads = g.threads;
      opt.order.assign(order.begin(), order.end());
      const auto rep = count_graph_variety(inst, opt);
      std::optional<NormalizedSequence> seq;
      if (sequence > 0) {
        if (spec.kind != RingKind::integer_quotient) throw InvalidArgument("--sequence needs a zmod ring");
        if (dims.size() != 1) throw InvalidArgument("--sequence needs a uniform --dimw");
        seq = normalized_sequence(graph, to_uint(dims[0]), spec.p, sequence, opt);
      }
      if (g.json) {
        Json body{{"graph", to_json(graph)}, {"ring", spec.to_string()}, {"dim_w", inst.dim_w}, {"result", to_json(rep)}};
        if (seq) {
          Json v = Json::array();
          for (const auto& x : seq->values) v.push_back(rational_json(x));
          body["normalized_sequence"] = {{"values", v}, {"truncated", seq->truncated}};
        }
        emit(body);
      } else {
        std::cout << rep.count.get_str() << "\nnormalized " << q(rep.normalized) << "\n";
        if (seq)
          for (std::size_t i = 0; i < seq->values.size(); ++i)
            std::cout << "a_" << i + 1 << " = " << q(seq->values[i]) << "\n";
      }
      return seq && seq->truncated ? kBudget : kOk;
    }

    if (sub == "langweil") {
      const auto rows = langweil_report(qs, n, g.compute());
      bool all = true;
      for (const auto& row : rows) all = all && row.computed;
      if (g.json) {
        Json v = Json::array();
        for (const auto& row : rows) v.push_back(to_json(row));
        emit({{"n", n}, {"rows", v}});
      } else if (g.csv) {
        std::cout << csv_manifest_line(manifest) << "\nq,zeta_num,zeta_den,deviation_num,deviation_den\n";
        for (const auto& row : rows)
          if (row.computed)
            std::cout << row.q << "," << row.zeta.get_num().get_str() << "," << row.zeta.get_den().get_str() << ","
                      << row.deviation.get_num().get_str() << "," << row.deviation.get_den().get_str() << "\n";
      } else {
        for (const auto& row : rows)
          if (row.computed) std::cout << "q=" << row.q << " " << q(row.zeta) << " (zeta - 1 = " << q(row.deviation) << ")\n";
          else std::cout << "q=" << row.q << " skipped: " << row.error << "\n";
      }
      return all ? kOk : kBudget;
    }

    if (sub == "verify-all") {
      AcceptanceOptions opt;
      opt.profile = profile == "full" ? Profile::full : Profile::quick;
      opt.threads = g.threads == 0 ? default_threads() : g.threads;
      opt.seed = g.seed;
      opt.dot_dir = g.emit_dot;
      opt.inject_fiber_fault = inject;
      bool all = true;
      Json results = Json::array();
      for (int id = 1; id <= kCriterionCount; ++id) {
        const auto res = run_criterion(id, opt);
        all = all && res.passed;
        if (g.json) results.push_back(to_json(res));
        else std::cout << format_result(res) << std::endl;
      }
      if (g.json) emit({{"profile", profile}, {"passed", all}, {"criteria", results}});
      return all ? kOk : kDiscrepancy;
    }

    if (sub.rfind("polygraph ", 0) == 0) {
      const auto graph = parse_graph(graph_text);
      if (sub == "polygraph forest") {
        const auto info = forest_check(graph);
        if (g.json) emit({{"graph", to_json(graph)}, {"is_forest", info.is_forest}, {"max_degree", info.max_degree}});
        else std::cout << (info.is_forest ? "forest" : "not a forest") << ", max degree " << info.max_degree << "\n";
        return kOk;
      }
      if (sub == "polygraph reduce") {
        const auto cert = tree_edge_reduction(graph, root);
        const auto replay = replay_certificate(cert);
        if (g.json) {
          emit({{"certificate", to_json(cert)}, {"replay", replay.empty() ? "ok" : replay}});
        } else {
          std::cout << "dim budget " << cert.dim_budget << "\nstars " << cert.stars.size() << "\nfinal edges "
                    << cert.final_edges.size() << "\nreplay " << (replay.empty() ? "ok" : replay) << "\n";
        }
        return replay.empty() ? kOk : kDiscrepancy;
      }
      const auto text = dot_export(graph);
      if (!g.emit_dot.empty()) write_file(fs::path(g.emit_dot) / "graph.dot", text);
      else std::cout << text;
      return kOk;
    }
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (projected " << e.projected() << ")\n";
    return kBudget;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kDiscrepancy;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiscrepancy;
  }
  return kUsage;
}
