#include "repzeta/serialize.hpp"

namespace repzeta {

std::string artifact_version() { return REPZETA_VERSION; }

Json to_json(const RunManifest& m) {
  Json j;
  j["subcommand"] = m.subcommand;
  j["argv"] = m.argv;
  j["seeds"] = m.seeds;
  j["version"] = m.version;
  if (m.wall_time) j["wall_time_seconds"] = *m.wall_time;
  return j;
}

Json rational_json(const mpq_class& x) { return Json{{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}}; }

Json to_json(const FrobeniusReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"ell", x.ell}, {"class", x.class_index}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  return {{"n", r.n}, {"primes", r.primes}, {"checked", r.checked}, {"ok", r.ok()}, {"violations", v}};
}

Json to_json(const DensityLevel& l) {
  return {{"level", l.level},
          {"kernel_order", l.kernel_order},
          {"quotient_order", l.quotient_order},
          {"density", rational_json(l.density)},
          {"quotient_zeta", rational_json(l.quotient_zeta)},
          {"matches", l.matches}};
}

Json to_json(const StabilizationSeries& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json row{{"level", r.level}, {"order", r.order}, {"classes", r.classes}, {"zeta", rational_json(r.zeta)}};
    row["increment"] = r.increment ? rational_json(*r.increment) : Json(nullptr);
    rows.push_back(row);
  }
  Json j{{"rows", rows}, {"truncated", s.truncated}};
  if (s.truncated) j["truncated_projected_order"] = s.truncated_projected_order;
  return j;
}

Json to_json(const CrossCharReport& r) {
  return {{"p", r.p},
          {"r", r.r},
          {"n", r.n},
          {"order", r.order},
          {"classes_zmod", r.classes_zmod},
          {"classes_tpoly", r.classes_tpoly},
          {"zeta_zmod", rational_json(r.zeta_zmod)},
          {"zeta_tpoly", rational_json(r.zeta_tpoly)},
          {"equal", r.equal}};
}

Json to_json(const PipelineReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"name", s.name},
                      {"computed", s.computed},
                      {"closed_form", s.closed_form},
                      {"matches", s.matches},
                      {"exempt", s.exempt},
                      {"missing_count", s.missing_count},
                      {"extra_count", s.extra_count},
                      {"missing", s.missing},
                      {"extra", s.extra},
                      {"note", s.note}});
  Json forests = Json::array();
  for (const auto& f : r.forests)
    forests.push_back({{"name", f.name},
                       {"edges", f.edges},
                       {"components", f.components},
                       {"is_forest", f.is_forest},
                       {"max_degree", f.max_degree},
                       {"combs", f.combs},
                       {"passes", f.passes()}});
  Json digests = Json::object();
  for (const auto& [k, v] : r.digests) digests[k] = v;
  return {{"type", to_string(r.type)}, {"d", r.d},           {"ok", r.ok()},
          {"stages", stages},          {"forests", forests}, {"discrepancies", r.discrepancies},
          {"notes", r.notes},          {"digests", digests}};
}

Json to_json(const AnnulusProfile& a) {
  return {{"r", a.r},
          {"mass", rational_json(a.mass)},
          {"average_density", rational_json(a.average_density)},
          {"attained", a.attained}};
}

Json to_json(const CountReport& r) {
  return {{"count", r.count.get_str()},
          {"expected_dimension", r.expected_dimension},
          {"normalized", rational_json(r.normalized)}};
}

Json to_json(const LangWeilRow& r) {
  Json j{{"q", r.q}, {"field", r.field.to_string()}, {"computed", r.computed}};
  if (r.computed) {
    j["order"] = r.order;
    j["zeta"] = rational_json(r.zeta);
    j["deviation"] = rational_json(r.deviation);
  } else {
    j["error"] = r.error;
  }
  return j;
}

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.a, e.b});
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

namespace {

Json weight_json(const MultiWeight& w) {
  Json out = Json::array();
  for (const auto& row : w) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    out.push_back(r);
  }
  return out;
}

}  // namespace

Json to_json(const ReductionCertificate& c) {
  Json classes = Json::array();
  for (const auto& g : c.colour_classes) classes.push_back(to_json(g));
  Json stars = Json::array();
  for (const auto& s : c.stars) stars.push_back({{"center", s.center}, {"children", s.children}, {"color", s.color}});
  Json weights = Json::array();
  for (const auto& w : c.star_weights) weights.push_back(weight_json(w));
  Json final_edges = Json::array();
  for (const auto& e : c.final_edges) final_edges.push_back({e.a, e.b});
  return {{"tree", to_json(c.tree)},
          {"root", c.root},
          {"max_degree", c.max_degree},
          {"parity_weight", weight_json(c.parity_weight)},
          {"colour_classes", classes},
          {"stars", stars},
          {"star_weights", weights},
          {"final_edges", final_edges},
          {"dim_budget", c.dim_budget}};
}

Json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"limit_seconds", r.limit_seconds}};
}

std::string csv_manifest_line(const RunManifest& m) { return "# manifest: " + to_json(m).dump(); }

}  // namespace repzeta
