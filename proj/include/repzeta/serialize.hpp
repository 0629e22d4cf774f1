#pragma once

// JSON forms of the library reports. Rationals are {"num": "...", "den": "..."}
// with decimal strings; big integers are decimal strings.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "repzeta/acceptance.hpp"
#include "repzeta/liepipe.hpp"
#include "repzeta/padicpush.hpp"
#include "repzeta/polygraph.hpp"
#include "repzeta/varcount.hpp"
#include "repzeta/wordmap.hpp"

namespace repzeta {

using Json = nlohmann::ordered_json;

std::string artifact_version();

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;
  std::vector<std::uint64_t> seeds;
  std::string version = artifact_version();
  /// Seconds; left out of the output unless set, so repeated runs stay byte-identical.
  std::optional<double> wall_time;
};

Json to_json(const RunManifest& m);
Json rational_json(const mpq_class& x);
Json to_json(const FrobeniusReport& r);
Json to_json(const DensityLevel& l);
Json to_json(const StabilizationSeries& s);
Json to_json(const CrossCharReport& r);
Json to_json(const PipelineReport& r);
Json to_json(const AnnulusProfile& a);
Json to_json(const CountReport& r);
Json to_json(const LangWeilRow& r);
Json to_json(const Graph& g);
Json to_json(const ReductionCertificate& c);
Json to_json(const CriterionResult& r);

/// One line, "# manifest: {...}", placed above CSV headers.
std::string csv_manifest_line(const RunManifest& m);

}  // namespace repzeta
