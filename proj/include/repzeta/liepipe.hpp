#pragma once

// Structure constants of sl_d, so_d and sp_2d in explicit bases, the
// polygraphs they define, and the weight pipelines that degenerate those
// polygraphs into forests. Every stage is compared with an independent
// closed-form predicate; mismatches are returned as data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "repzeta/polygraph.hpp"

namespace repzeta {

enum class LieType { sl, so, sp };

std::string to_string(LieType t);
LieType parse_lie_type(const std::string& s);

/// Sparse matrix with rational entries sharing one denominator.
struct SparseMatrix {
  struct Entry {
    std::uint32_t row, col;
    std::int64_t num;
  };
  std::int64_t den = 1;
  std::vector<Entry> entries;
};

/// A linear functional on matrices: sum over positions of coefficient * X[row][col].
struct Functional {
  struct Term {
    std::uint32_t row, col;
    mpq_class coeff;
  };
  std::vector<Term> terms;
};

struct LieBasis {
  LieType type = LieType::sl;
  unsigned d = 0;
  unsigned matrix_size = 0;
  /// Index set I = J; labels are 1-based, e.g. "(1,2)", "{1,3}", "[1,2]-".
  std::vector<std::string> labels;
  std::vector<SparseMatrix> basis;
  std::vector<Functional> coordinates;
};

LieBasis lie_basis(LieType type, unsigned d);

/// One structure constant a_{ijl} = alpha_l([e_i, e_j]) with i < j.
struct StructureConstant {
  std::uint32_t i, j, l;
  mpq_class value;
};

/// All nonzero a_{ijl} with i < j, sorted by (i, j, l).
std::vector<StructureConstant> structure_constants(const LieBasis& b);
/// The bracket of two basis elements, read in the coordinates.
std::vector<std::pair<std::uint32_t, mpq_class>> bracket_coordinates(const LieBasis& b, std::uint32_t i,
                                                                     std::uint32_t j);
/// Gamma_{B,C}: S = {({i,j}, l) : a_{ijl} != 0}.
Polygraph structure_polygraph(const LieBasis& b);

struct StageCheck {
  std::string name;
  std::size_t computed = 0;     ///< triples (or edges) in the computed stage
  std::size_t closed_form = 0;  ///< triples (or edges) in the published closed form
  bool matches = true;
  bool exempt = false;  ///< compared for information only
  std::size_t missing_count = 0, extra_count = 0;
  std::vector<std::string> missing;  ///< closed form only (first few)
  std::vector<std::string> extra;    ///< computed only (first few)
  std::string note;
};

struct ForestCheck {
  std::string name;
  std::size_t edges = 0;
  std::size_t components = 0;
  bool is_forest = false;
  unsigned max_degree = 0;
  bool combs = false;  ///< every component is a path with at most one leaf per path vertex
  bool passes() const noexcept { return is_forest && max_degree <= 3; }
};

struct PipelineReport {
  LieType type = LieType::sl;
  unsigned d = 0;
  std::vector<StageCheck> stages;
  std::vector<ForestCheck> forests;
  std::vector<std::string> discrepancies;
  std::vector<std::string> notes;
  /// Digest per computed stage, so two runs (or a replay) can be compared.
  std::vector<std::pair<std::string, std::string>> digests;
  /// Terminal graph for drawing: sl/so the coloured Gamma_3, sp Gamma_8.
  Graph terminal;
  std::vector<std::string> terminal_labels;
  std::vector<std::uint32_t> terminal_colors;

  bool ok() const noexcept { return discrepancies.empty(); }
};

PipelineReport pipeline_sl(unsigned d);
PipelineReport pipeline_so(unsigned d);
PipelineReport pipeline_sp(unsigned d);
PipelineReport run_pipeline(LieType type, unsigned d);

/// Re-runs the pipeline and compares stage digests. Empty on success.
std::string replay_pipeline(const PipelineReport& report);

/// Closed form S_0 of the sl case, as a polygraph over the sl index set.
Polygraph sl_closed_form_s0(unsigned d);

/// B(g) for a simple type: sl/so 22, sp 40, exceptional 3 dim + 1.
std::uint64_t bound_root(const std::string& simple_type, unsigned rank_or_dim = 0);
/// Maximum of B over factors spelled "sl:5", "e8", ...
std::uint64_t bound_root_group(const std::vector<std::string>& factors);
/// Dimension of an exceptional simple Lie algebra (g2, f4, e6, e7, e8).
std::optional<unsigned> exceptional_dimension(const std::string& name);

struct GenusBound {
  std::uint64_t headline = 0;  ///< ceil(B/2) + 1
  std::uint64_t strict = 0;    ///< least integer n with n >= B/2 + 1
  bool diverges = false;
};
GenusBound min_genus(std::uint64_t b);

}  // namespace repzeta
