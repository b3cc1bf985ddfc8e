#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtdm/dominance.hpp"
#include "mtdm/problem_file.hpp"

namespace mtdm {

struct RunOptions {
  /// Overrides the file's delta list when set.
  std::optional<std::vector<double>> deltas;
  /// Overrides the file and uses {0, δ_max/2, δ_max}.
  bool deltas_auto = false;
  double eps_opt = 1e-8;
  /// Utility samples for the oracle cross-check (0 = skip).
  std::size_t oracle_samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct OracleStats {
  std::size_t samples = 0;
  bool degenerate = false;
  std::size_t dominated_pairs = 0;
  /// LP says dominated but a sampled (u, π) contradicts it.
  std::size_t dominated_refuted = 0;
  std::size_t not_dominated_pairs = 0;
  /// LP says not dominated and the sampler found a counterexample too.
  std::size_t not_dominated_sampled = 0;
  /// LP says not dominated and its own witness violates the inequality.
  std::size_t not_dominated_witnessed = 0;
  bool agrees() const {
    return dominated_refuted == 0 && not_dominated_witnessed == not_dominated_pairs;
  }
};

struct DeltaReport {
  double delta = 0.0;
  /// "min", "med", "max" for automatic deltas, empty otherwise.
  std::string label;
  bool consistent = true;
  DominanceRelation relation;
  std::vector<std::string> maximal;
  std::vector<std::string> undominated;
  HasseDiagram hasse;
  std::optional<OracleStats> oracle;
};

struct Report {
  std::vector<std::string> actions;
  std::vector<std::string> states;
  std::size_t num_elements = 0;
  std::size_t r1_size = 0;
  std::size_t r2_size = 0;
  double delta_max = 0.0;
  bool delta_max_at_boundary = false;
  std::vector<std::string> uniformly_optimal;
  std::vector<std::string> pareto;
  std::vector<DeltaReport> per_delta;
};

/// Full pipeline: δ_max, then per δ the dominance relation, choice sets and
/// Hasse diagram. Throws InconsistencyError naming δ_max if a requested δ
/// exceeds it.
Report run(const ProblemFile& pf, const RunOptions& options = {});

/// Machine-readable report; choice sets as sorted name arrays.
std::string report_json(const Report& report);
/// Short human-readable summary.
std::string report_text(const Report& report);

/// DOT digraph of the Hasse diagram: one node per indifference class labeled
/// by its members joined with ",", edges from dominator to dominated.
std::string emit_dot(const DominanceRelation& rel);
/// hasse_delta_<shortest round-trip decimal of δ>.dot
std::string dot_file_name(double delta);

}  // namespace mtdm
