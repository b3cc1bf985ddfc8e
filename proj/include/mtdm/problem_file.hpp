#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mtdm/credal_set.hpp"
#include "mtdm/mtdp.hpp"

namespace mtdm {

enum class CredalKind { Ordered, Simplex, Constraints, ExtremePoints };

struct CredalSpec {
  CredalKind kind = CredalKind::Ordered;
  std::vector<ExpectationBound> entries;  // Constraints
  std::vector<Probability> points;        // ExtremePoints
};

/// JSON problem description:
///
///   {
///     "states": ["s1", ...],
///     "credal": {"kind": "ordered" | "simplex"}
///             | {"kind": "constraints", "entries": [{"coeffs": [...], "lo": x|null, "hi": x|null}]}
///             | {"kind": "extreme_points", "points": [[...], ...]},
///     "actions": [{"name": "A1", "values": [[v_s1_t1, v_s1_t2, ...], ...]}],
///     "num_cardinal": z,
///     "deltas": "auto" | [d, ...]
///   }
///
/// A null bound is unbounded. "deltas" is optional and defaults to "auto".
struct ProblemFile {
  std::vector<std::string> states;
  CredalSpec credal;
  std::vector<std::string> action_names;
  /// values[a][s][j]
  std::vector<std::vector<std::vector<double>>> values;
  std::size_t num_cardinal = 0;
  bool deltas_auto = true;
  std::vector<double> deltas;
};

/// Throws InputError naming the offending field, or the line and column of a
/// syntax error.
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);

/// Canonical JSON text (two-space indent, trailing newline).
std::string serialize_problem(const ProblemFile& pf);

Mtdp to_mtdp(const ProblemFile& pf);
/// Closed-form extreme points for "ordered" and "simplex"; "constraints" is
/// enumerated exactly.
CredalSet to_credal_set(const ProblemFile& pf);

}  // namespace mtdm
