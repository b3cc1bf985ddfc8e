#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mtdm/credal_set.hpp"
#include "mtdm/dominance.hpp"
#include "mtdm/preference_system.hpp"

namespace mtdm {

struct SampledUtility {
  std::vector<double> values;
  /// Smallest slack over every inequality and bound of ∇^δ.
  double margin = 0.0;
};

struct SamplerOptions {
  /// Hit-and-run steps between consecutive samples.
  std::size_t burn_in = 100;
  double eps_feas = 1e-9;
  lp::SolverOptions lp;
};

struct UtilitySamples {
  std::vector<SampledUtility> samples;
  /// ∇^δ is a single point; every sample is that point.
  bool degenerate = false;
  /// Dimension of the affine hull of ∇^δ.
  std::size_t dimension = 0;
};

/// Draws `count` points of ∇^δ by coordinate hit-and-run in an orthonormal
/// basis of its affine hull, started from the max-min-slack point. Implicit
/// equalities are detected first so the walk never sticks to a face.
/// Deterministic given `seed`. Throws InconsistencyError if ∇^δ is empty.
UtilitySamples sample_utilities(const PreferenceSystem& ps, double delta, std::size_t count,
                                std::uint64_t seed, const SamplerOptions& options = {});

struct Counterexample {
  std::vector<double> u;
  std::vector<double> pi;
  /// E_π(u∘X_i) - E_π(u∘X_j).
  double gap = 0.0;
};

struct RefuteOptions {
  double eps_opt = 1e-8;
  SamplerOptions sampler;
};

/// Searches sampled utilities against every extreme point and one random
/// mixture of extreme points per utility for E_π(u∘X_i) < E_π(u∘X_j) - eps_opt.
/// Returns the first hit.
std::optional<Counterexample> refute_dominance(const PreferenceSystem& ps, const CredalSet& cs,
                                               double delta, const Act& xi, const Act& xj,
                                               std::size_t count, std::uint64_t seed,
                                               const RefuteOptions& options = {});

struct RefutationTable {
  /// found[i][j]: a counterexample to "i dominates j".
  std::vector<std::vector<std::optional<Counterexample>>> found;
  std::size_t samples = 0;
  bool degenerate = false;
};

/// refute_dominance for every ordered pair, sharing one sample stream.
RefutationTable refute_all(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                           std::span<const Act> acts, std::size_t count, std::uint64_t seed,
                           const RefuteOptions& options = {});

/// E_π(u∘X).
double expected_utility(std::span<const double> u, std::span<const double> pi, const Act& x);

}  // namespace mtdm
