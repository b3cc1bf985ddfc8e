#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mtdm/credal_set.hpp"
#include "mtdm/dominance.hpp"
#include "mtdm/preference_system.hpp"

namespace mtdm {

/// Values closer than this are treated as equal when comparing evaluations.
inline constexpr double kCompareTol = 1e-12;

/// A multi-target decision problem: every action scored on every state by r
/// target evaluations in [0, 1]. Targets 0..z-1 are cardinal, z..r-1 ordinal.
class Mtdp {
 public:
  /// `table[a][s][j]`. Throws InputError naming the offending action, state
  /// and target on a shape mismatch or a value outside [0, 1].
  Mtdp(StateSpace space, std::vector<std::string> actions,
       const std::vector<std::vector<std::vector<double>>>& table, std::size_t num_cardinal);

  const StateSpace& space() const { return space_; }
  const std::vector<std::string>& actions() const { return actions_; }
  std::size_t num_actions() const { return actions_.size(); }
  std::size_t num_states() const { return space_.size(); }
  std::size_t num_targets() const { return num_targets_; }
  std::size_t num_cardinal() const { return num_cardinal_; }

  double value(std::size_t a, std::size_t s, std::size_t j) const {
    return values_[(a * num_states() + s) * num_targets_ + j];
  }
  /// φ∘X_a(s), length r.
  std::vector<double> outcome(std::size_t a, std::size_t s) const;

 private:
  StateSpace space_;
  std::vector<std::string> actions_;
  std::size_t num_targets_;
  std::size_t num_cardinal_;
  std::vector<double> values_;
};

struct EvalVector {
  std::vector<double> coords;
  /// (action, state) pairs whose outcome equals coords.
  std::vector<std::pair<std::size_t, std::size_t>> origins;
  bool is_zero = false;
  bool is_one = false;
};

/// Distinct outcome vectors in (action, state) order, followed by the all-zero
/// and all-one vectors unless some outcome already equals them.
std::vector<EvalVector> eval_vectors(const Mtdp& m);

/// Componentwise >= in every coordinate.
std::vector<ElementPair> build_r1(const std::vector<EvalVector>& vectors);

/// Pairs of r1 members ((x,y),(x',y')), both drawn from `r1`, with
///   x_j - y_j >= x'_j - y'_j       for cardinal j < z,
///   x_j >= x'_j >= y'_j >= y_j     for ordinal j >= z.
/// Reflexive pairs are omitted.
std::vector<PairComparison> build_r2(const std::vector<EvalVector>& vectors,
                                     const std::vector<ElementPair>& r1, std::size_t num_cardinal);

/// Drops strict r2 pairs implied by two other strict pairs.
std::vector<PairComparison> prune_r2(const std::vector<PairComparison>& r2);

struct SubSystemOptions {
  /// Build the system with an empty r2.
  bool drop_r2 = false;
  /// Apply prune_r2 before constructing the system (built as a generating set).
  bool prune_r2 = false;
};

/// The induced preference system over the evaluation vectors together with
/// each action expressed as an act on its elements.
struct SubSystem {
  std::vector<EvalVector> elements;
  PreferenceSystem system;
  std::vector<Act> acts;
};

/// Also verifies that the mean utility (1/r) Σ x_j satisfies ∇⁰.
SubSystem sub_system(const Mtdp& m, const SubSystemOptions& options = {});

DominanceRelation delta_dominance(const SubSystem& sub, const CredalSet& cs, double delta,
                                  const DominanceOptions& options = {});
DominanceRelation delta_dominance(const Mtdp& m, const CredalSet& cs, double delta,
                                  const DominanceOptions& options = {});

/// Actions at least as good as every action in every state and target.
std::vector<std::size_t> uniformly_optimal(const Mtdp& m);
/// Actions not componentwise dominated, with strict improvement somewhere, by another.
std::vector<std::size_t> pareto_front(const Mtdp& m);

/// Every extreme point gives every state positive probability.
bool has_positive_extreme_points(const CredalSet& cs);

}  // namespace mtdm
