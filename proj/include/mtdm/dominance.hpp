#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtdm/credal_set.hpp"
#include "mtdm/lp.hpp"
#include "mtdm/preference_system.hpp"

namespace mtdm {

/// X: S -> A, stored as one element index per state.
struct Act {
  std::string name;
  std::vector<std::size_t> outcome_index;
};

struct DominanceOptions {
  double eps_opt = 1e-8;
  /// Worker threads for full_relation (0 = hardware concurrency).
  unsigned threads = 1;
  lp::SolverOptions lp;
};

struct PairVerdict {
  bool dominates = false;
  double min_opt = 0.0;
  /// Extreme point attaining min_opt.
  std::size_t argmin_t = 0;
  /// Minimizing utility vector at argmin_t (empty for the trivial i == j case).
  std::vector<double> witness;
  std::vector<double> opt_by_t;
  /// min_opt lies in [-eps_opt, 0): dominance holds only thanks to the tolerance.
  bool marginal = false;
};

/// Dominance relation over a list of acts. Immutable once built.
struct DominanceRelation {
  std::vector<std::string> acts;
  double delta = 0.0;
  double eps_opt = 1e-8;
  /// dominates[i][j]: act i weakly dominates act j.
  std::vector<std::vector<bool>> dominates;
  /// min over extreme points of opt_ij(t).
  std::vector<std::vector<double>> opt_values;
  std::vector<std::vector<std::vector<double>>> opt_by_t;
  std::vector<std::vector<std::vector<double>>> witnesses;
  std::vector<std::vector<bool>> marginal;

  std::size_t size() const { return acts.size(); }
  bool strictly(std::size_t i, std::size_t j) const {
    return dominates[i][j] && !dominates[j][i];
  }
};

/// Holds the ∇^δ block of one preference system and answers pairwise
/// dominance queries against the extreme points of one credal set. The
/// referenced system and credal set must outlive the checker. Queries are
/// const and may run concurrently.
class DominanceChecker {
 public:
  /// Throws InputError on bad δ or missing extreme points, InconsistencyError
  /// if ∇^δ is infeasible.
  DominanceChecker(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                   DominanceOptions options = {});
  ~DominanceChecker();
  DominanceChecker(DominanceChecker&&) noexcept;
  DominanceChecker& operator=(DominanceChecker&&) noexcept;

  const PreferenceSystem& system() const { return *ps_; }
  const CredalSet& credal_set() const { return *cs_; }
  double delta() const { return delta_; }
  const DominanceOptions& options() const { return options_; }
  const lp::LpProblem& nabla() const { return nabla_; }

  /// c_l = π(X_i⁻¹(a_l)) - π(X_j⁻¹(a_l)).
  std::vector<double> objective(std::span<const double> pi, const Act& xi, const Act& xj) const;
  /// ∇^δ with the objective for extreme point t.
  lp::LpProblem dominance_lp(const Act& xi, const Act& xj, std::size_t t) const;

  /// Optimal value of the LP for an arbitrary π.
  double opt_at(std::span<const double> pi, const Act& xi, const Act& xj) const;
  /// Same with the minimizing utility vector.
  std::pair<double, std::vector<double>> solve_at(std::span<const double> pi, const Act& xi,
                                                  const Act& xj) const;

  PairVerdict dominates(const Act& xi, const Act& xj) const;
  DominanceRelation full_relation(std::span<const Act> acts) const;

  /// Throws InputError if an act has the wrong length or an unknown element.
  void check_act(const Act& x) const;

 private:
  const PreferenceSystem* ps_;
  const CredalSet* cs_;
  double delta_;
  DominanceOptions options_;
  lp::LpProblem nabla_;
  std::unique_ptr<lp::Solver> solver_;
};

lp::LpProblem dominance_lp(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                           const Act& xi, const Act& xj, std::size_t t);
PairVerdict dominates(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                      const Act& xi, const Act& xj, const DominanceOptions& options = {});
DominanceRelation full_relation(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                                std::span<const Act> acts, const DominanceOptions& options = {});

/// Indices of acts dominating every act.
std::vector<std::size_t> maximal_set(const DominanceRelation& rel);
/// Indices of acts not strictly dominated by any act.
std::vector<std::size_t> undominated_set(const DominanceRelation& rel);

struct HasseDiagram {
  /// Indifference classes in order of their first member.
  std::vector<std::vector<std::size_t>> classes;
  /// (dominator class, dominated class), transitive reduction of the strict part.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

HasseDiagram hasse_edges(const DominanceRelation& rel);

/// Triples (i, j, k) with i >= j, j >= k but not i >= k.
std::vector<std::array<std::size_t, 3>> transitivity_violations(const DominanceRelation& rel);

}  // namespace mtdm
