#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mtdm {

using Probability = std::vector<double>;

/// A finite, nonempty list of uniquely named states.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> states);
  /// States named s1..sm.
  static StateSpace numbered(std::size_t m);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }

 private:
  std::vector<std::string> states_;
};

/// lo <= E_π(f) <= hi. Either bound may be infinite.
struct ExpectationBound {
  std::vector<double> f;
  double lo;
  double hi;
};

/// A finitely generated credal set: all probability vectors over the state
/// space satisfying every expectation bound. Extreme points are attached
/// explicitly (closed form, user supplied, or enumerated).
class CredalSet {
 public:
  /// Throws InputError if a bound has the wrong length or lo > hi, or if any
  /// supplied extreme point is not a probability vector satisfying every
  /// bound within `eps_feas`.
  CredalSet(StateSpace space, std::vector<ExpectationBound> constraints,
            std::vector<Probability> extreme_points, double eps_feas = 1e-9);

  /// Constraint form only; call enumerate_extreme_points() to attach vertices.
  static CredalSet from_constraints(StateSpace space, std::vector<ExpectationBound> constraints);
  /// Extreme points only (no constraint form).
  static CredalSet from_extreme_points(StateSpace space, std::vector<Probability> points);

  const StateSpace& space() const { return space_; }
  const std::vector<ExpectationBound>& constraints() const { return constraints_; }
  const std::vector<Probability>& extreme_points() const { return extreme_points_; }

  /// Whether π is a probability vector satisfying every bound within eps.
  bool contains(std::span<const double> pi, double eps = 1e-9) const;

  /// Same constraints with `points` attached.
  CredalSet with_extreme_points(std::vector<Probability> points) const;

 private:
  StateSpace space_;
  std::vector<ExpectationBound> constraints_;
  std::vector<Probability> extreme_points_;
};

/// {π : π_1 >= π_2 >= ... >= π_m}. Its m extreme points are the uniform
/// distributions on the prefixes {s_1..s_k}.
CredalSet ordered_family(const StateSpace& space);

/// All probability vectors; extreme points are the m Dirac vectors.
CredalSet full_simplex(const StateSpace& space);

/// Mixes every extreme point with the uniform distribution,
/// π' = (1 - eps) π + eps / m, which makes every vertex strictly positive.
CredalSet perturbed(const CredalSet& cs, double eps);

struct EnumerationLimits {
  std::size_t max_states = 8;
  std::size_t max_constraints = 24;
  /// Upper bound on the number of candidate bases examined.
  double max_bases = 2e6;
  /// Vertices closer than this in the ∞-norm are merged.
  double merge_tol = 1e-7;
  double eps_feas = 1e-9;
};

/// Exact vertex set of {π >= 0, Σπ = 1, lo <= f·π <= hi} by enumerating
/// basic solutions: every choice of m-1 active rows from the inequality
/// pool, together with Σπ = 1, is solved as a square system and kept if
/// feasible. Output is sorted lexicographically. Throws
/// EnumerationLimitError beyond `limits`, InconsistencyError if the
/// constraints admit no probability vector.
std::vector<Probability> enumerate_extreme_points(const CredalSet& cs,
                                                  const EnumerationLimits& limits = {});

/// min over the extreme points of g · π. Throws InputError if no extreme
/// points are attached or g has the wrong length.
double lower_expectation(const CredalSet& cs, std::span<const double> g);

}  // namespace mtdm
