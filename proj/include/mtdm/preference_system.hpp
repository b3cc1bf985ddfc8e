#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtdm/lp.hpp"

namespace mtdm {

/// (i, j): element i is weakly preferred to element j.
using ElementPair = std::pair<std::size_t, std::size_t>;
/// ((k, l), (p, q)): exchanging l for k is at least as good as exchanging q for p.
using PairComparison = std::pair<ElementPair, ElementPair>;

/// Strict and indifference parts of a preorder.
template <class T>
struct RelationParts {
  std::vector<std::pair<T, T>> strict;
  std::vector<std::pair<T, T>> indiff;
};

enum class Reflexivity {
  /// Every element of the relation's field must carry its (x, x) pair.
  Required,
  /// (x, x) pairs are assumed present whether listed or not.
  Implicit,
};

/// Partitions a preorder into strict and indifference parts. Throws
/// InputError if `rel` is not reflexive (under `mode`) or not transitive.
/// Output pairs are sorted. With Reflexivity::Implicit, unlisted reflexive
/// pairs do not appear in `indiff`.
RelationParts<std::size_t> relation_parts(std::span<const ElementPair> rel,
                                          Reflexivity mode = Reflexivity::Required);
RelationParts<ElementPair> relation_parts(std::span<const PairComparison> rel,
                                          Reflexivity mode = Reflexivity::Implicit);

struct PreferenceSystemOptions {
  /// Replace r1 by its reflexive-transitive closure and r2 by its transitive
  /// closure before validation. Off by default: closure can hide input errors.
  bool close_transitively = false;
  /// r2 lists generators of its preorder (e.g. after redundancy pruning):
  /// transitivity of r2 is not checked and only listed pairs become
  /// constraints.
  bool r2_generating_set = false;
};

/// A finite preference system [A, R1, R2]. Immutable after construction.
///
/// R1 is a preorder on element indices. R2 is a preorder on members of R1;
/// its reflexive pairs are implicit and need not be listed. The optional top
/// and bottom elements must sit R1-above, resp. R1-below, every element.
class PreferenceSystem {
 public:
  PreferenceSystem(std::vector<std::string> elements, std::vector<ElementPair> r1,
                   std::vector<PairComparison> r2, std::optional<std::size_t> top,
                   std::optional<std::size_t> bottom, PreferenceSystemOptions options = {});

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<ElementPair>& r1() const { return r1_; }
  const std::vector<PairComparison>& r2() const { return r2_; }
  std::optional<std::size_t> top() const { return top_; }
  std::optional<std::size_t> bottom() const { return bottom_; }
  const RelationParts<std::size_t>& r1_parts() const { return r1_parts_; }
  const RelationParts<ElementPair>& r2_parts() const { return r2_parts_; }

  bool in_r1(std::size_t i, std::size_t j) const { return r1_matrix_[i * size() + j] != 0; }

 private:
  std::vector<std::string> elements_;
  std::vector<ElementPair> r1_;
  std::vector<PairComparison> r2_;
  std::optional<std::size_t> top_;
  std::optional<std::size_t> bottom_;
  std::vector<char> r1_matrix_;
  RelationParts<std::size_t> r1_parts_;
  RelationParts<ElementPair> r2_parts_;
};

/// The ∇^δ constraint set as an LP over v_1..v_n (zero objective):
///   v_top = 1, v_bottom = 0,
///   v_i = v_j              for (i, j) in I_R1 (i != j),
///   v_i - v_j >= δ         for (i, j) in P_R1,
///   v_k - v_l = v_p - v_q  for ((k,l),(p,q)) in I_R2 (non-reflexive),
///   v_k - v_l - v_p + v_q >= δ  for ((k,l),(p,q)) in P_R2,
///   v in [0, 1]^n.
/// Throws InputError if top or bottom is missing or δ is not in [0, 1).
lp::LpProblem nabla_constraints(const PreferenceSystem& ps, double delta);

/// Same system with δ promoted to the extra variable v_n ∈ [0, 1]; every
/// strict row reads (...) - v_n >= 0. Objective: minimize -v_n.
lp::LpProblem nabla_with_delta_variable(const PreferenceSystem& ps);

/// True iff ∇^δ is feasible (closure semantics: strict preferences are
/// encoded with weak inequalities of margin δ).
bool is_delta_consistent(const PreferenceSystem& ps, double delta,
                         const lp::SolverOptions& options = {});

struct MaxDelta {
  /// Largest feasible δ, capped at 1.
  double value = 0.0;
  /// The supremum reached 1, outside the admissible range [0, 1).
  bool at_boundary = false;
  /// A utility vector attaining `value`.
  std::vector<double> witness;
};

/// Solves  max δ  s.t. ∇^δ  as one LP. Throws InconsistencyError if the
/// system is not even 0-consistent.
MaxDelta max_delta(const PreferenceSystem& ps, const lp::SolverOptions& options = {});

}  // namespace mtdm
