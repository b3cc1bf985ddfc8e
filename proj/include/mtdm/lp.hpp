#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mtdm::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Global tolerances. `eps_feas` bounds constraint violation of returned
/// witnesses; every "optimal value >= 0" test is evaluated as >= -eps_opt.
struct Tolerances {
  double eps_feas = 1e-9;
  double eps_opt = 1e-8;
};

/// coeffs · v (= or >=) rhs; coeffs has length num_vars.
struct LinearRow {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

struct VarBounds {
  double lo = 0.0;
  double hi = kInf;
};

/// minimize objective · v  subject to
///   eq_constraints:   coeffs · v  = rhs
///   ineq_constraints: coeffs · v >= rhs
///   var_bounds:       lo <= v <= hi   (either side may be infinite)
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearRow> eq_constraints;
  std::vector<LinearRow> ineq_constraints;
  std::vector<VarBounds> var_bounds;

  /// Throws InputError on dimension mismatch, lo > hi, NaN coefficients,
  /// or a degenerate problem (zero variables / empty objective).
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<double> optimal_value;          // present iff Optimal
  std::optional<std::vector<double>> witness;   // present iff Optimal
  /// Lagrange multipliers (>= 0) of the inequality rows at the optimum,
  /// present iff Optimal.
  std::optional<std::vector<double>> ineq_multipliers;
  std::size_t iterations = 0;
};

struct SolverOptions {
  Tolerances tol;
  std::size_t max_iterations = 200000;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
};

/// Largest violation of any constraint or bound of `p` at `v` (0 if feasible).
double max_violation(const LpProblem& p, std::span<const double> v);

/// Solver bound to one constraint block. Different objectives can be solved
/// against the same block without re-validating or re-compiling it; solve()
/// is const and safe to call concurrently.
///
/// Internally the dual  max b·y  s.t.  Aᵀy = c, y >= 0  is solved with a
/// two-phase revised simplex whose basis is num_vars × num_vars. The primal
/// witness is recovered from the optimal simplex multipliers, so it is a
/// vertex of the feasible region. This suits the shape produced by the
/// dominance code: few variables, many constraints.
class Solver {
 public:
  explicit Solver(const LpProblem& constraints, SolverOptions options = {});
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  std::size_t num_vars() const;

  /// Objective length must equal num_vars (throws InputError otherwise).
  LpOutcome solve(std::span<const double> objective) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience: validate, compile, solve.
LpOutcome solve(const LpProblem& p, const SolverOptions& options = {});

}  // namespace mtdm::lp
