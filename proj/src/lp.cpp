#include "mtdm/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "mtdm/error.hpp"
#include "mtdm/kernels.hpp"

namespace mtdm::lp {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

void validate_constraints(const LpProblem& p) {
  if (p.num_vars == 0) throw InputError("LP has zero variables");
  auto check_rows = [&](const std::vector<LinearRow>& rows, const char* what) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].coeffs.size() != p.num_vars) {
        std::ostringstream os;
        os << what << " row " << i << " has " << rows[i].coeffs.size()
           << " coefficients, expected " << p.num_vars;
        throw InputError(os.str());
      }
      if (!std::isfinite(rows[i].rhs) ||
          std::any_of(rows[i].coeffs.begin(), rows[i].coeffs.end(),
                      [](double c) { return !std::isfinite(c); })) {
        std::ostringstream os;
        os << what << " row " << i << " has a non-finite entry";
        throw InputError(os.str());
      }
    }
  };
  check_rows(p.eq_constraints, "equality");
  check_rows(p.ineq_constraints, "inequality");
  if (p.var_bounds.size() != p.num_vars) {
    std::ostringstream os;
    os << "LP has " << p.var_bounds.size() << " variable bounds, expected " << p.num_vars;
    throw InputError(os.str());
  }
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    const auto& b = p.var_bounds[j];
    if (std::isnan(b.lo) || std::isnan(b.hi) || b.lo > b.hi || b.lo == kInf || b.hi == -kInf) {
      std::ostringstream os;
      os << "variable " << j << " has invalid bounds [" << b.lo << ", " << b.hi << "]";
      throw InputError(os.str());
    }
  }
}

void validate_objective(std::span<const double> c, std::size_t n) {
  if (c.empty()) throw InputError("LP objective is empty");
  if (c.size() != n) {
    std::ostringstream os;
    os << "objective has " << c.size() << " coefficients, expected " << n;
    throw InputError(os.str());
  }
  for (double x : c)
    if (!std::isfinite(x)) throw InputError("objective has a non-finite coefficient");
}

}  // namespace

void LpProblem::validate() const {
  validate_constraints(*this);
  validate_objective(objective, num_vars);
}

double max_violation(const LpProblem& p, std::span<const double> v) {
  double worst = 0.0;
  for (const auto& row : p.eq_constraints) {
    const double lhs = kernels::dot(row.coeffs, v);
    worst = std::max(worst, std::abs(lhs - row.rhs));
  }
  for (const auto& row : p.ineq_constraints) {
    const double lhs = kernels::dot(row.coeffs, v);
    worst = std::max(worst, row.rhs - lhs);
  }
  for (std::size_t j = 0; j < p.num_vars && j < v.size(); ++j) {
    worst = std::max(worst, p.var_bounds[j].lo - v[j]);
    worst = std::max(worst, v[j] - p.var_bounds[j].hi);
  }
  return worst;
}

// Every primal constraint is rewritten as a >= row  a_k · v >= b_k  and
// becomes one nonnegative dual column k. Equalities contribute a +row and a
// -row, finite bounds contribute unit rows.
struct Solver::Impl {
  enum class Origin : std::uint8_t { Ineq, EqPlus, EqMinus, Lower, Upper };

  std::size_t n = 0;
  std::size_t num_ineq = 0;
  SolverOptions opt;

  std::vector<std::size_t> col_start;  // CSC layout of Aᵀ, one column per row
  std::vector<std::uint32_t> row_index;
  std::vector<double> value;
  std::vector<double> b;
  std::vector<Origin> origin;
  std::vector<std::size_t> source;

  std::size_t num_cols() const { return b.size(); }

  void add_column(const std::vector<double>& coeffs, double scale, double rhs, Origin o,
                  std::size_t src) {
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != 0.0) {
        row_index.push_back(static_cast<std::uint32_t>(j));
        value.push_back(scale * coeffs[j]);
      }
    }
    col_start.push_back(row_index.size());
    b.push_back(rhs);
    origin.push_back(o);
    source.push_back(src);
  }

  void add_unit(std::size_t j, double scale, double rhs, Origin o) {
    row_index.push_back(static_cast<std::uint32_t>(j));
    value.push_back(scale);
    col_start.push_back(row_index.size());
    b.push_back(rhs);
    origin.push_back(o);
    source.push_back(j);
  }

  explicit Impl(const LpProblem& p, SolverOptions o) : n(p.num_vars), opt(o) {
    num_ineq = p.ineq_constraints.size();
    col_start.push_back(0);
    for (std::size_t i = 0; i < p.ineq_constraints.size(); ++i)
      add_column(p.ineq_constraints[i].coeffs, 1.0, p.ineq_constraints[i].rhs, Origin::Ineq, i);
    for (std::size_t i = 0; i < p.eq_constraints.size(); ++i) {
      const auto& row = p.eq_constraints[i];
      add_column(row.coeffs, 1.0, row.rhs, Origin::EqPlus, i);
      add_column(row.coeffs, -1.0, -row.rhs, Origin::EqMinus, i);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (p.var_bounds[j].lo != -kInf) add_unit(j, 1.0, p.var_bounds[j].lo, Origin::Lower);
      if (p.var_bounds[j].hi != kInf) add_unit(j, -1.0, -p.var_bounds[j].hi, Origin::Upper);
    }
  }

  enum class PhaseResult { Optimal, Unbounded };

  // State of one solve. Columns K..K+n-1 are artificials (unit vectors).
  struct Run {
    const Impl& lp;
    std::vector<double> sign;      // row scaling making the rhs nonnegative
    Eigen::VectorXd rhs;
    std::vector<std::size_t> basis;
    std::vector<char> in_basis;
    std::vector<double> cost;      // current phase cost per column
    Eigen::VectorXd x_basic;
    Eigen::VectorXd w;             // simplex multipliers of the scaled system
    std::vector<double> w_signed;  // w[r] * sign[r], for pricing
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    std::size_t iterations = 0;

    Run(const Impl& impl, std::span<const double> c) : lp(impl) {
      const std::size_t n = lp.n;
      const std::size_t total = lp.num_cols() + n;
      sign.resize(n);
      rhs.resize(static_cast<Eigen::Index>(n));
      for (std::size_t j = 0; j < n; ++j) {
        sign[j] = c[j] < 0.0 ? -1.0 : 1.0;
        rhs[static_cast<Eigen::Index>(j)] = std::abs(c[j]);
      }
      basis.resize(n);
      in_basis.assign(total, 0);
      for (std::size_t j = 0; j < n; ++j) {
        basis[j] = lp.num_cols() + j;
        in_basis[basis[j]] = 1;
      }
      cost.assign(total, 0.0);
    }

    bool is_artificial(std::size_t k) const { return k >= lp.num_cols(); }

    void column(std::size_t k, Eigen::VectorXd& out) const {
      out.setZero(static_cast<Eigen::Index>(lp.n));
      if (is_artificial(k)) {
        out[static_cast<Eigen::Index>(k - lp.num_cols())] = 1.0;
        return;
      }
      for (std::size_t e = lp.col_start[k]; e < lp.col_start[k + 1]; ++e) {
        const std::uint32_t r = lp.row_index[e];
        out[r] = sign[r] * lp.value[e];
      }
    }

    void factor() {
      const auto n = static_cast<Eigen::Index>(lp.n);
      Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
      Eigen::VectorXd col;
      for (Eigen::Index r = 0; r < n; ++r) {
        column(basis[static_cast<std::size_t>(r)], col);
        B.col(r) = col;
      }
      lu.compute(B);
      x_basic = lu.solve(rhs);
      Eigen::VectorXd cb(n);
      for (Eigen::Index r = 0; r < n; ++r) cb[r] = cost[basis[static_cast<std::size_t>(r)]];
      w = lu.transpose().solve(cb);
      w_signed.resize(lp.n);
      for (std::size_t r = 0; r < lp.n; ++r) w_signed[r] = w[static_cast<Eigen::Index>(r)] * sign[r];
    }

    double reduced_cost(std::size_t k) const {
      if (is_artificial(k)) return cost[k] - w[static_cast<Eigen::Index>(k - lp.num_cols())];
      double d = cost[k];
      for (std::size_t e = lp.col_start[k]; e < lp.col_start[k + 1]; ++e)
        d -= w_signed[lp.row_index[e]] * lp.value[e];
      return d;
    }

    PhaseResult iterate(bool artificials_may_enter) {
      constexpr double kDjTol = 1e-10;
      constexpr double kPivotTol = 1e-9;
      std::size_t degenerate_run = 0;
      Eigen::VectorXd a_q;
      const std::size_t K = lp.num_cols();
      const std::size_t limit = artificials_may_enter ? K + lp.n : K;
      for (;;) {
        if (++iterations > lp.opt.max_iterations)
          throw SolverError("simplex iteration limit exceeded");
        factor();
        const bool bland = degenerate_run >= lp.opt.degenerate_switch;

        std::size_t entering = limit;
        double best = -kDjTol;
        for (std::size_t k = 0; k < limit; ++k) {
          if (in_basis[k]) continue;
          const double d = reduced_cost(k);
          if (d < best) {
            entering = k;
            if (bland) break;
            best = d;
          }
        }
        if (entering == limit) return PhaseResult::Optimal;

        column(entering, a_q);
        const Eigen::VectorXd alpha = lu.solve(a_q);
        std::size_t leave = lp.n;
        double best_ratio = kInf;
        double best_alpha = 0.0;
        for (std::size_t r = 0; r < lp.n; ++r) {
          const double ar = alpha[static_cast<Eigen::Index>(r)];
          double ratio;
          double mag;
          if (!artificials_may_enter && is_artificial(basis[r])) {
            // Artificials are fixed at zero once phase 1 is over.
            if (std::abs(ar) <= kPivotTol) continue;
            ratio = 0.0;
            mag = std::abs(ar);
          } else {
            if (ar <= kPivotTol) continue;
            ratio = std::max(x_basic[static_cast<Eigen::Index>(r)], 0.0) / ar;
            mag = ar;
          }
          bool take = false;
          if (leave == lp.n || ratio < best_ratio - 1e-12 * (1.0 + best_ratio)) {
            take = true;
          } else if (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio)) {
            take = bland ? basis[r] < basis[leave] : mag > best_alpha;
          }
          if (take) {
            leave = r;
            best_ratio = ratio;
            best_alpha = mag;
          }
        }
        if (leave == lp.n) return PhaseResult::Unbounded;

        degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
        in_basis[basis[leave]] = 0;
        basis[leave] = entering;
        in_basis[entering] = 1;
      }
    }

    double artificial_sum() const {
      double s = 0.0;
      for (std::size_t r = 0; r < lp.n; ++r)
        if (is_artificial(basis[r])) s += std::max(x_basic[static_cast<Eigen::Index>(r)], 0.0);
      return s;
    }

    void set_phase2_cost() {
      const std::size_t K = lp.num_cols();
      for (std::size_t k = 0; k < K; ++k) cost[k] = -lp.b[k];
      for (std::size_t k = K; k < K + lp.n; ++k) cost[k] = 0.0;
    }
  };

  // Returns true if the dual reached optimality (primal feasible and
  // bounded); false if phase 1 certified dual infeasibility. Sets `unbounded`
  // if the dual is unbounded (primal infeasible).
  bool run_two_phase(Run& run, bool& dual_unbounded, double scale) const {
    dual_unbounded = false;
    const std::size_t K = num_cols();
    for (std::size_t k = K; k < K + n; ++k) run.cost[k] = 1.0;
    run.iterate(true);
    run.factor();
    if (run.artificial_sum() > opt.tol.eps_feas * std::max(1.0, scale)) return false;
    run.set_phase2_cost();
    if (run.iterate(false) == PhaseResult::Unbounded) {
      dual_unbounded = true;
      return true;
    }
    run.factor();
    return true;
  }

  LpOutcome solve(std::span<const double> c) const {
    LpOutcome out;
    double scale = 0.0;
    for (double x : c) scale = std::max(scale, std::abs(x));

    Run run(*this, c);
    bool dual_unbounded = false;
    const bool dual_feasible = run_two_phase(run, dual_unbounded, scale);
    out.iterations = run.iterations;
    if (dual_feasible && dual_unbounded) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    if (!dual_feasible) {
      // Primal is infeasible or unbounded; decide with a zero objective.
      const std::vector<double> zero(n, 0.0);
      Run feas(*this, zero);
      bool feas_unbounded = false;
      run_two_phase(feas, feas_unbounded, 0.0);
      out.iterations += feas.iterations;
      out.status = feas_unbounded ? LpStatus::Infeasible : LpStatus::Unbounded;
      return out;
    }

    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = -run.sign[j] * run.w[static_cast<Eigen::Index>(j)];
    std::vector<double> mult(num_ineq, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t k = run.basis[r];
      if (k < num_cols() && origin[k] == Origin::Ineq)
        mult[source[k]] = std::max(run.x_basic[static_cast<Eigen::Index>(r)], 0.0);
    }
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += c[j] * v[j];

    out.status = LpStatus::Optimal;
    out.optimal_value = value;
    out.witness = std::move(v);
    out.ineq_multipliers = std::move(mult);
    return out;
  }
};

Solver::Solver(const LpProblem& constraints, SolverOptions options) {
  validate_constraints(constraints);
  impl_ = std::make_unique<Impl>(constraints, options);
}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

std::size_t Solver::num_vars() const { return impl_->n; }

LpOutcome Solver::solve(std::span<const double> objective) const {
  validate_objective(objective, impl_->n);
  return impl_->solve(objective);
}

LpOutcome solve(const LpProblem& p, const SolverOptions& options) {
  p.validate();
  return Solver(p, options).solve(p.objective);
}

}  // namespace mtdm::lp
