#include "mtdm/dominance.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <thread>

#include "mtdm/error.hpp"

namespace mtdm {

DominanceChecker::DominanceChecker(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                                   DominanceOptions options)
    : ps_(&ps), cs_(&cs), delta_(delta), options_(options), nabla_(nabla_constraints(ps, delta)) {
  if (cs.extreme_points().empty()) throw InputError("credal set has no extreme points attached");
  solver_ = std::make_unique<lp::Solver>(nabla_, options_.lp);
  std::vector<double> zero(ps.size(), 0.0);
  if (solver_->solve(zero).status != lp::LpStatus::Optimal)
    throw InconsistencyError("preference system is not " + std::to_string(delta) +
                             "-consistent");
}

DominanceChecker::~DominanceChecker() = default;
DominanceChecker::DominanceChecker(DominanceChecker&&) noexcept = default;
DominanceChecker& DominanceChecker::operator=(DominanceChecker&&) noexcept = default;

void DominanceChecker::check_act(const Act& x) const {
  const std::size_t m = cs_->space().size();
  if (x.outcome_index.size() != m)
    throw InputError("act '" + x.name + "' has " + std::to_string(x.outcome_index.size()) +
                     " outcomes, expected " + std::to_string(m));
  for (std::size_t s = 0; s < m; ++s)
    if (x.outcome_index[s] >= ps_->size())
      throw InputError("act '" + x.name + "' maps state " + cs_->space().states()[s] +
                       " to unknown element " + std::to_string(x.outcome_index[s]));
}

std::vector<double> DominanceChecker::objective(std::span<const double> pi, const Act& xi,
                                                const Act& xj) const {
  std::vector<double> c(ps_->size(), 0.0);
  for (std::size_t s = 0; s < pi.size(); ++s) {
    c[xi.outcome_index[s]] += pi[s];
    c[xj.outcome_index[s]] -= pi[s];
  }
  return c;
}

lp::LpProblem DominanceChecker::dominance_lp(const Act& xi, const Act& xj, std::size_t t) const {
  check_act(xi);
  check_act(xj);
  if (t >= cs_->extreme_points().size())
    throw InputError("extreme point index " + std::to_string(t) + " out of range");
  lp::LpProblem p = nabla_;
  p.objective = objective(cs_->extreme_points()[t], xi, xj);
  return p;
}

std::pair<double, std::vector<double>> DominanceChecker::solve_at(std::span<const double> pi,
                                                                  const Act& xi,
                                                                  const Act& xj) const {
  const auto out = solver_->solve(objective(pi, xi, xj));
  switch (out.status) {
    case lp::LpStatus::Optimal:
      return {*out.optimal_value, *out.witness};
    case lp::LpStatus::Infeasible:
      throw InconsistencyError("∇ constraints became infeasible during a dominance solve");
    case lp::LpStatus::Unbounded:
      break;
  }
  throw SolverError("dominance LP reported unbounded over a bounded region");
}

double DominanceChecker::opt_at(std::span<const double> pi, const Act& xi, const Act& xj) const {
  return solve_at(pi, xi, xj).first;
}

PairVerdict DominanceChecker::dominates(const Act& xi, const Act& xj) const {
  check_act(xi);
  check_act(xj);
  const auto& points = cs_->extreme_points();
  PairVerdict v;
  v.opt_by_t.assign(points.size(), 0.0);
  if (xi.outcome_index == xj.outcome_index) {
    v.dominates = true;
    return v;
  }
  v.min_opt = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < points.size(); ++t) {
    auto [val, w] = solve_at(points[t], xi, xj);
    v.opt_by_t[t] = val;
    if (val < v.min_opt) {
      v.min_opt = val;
      v.argmin_t = t;
      v.witness = std::move(w);
    }
  }
  v.dominates = v.min_opt >= -options_.eps_opt;
  v.marginal = v.dominates && v.min_opt < 0.0;
  return v;
}

DominanceRelation DominanceChecker::full_relation(std::span<const Act> acts) const {
  for (const auto& a : acts) check_act(a);
  const std::size_t n = acts.size();
  DominanceRelation rel;
  rel.delta = delta_;
  rel.eps_opt = options_.eps_opt;
  for (const auto& a : acts) rel.acts.push_back(a.name);
  rel.dominates.assign(n, std::vector<bool>(n, false));
  rel.opt_values.assign(n, std::vector<double>(n, 0.0));
  rel.opt_by_t.assign(n, std::vector<std::vector<double>>(n));
  rel.witnesses.assign(n, std::vector<std::vector<double>>(n));
  rel.marginal.assign(n, std::vector<bool>(n, false));

  std::vector<PairVerdict> verdicts(n * n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n * n; k = next++) {
      const std::size_t i = k / n;
      const std::size_t j = k % n;
      if (i == j) {
        verdicts[k].dominates = true;
        verdicts[k].opt_by_t.assign(cs_->extreme_points().size(), 0.0);
      } else {
        verdicts[k] = dominates(acts[i], acts[j]);
      }
    }
  };
  unsigned threads = options_.threads == 0 ? std::thread::hardware_concurrency() : options_.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n * n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto& v = verdicts[i * n + j];
      rel.dominates[i][j] = v.dominates;
      rel.opt_values[i][j] = v.min_opt;
      rel.marginal[i][j] = v.marginal;
      rel.opt_by_t[i][j] = std::move(v.opt_by_t);
      rel.witnesses[i][j] = std::move(v.witness);
    }
  return rel;
}

lp::LpProblem dominance_lp(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                           const Act& xi, const Act& xj, std::size_t t) {
  return DominanceChecker(ps, cs, delta).dominance_lp(xi, xj, t);
}

PairVerdict dominates(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                      const Act& xi, const Act& xj, const DominanceOptions& options) {
  return DominanceChecker(ps, cs, delta, options).dominates(xi, xj);
}

DominanceRelation full_relation(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                                std::span<const Act> acts, const DominanceOptions& options) {
  return DominanceChecker(ps, cs, delta, options).full_relation(acts);
}

std::vector<std::size_t> maximal_set(const DominanceRelation& rel) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    bool all = true;
    for (std::size_t j = 0; j < rel.size() && all; ++j) all = rel.dominates[i][j];
    if (all) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> undominated_set(const DominanceRelation& rel) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    bool beaten = false;
    for (std::size_t j = 0; j < rel.size() && !beaten; ++j) beaten = rel.strictly(j, i);
    if (!beaten) out.push_back(i);
  }
  return out;
}

HasseDiagram hasse_edges(const DominanceRelation& rel) {
  const std::size_t n = rel.size();
  HasseDiagram h;
  std::vector<std::size_t> cls(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != n) continue;
    cls[i] = h.classes.size();
    h.classes.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j)
      if (cls[j] == n && rel.dominates[i][j] && rel.dominates[j][i]) {
        cls[j] = cls[i];
        h.classes.back().push_back(j);
      }
  }
  const std::size_t c = h.classes.size();
  auto strict = [&](std::size_t a, std::size_t b) {
    return a != b && rel.strictly(h.classes[a].front(), h.classes[b].front());
  };
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      if (!strict(a, b)) continue;
      bool implied = false;
      for (std::size_t m = 0; m < c && !implied; ++m) implied = strict(a, m) && strict(m, b);
      if (!implied) h.edges.emplace_back(a, b);
    }
  return h;
}

std::vector<std::array<std::size_t, 3>> transitivity_violations(const DominanceRelation& rel) {
  std::vector<std::array<std::size_t, 3>> out;
  const std::size_t n = rel.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel.dominates[i][j])
        for (std::size_t k = 0; k < n; ++k)
          if (rel.dominates[j][k] && !rel.dominates[i][k]) out.push_back({i, j, k});
  return out;
}

}  // namespace mtdm
