#include "mtdm/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mtdm/error.hpp"
#include "mtdm/kernels.hpp"

namespace mtdm {

namespace {

constexpr double kTauTol = 1e-9;
constexpr double kMultiplierTol = 1e-10;
constexpr double kRateTol = 1e-13;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ∇^δ as E v = e, G v >= h with the box folded into G.
struct Polytope {
  std::size_t n = 0;
  Eigen::MatrixXd E;
  Eigen::VectorXd e;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
};

Polytope to_polytope(const lp::LpProblem& p) {
  Polytope poly;
  const std::size_t n = p.num_vars;
  poly.n = n;
  const auto ni = static_cast<Eigen::Index>(n);
  std::size_t bound_rows = 0;
  for (const auto& b : p.var_bounds) bound_rows += std::isfinite(b.lo) + std::isfinite(b.hi);

  poly.E.resize(static_cast<Eigen::Index>(p.eq_constraints.size()), ni);
  poly.e.resize(static_cast<Eigen::Index>(p.eq_constraints.size()));
  for (std::size_t r = 0; r < p.eq_constraints.size(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    for (std::size_t c = 0; c < n; ++c)
      poly.E(ri, static_cast<Eigen::Index>(c)) = p.eq_constraints[r].coeffs[c];
    poly.e[ri] = p.eq_constraints[r].rhs;
  }

  const auto rows = static_cast<Eigen::Index>(p.ineq_constraints.size() + bound_rows);
  poly.G.setZero(rows, ni);
  poly.h.resize(rows);
  Eigen::Index r = 0;
  for (const auto& row : p.ineq_constraints) {
    for (std::size_t c = 0; c < n; ++c) poly.G(r, static_cast<Eigen::Index>(c)) = row.coeffs[c];
    poly.h[r++] = row.rhs;
  }
  for (std::size_t c = 0; c < n; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    if (std::isfinite(p.var_bounds[c].lo)) {
      poly.G(r, ci) = 1.0;
      poly.h[r++] = p.var_bounds[c].lo;
    }
    if (std::isfinite(p.var_bounds[c].hi)) {
      poly.G(r, ci) = -1.0;
      poly.h[r++] = -p.var_bounds[c].hi;
    }
  }
  return poly;
}

std::vector<double> row_of(const Eigen::MatrixXd& M, Eigen::Index r, std::size_t extra) {
  std::vector<double> out(static_cast<std::size_t>(M.cols()) + extra, 0.0);
  for (Eigen::Index c = 0; c < M.cols(); ++c) out[static_cast<std::size_t>(c)] = M(r, c);
  return out;
}

// Max-min-slack point. Rows of G whose slack is forced to zero are flagged
// in `implicit`.
Eigen::VectorXd interior_point(const Polytope& poly, std::vector<char>& implicit,
                               const lp::SolverOptions& options) {
  const std::size_t n = poly.n;
  const auto rows = static_cast<std::size_t>(poly.G.rows());
  implicit.assign(rows, 0);
  for (;;) {
    lp::LpProblem p;
    p.num_vars = n + 1;
    p.objective.assign(n + 1, 0.0);
    p.objective[n] = -1.0;
    p.var_bounds.assign(n + 1, lp::VarBounds{-lp::kInf, lp::kInf});
    p.var_bounds[n].hi = 1.0;
    for (Eigen::Index r = 0; r < poly.E.rows(); ++r)
      p.eq_constraints.push_back({row_of(poly.E, r, 1), poly.e[r]});
    std::vector<std::size_t> open;
    for (std::size_t r = 0; r < rows; ++r) {
      const auto ri = static_cast<Eigen::Index>(r);
      if (implicit[r]) {
        p.eq_constraints.push_back({row_of(poly.G, ri, 1), poly.h[ri]});
      } else {
        auto coeffs = row_of(poly.G, ri, 1);
        coeffs[n] = -1.0;
        p.ineq_constraints.push_back({std::move(coeffs), poly.h[ri]});
        open.push_back(r);
      }
    }
    const auto out = lp::solve(p, options);
    if (out.status != lp::LpStatus::Optimal)
      throw InconsistencyError("∇ constraints are infeasible; nothing to sample");
    const auto& w = *out.witness;
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) v[static_cast<Eigen::Index>(c)] = w[c];
    if (open.empty() || w[n] > kTauTol) return v;

    const auto& y = *out.ineq_multipliers;
    bool moved = false;
    for (std::size_t k = 0; k < open.size(); ++k)
      if (y[k] > kMultiplierTol) {
        implicit[open[k]] = 1;
        moved = true;
      }
    if (!moved) throw SolverError("could not isolate the implicit equalities of ∇");
  }
}

struct Walk {
  Eigen::VectorXd v0;
  Eigen::MatrixXd N;            // orthonormal basis of the affine hull directions
  std::vector<Eigen::Index> rows;  // rows of G that vary along the hull
  Eigen::MatrixXd G_rows;
  Eigen::VectorXd h_rows;
  std::vector<double> rates;    // column-major: rates[c * q + i]
  double constant_margin = std::numeric_limits<double>::infinity();
};

Walk prepare(const Polytope& poly, const std::vector<char>& implicit, Eigen::VectorXd v0) {
  const auto n = static_cast<Eigen::Index>(poly.n);
  Walk w;
  w.v0 = std::move(v0);

  Eigen::Index k = poly.E.rows();
  for (char f : implicit) k += f;
  Eigen::MatrixXd A(k, n);
  A.topRows(poly.E.rows()) = poly.E;
  Eigen::Index r = poly.E.rows();
  for (std::size_t i = 0; i < implicit.size(); ++i)
    if (implicit[i]) A.row(r++) = poly.G.row(static_cast<Eigen::Index>(i));

  if (k == 0) {
    w.N = Eigen::MatrixXd::Identity(n, n);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = 1e-9 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > cut) ++rank;
    w.N = svd.matrixV().rightCols(n - rank);
  }
  const Eigen::Index d = w.N.cols();

  const Eigen::MatrixXd R = poly.G * w.N;
  const Eigen::VectorXd s0 = poly.G * w.v0 - poly.h;
  for (Eigen::Index i = 0; i < poly.G.rows(); ++i) {
    if (d > 0 && R.row(i).cwiseAbs().maxCoeff() > 1e-12)
      w.rows.push_back(i);
    else
      w.constant_margin = std::min(w.constant_margin, s0[i]);
  }
  const auto q = static_cast<Eigen::Index>(w.rows.size());
  w.G_rows.resize(q, n);
  w.h_rows.resize(q);
  w.rates.assign(static_cast<std::size_t>(q * d), 0.0);
  for (Eigen::Index i = 0; i < q; ++i) {
    w.G_rows.row(i) = poly.G.row(w.rows[static_cast<std::size_t>(i)]);
    w.h_rows[i] = poly.h[w.rows[static_cast<std::size_t>(i)]];
    for (Eigen::Index c = 0; c < d; ++c)
      w.rates[static_cast<std::size_t>(c * q + i)] = R(w.rows[static_cast<std::size_t>(i)], c);
  }
  return w;
}

void check_act(const PreferenceSystem& ps, const CredalSet& cs, const Act& x) {
  if (x.outcome_index.size() != cs.space().size())
    throw InputError("act '" + x.name + "' has " + std::to_string(x.outcome_index.size()) +
                     " outcomes, expected " + std::to_string(cs.space().size()));
  for (std::size_t i : x.outcome_index)
    if (i >= ps.size())
      throw InputError("act '" + x.name + "' references unknown element " + std::to_string(i));
}

}  // namespace

UtilitySamples sample_utilities(const PreferenceSystem& ps, double delta, std::size_t count,
                                std::uint64_t seed, const SamplerOptions& options) {
  const auto problem = nabla_constraints(ps, delta);
  const Polytope poly = to_polytope(problem);
  std::vector<char> implicit;
  Eigen::VectorXd v0 = interior_point(poly, implicit, options.lp);
  const Walk w = prepare(poly, implicit, std::move(v0));

  UtilitySamples out;
  const auto d = static_cast<std::size_t>(w.N.cols());
  out.dimension = d;
  out.degenerate = d == 0;
  const std::size_t q = w.rows.size();

  auto record = [&](const Eigen::VectorXd& v, const Eigen::VectorXd& slack) -> bool {
    std::vector<double> values(v.data(), v.data() + v.size());
    double margin = std::min(w.constant_margin, q > 0 ? slack.minCoeff() : lp::kInf);
    if (poly.E.rows() > 0) {
      const double resid = (poly.E * v - poly.e).cwiseAbs().maxCoeff();
      margin = std::min(margin, -resid);
    }
    if (margin < -options.eps_feas) return false;
    out.samples.push_back({std::move(values), margin});
    return true;
  };

  Eigen::VectorXd slack = w.G_rows * w.v0 - w.h_rows;
  if (out.degenerate) {
    for (std::size_t i = 0; i < count; ++i)
      if (!record(w.v0, slack)) throw SolverError("sampler start point violates ∇");
    return out;
  }

  std::mt19937_64 rng(seed);
  const auto& kt = kernels::active();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  std::vector<double> s(slack.data(), slack.data() + q);
  std::size_t rejected = 0;
  while (out.samples.size() < count) {
    for (std::size_t step = 0; step < options.burn_in; ++step) {
      const std::size_t c = static_cast<std::size_t>(rng() % d);
      const double* rate = &w.rates[c * q];
      const auto ch = kt.chord(s.data(), rate, q, kRateTol, -lp::kInf, lp::kInf);
      const double u = uniform01(rng);
      if (!(ch.hi > ch.lo) || !std::isfinite(ch.lo) || !std::isfinite(ch.hi)) continue;
      const double t = ch.lo + (ch.hi - ch.lo) * u;
      z[static_cast<Eigen::Index>(c)] += t;
      kt.axpy(t, rate, s.data(), q);
    }
    const Eigen::VectorXd v = w.v0 + w.N * z;
    slack = w.G_rows * v - w.h_rows;
    std::copy(slack.data(), slack.data() + q, s.begin());
    if (!record(v, slack) && ++rejected > count + 100)
      throw SolverError("hit-and-run drifted outside ∇ too often");
  }
  return out;
}

double expected_utility(std::span<const double> u, std::span<const double> pi, const Act& x) {
  double sum = 0.0;
  for (std::size_t s = 0; s < pi.size(); ++s) sum += pi[s] * u[x.outcome_index[s]];
  return sum;
}

RefutationTable refute_all(const PreferenceSystem& ps, const CredalSet& cs, double delta,
                           std::span<const Act> acts, std::size_t count, std::uint64_t seed,
                           const RefuteOptions& options) {
  if (cs.extreme_points().empty()) throw InputError("credal set has no extreme points attached");
  for (const auto& a : acts) check_act(ps, cs, a);
  const auto samples = sample_utilities(ps, delta, count, seed, options.sampler);

  const std::size_t n = acts.size();
  const std::size_t m = cs.space().size();
  const auto& points = cs.extreme_points();
  RefutationTable table;
  table.found.assign(n, std::vector<std::optional<Counterexample>>(n));
  table.samples = samples.samples.size();
  table.degenerate = samples.degenerate;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Probability> pis = points;
  pis.emplace_back(m, 0.0);
  std::vector<double> weights(points.size());
  std::vector<double> eu(n);
  std::size_t open = n * (n - (n > 0));
  for (const auto& su : samples.samples) {
    double total = 0.0;
    for (auto& wk : weights) total += (wk = -std::log1p(-uniform01(rng)));
    auto& mix = pis.back();
    std::fill(mix.begin(), mix.end(), 0.0);
    for (std::size_t k = 0; k < points.size(); ++k)
      for (std::size_t s = 0; s < m; ++s) mix[s] += weights[k] / total * points[k][s];
    if (open == 0) continue;

    for (const auto& pi : pis) {
      for (std::size_t a = 0; a < n; ++a) eu[a] = expected_utility(su.values, pi, acts[a]);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || table.found[i][j]) continue;
          const double gap = eu[i] - eu[j];
          if (gap < -options.eps_opt) {
            table.found[i][j] = Counterexample{su.values, pi, gap};
            --open;
          }
        }
    }
  }
  return table;
}

std::optional<Counterexample> refute_dominance(const PreferenceSystem& ps, const CredalSet& cs,
                                               double delta, const Act& xi, const Act& xj,
                                               std::size_t count, std::uint64_t seed,
                                               const RefuteOptions& options) {
  const Act acts[] = {xi, xj};
  auto table = refute_all(ps, cs, delta, acts, count, seed, options);
  return std::move(table.found[0][1]);
}

}  // namespace mtdm
