#include "mtdm/credal_set.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "mtdm/error.hpp"
#include "mtdm/kernels.hpp"

namespace mtdm {

StateSpace::StateSpace(std::vector<std::string> states) : states_(std::move(states)) {
  if (states_.empty()) throw InputError("state space is empty");
  std::set<std::string> seen;
  for (const auto& s : states_)
    if (!seen.insert(s).second) throw InputError("duplicate state name '" + s + "'");
}

StateSpace StateSpace::numbered(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) names.push_back("s" + std::to_string(i));
  return StateSpace(std::move(names));
}

CredalSet::CredalSet(StateSpace space, std::vector<ExpectationBound> constraints,
                     std::vector<Probability> extreme_points, double eps_feas)
    : space_(std::move(space)),
      constraints_(std::move(constraints)),
      extreme_points_(std::move(extreme_points)) {
  const std::size_t m = space_.size();
  for (std::size_t l = 0; l < constraints_.size(); ++l) {
    const auto& c = constraints_[l];
    if (c.f.size() != m)
      throw InputError("credal constraint " + std::to_string(l) + " has " +
                       std::to_string(c.f.size()) + " coefficients, expected " +
                       std::to_string(m));
    if (std::isnan(c.lo) || std::isnan(c.hi) || c.lo > c.hi)
      throw InputError("credal constraint " + std::to_string(l) + " has lo > hi");
  }
  for (std::size_t k = 0; k < extreme_points_.size(); ++k) {
    if (extreme_points_[k].size() != m)
      throw InputError("extreme point " + std::to_string(k) + " has " +
                       std::to_string(extreme_points_[k].size()) + " entries, expected " +
                       std::to_string(m));
    if (!contains(extreme_points_[k], eps_feas))
      throw InputError("extreme point " + std::to_string(k) +
                       " is not a probability vector satisfying every constraint");
  }
}

CredalSet CredalSet::from_constraints(StateSpace space, std::vector<ExpectationBound> constraints) {
  return CredalSet(std::move(space), std::move(constraints), {});
}

CredalSet CredalSet::from_extreme_points(StateSpace space, std::vector<Probability> points) {
  return CredalSet(std::move(space), {}, std::move(points));
}

bool CredalSet::contains(std::span<const double> pi, double eps) const {
  if (pi.size() != space_.size()) return false;
  double sum = 0.0;
  for (double p : pi) {
    if (!(p >= -eps)) return false;
    sum += p;
  }
  if (std::abs(sum - 1.0) > eps) return false;
  for (const auto& c : constraints_) {
    const double e = kernels::dot(c.f, pi);
    if (e < c.lo - eps || e > c.hi + eps) return false;
  }
  return true;
}

CredalSet CredalSet::with_extreme_points(std::vector<Probability> points) const {
  return CredalSet(space_, constraints_, std::move(points));
}

CredalSet ordered_family(const StateSpace& space) {
  const std::size_t m = space.size();
  std::vector<ExpectationBound> constraints;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::vector<double> f(m, 0.0);
    f[i] = 1.0;
    f[i + 1] = -1.0;
    constraints.push_back({std::move(f), 0.0, std::numeric_limits<double>::infinity()});
  }
  std::vector<Probability> points;
  for (std::size_t k = 1; k <= m; ++k) {
    Probability p(m, 0.0);
    for (std::size_t j = 0; j < k; ++j) p[j] = 1.0 / static_cast<double>(k);
    points.push_back(std::move(p));
  }
  return CredalSet(space, std::move(constraints), std::move(points));
}

CredalSet full_simplex(const StateSpace& space) {
  const std::size_t m = space.size();
  std::vector<Probability> points;
  for (std::size_t k = 0; k < m; ++k) {
    Probability p(m, 0.0);
    p[k] = 1.0;
    points.push_back(std::move(p));
  }
  return CredalSet(space, {}, std::move(points));
}

CredalSet perturbed(const CredalSet& cs, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("perturbation must lie in (0, 1)");
  const double m = static_cast<double>(cs.space().size());
  std::vector<Probability> points = cs.extreme_points();
  for (auto& p : points)
    for (auto& x : p) x = (1.0 - eps) * x + eps / m;
  return CredalSet::from_extreme_points(cs.space(), std::move(points));
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

std::vector<Probability> enumerate_extreme_points(const CredalSet& cs,
                                                  const EnumerationLimits& limits) {
  const std::size_t m = cs.space().size();
  if (m > limits.max_states || cs.constraints().size() > limits.max_constraints) {
    std::ostringstream os;
    os << "credal set too large for exact enumeration (" << m << " states, "
       << cs.constraints().size() << " constraints; limits " << limits.max_states << " / "
       << limits.max_constraints << ")";
    throw EnumerationLimitError(os.str());
  }

  // Inequality pool a · π >= b.
  std::vector<std::vector<double>> pool_a;
  std::vector<double> pool_b;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> a(m, 0.0);
    a[i] = 1.0;
    pool_a.push_back(std::move(a));
    pool_b.push_back(0.0);
  }
  for (const auto& c : cs.constraints()) {
    if (std::isfinite(c.lo)) {
      pool_a.push_back(c.f);
      pool_b.push_back(c.lo);
    }
    if (std::isfinite(c.hi)) {
      std::vector<double> a = c.f;
      for (auto& x : a) x = -x;
      pool_a.push_back(std::move(a));
      pool_b.push_back(-c.hi);
    }
  }
  const std::size_t pool = pool_a.size();
  const std::size_t k = m - 1;
  if (binomial(pool, k) > limits.max_bases) {
    std::ostringstream os;
    os << "credal set too large for exact enumeration (" << binomial(pool, k)
       << " candidate bases exceed the limit " << limits.max_bases << ")";
    throw EnumerationLimitError(os.str());
  }

  const auto mi = static_cast<Eigen::Index>(m);
  std::vector<Probability> found;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Eigen::MatrixXd A(mi, mi);
  Eigen::VectorXd rhs(mi);
  for (;;) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < m; ++c)
        A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = pool_a[idx[r]][c];
      rhs[static_cast<Eigen::Index>(r)] = pool_b[idx[r]];
    }
    A.row(mi - 1).setOnes();
    rhs[mi - 1] = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-10);
    if (lu.isInvertible()) {
      const Eigen::VectorXd x = lu.solve(rhs);
      Probability pi(x.data(), x.data() + m);
      bool feasible = true;
      for (std::size_t r = 0; r < pool && feasible; ++r)
        feasible = kernels::dot(pool_a[r], pi) >= pool_b[r] - limits.eps_feas;
      if (feasible) {
        for (auto& p : pi)
          if (std::abs(p) < 1e-15) p = 0.0;
        const bool dup = std::any_of(found.begin(), found.end(), [&](const Probability& q) {
          double d = 0.0;
          for (std::size_t j = 0; j < m; ++j) d = std::max(d, std::abs(q[j] - pi[j]));
          return d <= limits.merge_tol;
        });
        if (!dup) found.push_back(std::move(pi));
      }
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (found.empty()) throw InconsistencyError("credal constraints admit no probability vector");
  std::sort(found.begin(), found.end(), std::greater<>());
  return found;
}

double lower_expectation(const CredalSet& cs, std::span<const double> g) {
  if (cs.extreme_points().empty()) throw InputError("credal set has no extreme points attached");
  if (g.size() != cs.space().size())
    throw InputError("gamble has " + std::to_string(g.size()) + " entries, expected " +
                     std::to_string(cs.space().size()));
  double best = std::numeric_limits<double>::infinity();
  for (const auto& pi : cs.extreme_points()) best = std::min(best, kernels::dot(g, pi));
  return best;
}

}  // namespace mtdm
