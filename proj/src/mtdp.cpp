#include "mtdm/mtdp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mtdm/error.hpp"

namespace mtdm {

Mtdp::Mtdp(StateSpace space, std::vector<std::string> actions,
           const std::vector<std::vector<std::vector<double>>>& table, std::size_t num_cardinal)
    : space_(std::move(space)), actions_(std::move(actions)), num_targets_(0),
      num_cardinal_(num_cardinal) {
  if (actions_.empty()) throw InputError("decision problem has no actions");
  if (table.size() != actions_.size())
    throw InputError("value table has " + std::to_string(table.size()) + " actions, expected " +
                     std::to_string(actions_.size()));
  const std::size_t m = space_.size();
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    const auto& rows = table[a];
    if (rows.size() != m)
      throw InputError("action " + actions_[a] + " has " + std::to_string(rows.size()) +
                       " states, expected " + std::to_string(m));
    for (std::size_t s = 0; s < m; ++s) {
      if (a == 0 && s == 0) num_targets_ = rows[s].size();
      if (rows[s].size() != num_targets_ || num_targets_ == 0)
        throw InputError("action " + actions_[a] + " state " + space_.states()[s] + " has " +
                         std::to_string(rows[s].size()) + " targets, expected " +
                         std::to_string(num_targets_ == 0 ? 1 : num_targets_));
      for (std::size_t j = 0; j < num_targets_; ++j) {
        const double v = rows[s][j];
        if (!(v >= 0.0 && v <= 1.0)) {
          std::ostringstream os;
          os << "action " << actions_[a] << " state " << space_.states()[s] << " target "
             << j + 1 << " value " << v << " is outside [0, 1]";
          throw InputError(os.str());
        }
        values_.push_back(v);
      }
    }
  }
  if (num_cardinal_ > num_targets_)
    throw InputError("num_cardinal " + std::to_string(num_cardinal_) + " exceeds the " +
                     std::to_string(num_targets_) + " targets");
  std::vector<std::string> names = actions_;
  std::sort(names.begin(), names.end());
  if (auto it = std::adjacent_find(names.begin(), names.end()); it != names.end())
    throw InputError("duplicate action name '" + *it + "'");
}

std::vector<double> Mtdp::outcome(std::size_t a, std::size_t s) const {
  const auto* p = &values_[(a * num_states() + s) * num_targets_];
  return {p, p + num_targets_};
}

namespace {

bool same(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (std::abs(x[j] - y[j]) > kCompareTol) return false;
  return true;
}

bool geq(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < y[j] - kCompareTol) return false;
  return true;
}

}  // namespace

std::vector<EvalVector> eval_vectors(const Mtdp& m) {
  std::vector<EvalVector> out;
  auto add = [&](std::vector<double> coords) -> EvalVector& {
    for (auto& e : out)
      if (same(e.coords, coords)) return e;
    out.push_back({std::move(coords), {}, false, false});
    return out.back();
  };
  for (std::size_t a = 0; a < m.num_actions(); ++a)
    for (std::size_t s = 0; s < m.num_states(); ++s) add(m.outcome(a, s)).origins.emplace_back(a, s);
  add(std::vector<double>(m.num_targets(), 0.0)).is_zero = true;
  add(std::vector<double>(m.num_targets(), 1.0)).is_one = true;
  return out;
}

std::vector<ElementPair> build_r1(const std::vector<EvalVector>& vectors) {
  std::vector<ElementPair> r1;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j)
      if (geq(vectors[i].coords, vectors[j].coords)) r1.emplace_back(i, j);
  return r1;
}

std::vector<PairComparison> build_r2(const std::vector<EvalVector>& vectors,
                                     const std::vector<ElementPair>& r1,
                                     std::size_t num_cardinal) {
  std::vector<PairComparison> r2;
  const std::size_t r = vectors.empty() ? 0 : vectors.front().coords.size();
  for (const auto& p : r1) {
    const auto& x = vectors[p.first].coords;
    const auto& y = vectors[p.second].coords;
    for (const auto& q : r1) {
      if (p == q) continue;
      const auto& xq = vectors[q.first].coords;
      const auto& yq = vectors[q.second].coords;
      bool ok = true;
      for (std::size_t j = 0; j < num_cardinal && ok; ++j)
        ok = (x[j] - y[j]) >= (xq[j] - yq[j]) - kCompareTol;
      for (std::size_t j = num_cardinal; j < r && ok; ++j)
        ok = x[j] >= xq[j] - kCompareTol && yq[j] >= y[j] - kCompareTol;
      if (ok) r2.emplace_back(p, q);
    }
  }
  return r2;
}

std::vector<PairComparison> prune_r2(const std::vector<PairComparison>& r2) {
  const auto parts = relation_parts(std::span<const PairComparison>(r2), Reflexivity::Implicit);
  std::vector<ElementPair> field;
  for (const auto& [a, b] : r2) {
    field.push_back(a);
    field.push_back(b);
  }
  std::sort(field.begin(), field.end());
  field.erase(std::unique(field.begin(), field.end()), field.end());
  const std::size_t m = field.size();
  auto id = [&](const ElementPair& x) {
    return static_cast<std::size_t>(std::lower_bound(field.begin(), field.end(), x) -
                                    field.begin());
  };
  std::vector<char> strict(m * m, 0);
  for (const auto& [a, b] : parts.strict) strict[id(a) * m + id(b)] = 1;

  std::vector<PairComparison> out = parts.indiff;
  for (const auto& pr : parts.strict) {
    const std::size_t a = id(pr.first);
    const std::size_t c = id(pr.second);
    bool implied = false;
    for (std::size_t b = 0; b < m && !implied; ++b)
      implied = strict[a * m + b] && strict[b * m + c];
    if (!implied) out.push_back(pr);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubSystem sub_system(const Mtdp& m, const SubSystemOptions& options) {
  auto vectors = eval_vectors(m);
  auto r1 = build_r1(vectors);
  std::vector<PairComparison> r2;
  if (!options.drop_r2) {
    r2 = build_r2(vectors, r1, m.num_cardinal());
    if (options.prune_r2) r2 = prune_r2(r2);
  }

  std::vector<std::string> names;
  std::size_t top = 0;
  std::size_t bottom = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& e = vectors[i];
    std::string name;
    for (const auto& [a, s] : e.origins) {
      if (!name.empty()) name += '|';
      name += m.actions()[a] + ":" + m.space().states()[s];
    }
    if (e.is_zero) name += name.empty() ? "zero" : "|zero";
    if (e.is_one) name += name.empty() ? "one" : "|one";
    names.push_back(std::move(name));
    if (e.is_zero) bottom = i;
    if (e.is_one) top = i;
  }

  std::vector<std::size_t> where(m.num_actions() * m.num_states());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (const auto& [a, s] : vectors[i].origins) where[a * m.num_states() + s] = i;
  std::vector<Act> acts;
  for (std::size_t a = 0; a < m.num_actions(); ++a) {
    Act act{m.actions()[a], {}};
    for (std::size_t s = 0; s < m.num_states(); ++s)
      act.outcome_index.push_back(where[a * m.num_states() + s]);
    acts.push_back(std::move(act));
  }

  PreferenceSystemOptions ps_options;
  ps_options.r2_generating_set = options.prune_r2;
  SubSystem sub{std::move(vectors),
                PreferenceSystem(std::move(names), std::move(r1), std::move(r2), top, bottom,
                                 ps_options),
                std::move(acts)};

  std::vector<double> mean;
  for (const auto& e : sub.elements) {
    double sum = 0.0;
    for (double x : e.coords) sum += x;
    mean.push_back(sum / static_cast<double>(m.num_targets()));
  }
  if (lp::max_violation(nabla_constraints(sub.system, 0.0), mean) > 1e-9)
    throw InconsistencyError("mean utility does not represent the induced preference system");
  return sub;
}

DominanceRelation delta_dominance(const SubSystem& sub, const CredalSet& cs, double delta,
                                  const DominanceOptions& options) {
  return full_relation(sub.system, cs, delta, sub.acts, options);
}

DominanceRelation delta_dominance(const Mtdp& m, const CredalSet& cs, double delta,
                                  const DominanceOptions& options) {
  return delta_dominance(sub_system(m), cs, delta, options);
}

std::vector<std::size_t> uniformly_optimal(const Mtdp& m) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < m.num_actions(); ++a) {
    bool best = true;
    for (std::size_t b = 0; b < m.num_actions() && best; ++b)
      for (std::size_t s = 0; s < m.num_states() && best; ++s)
        for (std::size_t j = 0; j < m.num_targets() && best; ++j)
          best = m.value(a, s, j) >= m.value(b, s, j) - kCompareTol;
    if (best) out.push_back(a);
  }
  return out;
}

std::vector<std::size_t> pareto_front(const Mtdp& m) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < m.num_actions(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < m.num_actions() && !dominated; ++b) {
      if (b == a) continue;
      bool weak = true;
      bool strict = false;
      for (std::size_t s = 0; s < m.num_states() && weak; ++s)
        for (std::size_t j = 0; j < m.num_targets() && weak; ++j) {
          const double d = m.value(b, s, j) - m.value(a, s, j);
          weak = d >= -kCompareTol;
          strict = strict || d > kCompareTol;
        }
      dominated = weak && strict;
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

bool has_positive_extreme_points(const CredalSet& cs) {
  for (const auto& p : cs.extreme_points())
    for (double x : p)
      if (!(x > 0.0)) return false;
  return !cs.extreme_points().empty();
}

}  // namespace mtdm
