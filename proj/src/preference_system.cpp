#include "mtdm/preference_system.hpp"

#include <algorithm>
#include <sstream>

#include "mtdm/error.hpp"

namespace mtdm {

namespace {

std::string show(std::size_t x) { return std::to_string(x); }

std::string show(const ElementPair& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

template <class T>
RelationParts<T> parts_impl(std::span<const std::pair<T, T>> rel, Reflexivity mode,
                            bool check_transitive = true) {
  std::vector<std::pair<T, T>> pairs(rel.begin(), rel.end());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<T> field;
  field.reserve(2 * pairs.size());
  for (const auto& [a, b] : pairs) {
    field.push_back(a);
    field.push_back(b);
  }
  std::sort(field.begin(), field.end());
  field.erase(std::unique(field.begin(), field.end()), field.end());
  const std::size_t m = field.size();
  auto id = [&](const T& x) {
    return static_cast<std::size_t>(std::lower_bound(field.begin(), field.end(), x) -
                                    field.begin());
  };

  std::vector<char> mat(m * m, 0);
  for (const auto& [a, b] : pairs) mat[id(a) * m + id(b)] = 1;
  for (std::size_t x = 0; x < m; ++x) {
    if (mat[x * m + x]) continue;
    if (mode == Reflexivity::Required)
      throw InputError("relation is not reflexive: missing (" + show(field[x]) + ", " +
                       show(field[x]) + ")");
    mat[x * m + x] = 1;
  }
  for (const auto& [a, b] : pairs) {
    if (!check_transitive) break;
    const std::size_t ia = id(a);
    const std::size_t ib = id(b);
    const char* row_b = &mat[ib * m];
    const char* row_a = &mat[ia * m];
    for (std::size_t c = 0; c < m; ++c) {
      if (row_b[c] && !row_a[c])
        throw InputError("relation is not transitive: contains (" + show(a) + ", " + show(b) +
                         ") and (" + show(b) + ", " + show(field[c]) + ") but not (" + show(a) +
                         ", " + show(field[c]) + ")");
    }
  }

  RelationParts<T> out;
  for (const auto& pr : pairs) {
    if (mat[id(pr.second) * m + id(pr.first)])
      out.indiff.push_back(pr);
    else
      out.strict.push_back(pr);
  }
  return out;
}

// Warshall closure on a dense boolean matrix.
void close(std::vector<char>& mat, std::size_t m) {
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (mat[i * m + k])
        for (std::size_t j = 0; j < m; ++j)
          if (mat[k * m + j]) mat[i * m + j] = 1;
}

std::vector<PairComparison> close_r2(const std::vector<PairComparison>& r2) {
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
  std::vector<char> mat(m * m, 0);
  for (const auto& [a, b] : r2) mat[id(a) * m + id(b)] = 1;
  close(mat, m);
  std::vector<PairComparison> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && mat[i * m + j]) out.emplace_back(field[i], field[j]);
  return out;
}

}  // namespace

RelationParts<std::size_t> relation_parts(std::span<const ElementPair> rel, Reflexivity mode) {
  return parts_impl<std::size_t>(rel, mode);
}

RelationParts<ElementPair> relation_parts(std::span<const PairComparison> rel, Reflexivity mode) {
  return parts_impl<ElementPair>(rel, mode);
}

PreferenceSystem::PreferenceSystem(std::vector<std::string> elements, std::vector<ElementPair> r1,
                                   std::vector<PairComparison> r2,
                                   std::optional<std::size_t> top,
                                   std::optional<std::size_t> bottom,
                                   PreferenceSystemOptions options)
    : elements_(std::move(elements)), top_(top), bottom_(bottom) {
  const std::size_t n = elements_.size();
  if (n == 0) throw InputError("preference system has no elements");
  auto check_index = [n](std::size_t i, const char* what) {
    if (i >= n)
      throw InputError(std::string(what) + " references element " + std::to_string(i) +
                       " but only " + std::to_string(n) + " elements exist");
  };
  for (const auto& [a, b] : r1) {
    check_index(a, "r1");
    check_index(b, "r1");
  }
  if (top_) check_index(*top_, "top");
  if (bottom_) check_index(*bottom_, "bottom");

  r1_matrix_.assign(n * n, 0);
  for (const auto& [a, b] : r1) r1_matrix_[a * n + b] = 1;
  if (options.close_transitively) {
    for (std::size_t i = 0; i < n; ++i) r1_matrix_[i * n + i] = 1;
    close(r1_matrix_, n);
    r1.clear();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r1_matrix_[i * n + j]) r1.emplace_back(i, j);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!r1_matrix_[i * n + i])
      throw InputError("r1 is not reflexive: missing (" + std::to_string(i) + "," +
                       std::to_string(i) + ")");
  std::sort(r1.begin(), r1.end());
  r1.erase(std::unique(r1.begin(), r1.end()), r1.end());
  r1_ = std::move(r1);
  r1_parts_ = relation_parts(std::span<const ElementPair>(r1_), Reflexivity::Required);

  for (const auto& [x, y] : r2) {
    for (const ElementPair* p : {&x, &y}) {
      check_index(p->first, "r2");
      check_index(p->second, "r2");
      if (!in_r1(p->first, p->second))
        throw InputError("r2 references " + show(*p) + ", which is not a member of r1");
    }
  }
  if (options.close_transitively) r2 = close_r2(r2);
  std::sort(r2.begin(), r2.end());
  r2.erase(std::unique(r2.begin(), r2.end()), r2.end());
  r2.erase(std::remove_if(r2.begin(), r2.end(), [](const PairComparison& c) {
             return c.first == c.second;
           }),
           r2.end());
  r2_ = std::move(r2);
  r2_parts_ = parts_impl<ElementPair>(std::span<const PairComparison>(r2_), Reflexivity::Implicit,
                                      !options.r2_generating_set);

  if (top_)
    for (std::size_t i = 0; i < n; ++i)
      if (!in_r1(*top_, i))
        throw InputError("top element " + std::to_string(*top_) + " is not above element " +
                         std::to_string(i));
  if (bottom_)
    for (std::size_t i = 0; i < n; ++i)
      if (!in_r1(i, *bottom_))
        throw InputError("bottom element " + std::to_string(*bottom_) +
                         " is not below element " + std::to_string(i));
}

namespace {

lp::LpProblem build_nabla(const PreferenceSystem& ps, double delta, bool delta_variable) {
  if (!ps.top() || !ps.bottom())
    throw InputError("∇ constraints need both a top and a bottom element");
  const std::size_t n = ps.size();
  const std::size_t nv = delta_variable ? n + 1 : n;

  lp::LpProblem p;
  p.num_vars = nv;
  p.objective.assign(nv, 0.0);
  p.var_bounds.assign(nv, lp::VarBounds{0.0, 1.0});

  auto row = [nv] { return lp::LinearRow{std::vector<double>(nv, 0.0), 0.0}; };
  auto strict_row = [&](lp::LinearRow r) {
    if (delta_variable)
      r.coeffs[n] = -1.0;
    else
      r.rhs = delta;
    p.ineq_constraints.push_back(std::move(r));
  };

  {
    auto r = row();
    r.coeffs[*ps.top()] = 1.0;
    r.rhs = 1.0;
    p.eq_constraints.push_back(std::move(r));
  }
  {
    auto r = row();
    r.coeffs[*ps.bottom()] = 1.0;
    p.eq_constraints.push_back(std::move(r));
  }
  for (const auto& [i, j] : ps.r1_parts().indiff) {
    if (i >= j) continue;
    auto r = row();
    r.coeffs[i] += 1.0;
    r.coeffs[j] -= 1.0;
    p.eq_constraints.push_back(std::move(r));
  }
  for (const auto& [i, j] : ps.r1_parts().strict) {
    auto r = row();
    r.coeffs[i] += 1.0;
    r.coeffs[j] -= 1.0;
    strict_row(std::move(r));
  }
  auto diff_row = [&](const ElementPair& a, const ElementPair& b) {
    auto r = row();
    r.coeffs[a.first] += 1.0;
    r.coeffs[a.second] -= 1.0;
    r.coeffs[b.first] -= 1.0;
    r.coeffs[b.second] += 1.0;
    return r;
  };
  for (const auto& [a, b] : ps.r2_parts().indiff) {
    if (!(a < b)) continue;
    auto r = diff_row(a, b);
    if (std::all_of(r.coeffs.begin(), r.coeffs.end(), [](double c) { return c == 0.0; }))
      continue;
    p.eq_constraints.push_back(std::move(r));
  }
  for (const auto& [a, b] : ps.r2_parts().strict) strict_row(diff_row(a, b));

  if (delta_variable) p.objective[n] = -1.0;
  return p;
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0))
    throw InputError("delta must lie in [0, 1), got " + std::to_string(delta));
}

}  // namespace

lp::LpProblem nabla_constraints(const PreferenceSystem& ps, double delta) {
  check_delta(delta);
  return build_nabla(ps, delta, false);
}

lp::LpProblem nabla_with_delta_variable(const PreferenceSystem& ps) {
  return build_nabla(ps, 0.0, true);
}

bool is_delta_consistent(const PreferenceSystem& ps, double delta,
                         const lp::SolverOptions& options) {
  const auto p = nabla_constraints(ps, delta);
  return lp::solve(p, options).status == lp::LpStatus::Optimal;
}

MaxDelta max_delta(const PreferenceSystem& ps, const lp::SolverOptions& options) {
  const auto p = nabla_with_delta_variable(ps);
  const auto out = lp::solve(p, options);
  if (out.status != lp::LpStatus::Optimal)
    throw InconsistencyError("preference system is not 0-consistent: no normalized "
                             "representation exists");
  MaxDelta result;
  const auto& v = *out.witness;
  result.value = std::clamp(v[ps.size()], 0.0, 1.0);
  if (result.value >= 1.0 - 1e-12) {
    result.value = 1.0;
    result.at_boundary = true;
  }
  result.witness.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(ps.size()));
  return result;
}

}  // namespace mtdm
