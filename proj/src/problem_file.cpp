#include "mtdm/problem_file.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mtdm/error.hpp"

namespace mtdm {

namespace {

using json = nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + " is missing field '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(where + " must be finite");
  return x;
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

double bound(const json& obj, const char* key, double missing, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return missing;
  return number(*it, where + "." + key);
}

json bound_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  ProblemFile pf;

  const auto& states = field(root, "states", "problem");
  if (!states.is_array() || states.empty())
    throw InputError("states must be a nonempty array of names");
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].is_string())
      throw InputError("states[" + std::to_string(i) + "] must be a string");
    pf.states.push_back(states[i].get<std::string>());
  }
  const std::size_t m = pf.states.size();

  const auto& credal = field(root, "credal", "problem");
  const auto& kind = field(credal, "kind", "credal");
  if (!kind.is_string()) throw InputError("credal.kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "ordered") {
    pf.credal.kind = CredalKind::Ordered;
  } else if (k == "simplex") {
    pf.credal.kind = CredalKind::Simplex;
  } else if (k == "constraints") {
    pf.credal.kind = CredalKind::Constraints;
    const auto& entries = field(credal, "entries", "credal");
    if (!entries.is_array()) throw InputError("credal.entries must be an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string where = "credal.entries[" + std::to_string(i) + "]";
      ExpectationBound b;
      b.f = numbers(field(entries[i], "coeffs", where), where + ".coeffs");
      if (b.f.size() != m)
        throw InputError(where + ".coeffs has " + std::to_string(b.f.size()) +
                         " entries, expected " + std::to_string(m));
      b.lo = bound(entries[i], "lo", -std::numeric_limits<double>::infinity(), where);
      b.hi = bound(entries[i], "hi", std::numeric_limits<double>::infinity(), where);
      if (b.lo > b.hi) throw InputError(where + " has lo > hi");
      pf.credal.entries.push_back(std::move(b));
    }
  } else if (k == "extreme_points") {
    pf.credal.kind = CredalKind::ExtremePoints;
    const auto& points = field(credal, "points", "credal");
    if (!points.is_array() || points.empty())
      throw InputError("credal.points must be a nonempty array");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::string where = "credal.points[" + std::to_string(i) + "]";
      auto p = numbers(points[i], where);
      if (p.size() != m)
        throw InputError(where + " has " + std::to_string(p.size()) + " entries, expected " +
                         std::to_string(m));
      pf.credal.points.push_back(std::move(p));
    }
  } else {
    throw InputError("credal.kind '" + k +
                     "' is not one of ordered, simplex, constraints, extreme_points");
  }

  const auto& actions = field(root, "actions", "problem");
  if (!actions.is_array() || actions.empty())
    throw InputError("actions must be a nonempty array");
  std::size_t r = 0;
  for (std::size_t a = 0; a < actions.size(); ++a) {
    std::string where = "actions[" + std::to_string(a) + "]";
    const auto& name = field(actions[a], "name", where);
    if (!name.is_string()) throw InputError(where + ".name must be a string");
    pf.action_names.push_back(name.get<std::string>());
    where += " (" + pf.action_names.back() + ")";
    const auto& rows = field(actions[a], "values", where);
    if (!rows.is_array() || rows.size() != m)
      throw InputError(where + ".values must have one row per state (" + std::to_string(m) +
                       ")");
    std::vector<std::vector<double>> table;
    for (std::size_t s = 0; s < m; ++s) {
      const std::string ws = where + " state " + pf.states[s];
      if (!rows[s].is_array() || rows[s].empty())
        throw InputError(ws + " must be a nonempty array of target values");
      if (a == 0 && s == 0) r = rows[s].size();
      if (rows[s].size() != r)
        throw InputError(ws + " has " + std::to_string(rows[s].size()) + " targets, expected " +
                         std::to_string(r));
      std::vector<double> row;
      for (std::size_t j = 0; j < r; ++j) {
        const std::string wt = ws + " target " + std::to_string(j + 1);
        const double v = number(rows[s][j], wt);
        if (v < 0.0 || v > 1.0) {
          std::ostringstream os;
          os << wt << " value " << v << " is outside [0, 1]";
          throw InputError(os.str());
        }
        row.push_back(v);
      }
      table.push_back(std::move(row));
    }
    pf.values.push_back(std::move(table));
  }

  const auto& z = field(root, "num_cardinal", "problem");
  if (!z.is_number_integer() || z.get<long long>() < 0)
    throw InputError("num_cardinal must be a nonnegative integer");
  pf.num_cardinal = z.get<std::size_t>();
  if (pf.num_cardinal > r)
    throw InputError("num_cardinal " + std::to_string(pf.num_cardinal) + " exceeds the " +
                     std::to_string(r) + " targets");

  if (auto it = root.find("deltas"); it != root.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "auto")
        throw InputError("deltas must be \"auto\" or an array of numbers");
    } else {
      pf.deltas_auto = false;
      pf.deltas = numbers(*it, "deltas");
      for (std::size_t i = 0; i < pf.deltas.size(); ++i)
        if (pf.deltas[i] < 0.0 || pf.deltas[i] >= 1.0)
          throw InputError("deltas[" + std::to_string(i) + "] must lie in [0, 1)");
    }
  }
  return pf;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_problem(os.str());
}

std::string serialize_problem(const ProblemFile& pf) {
  json root;
  root["states"] = pf.states;
  json credal;
  switch (pf.credal.kind) {
    case CredalKind::Ordered:
      credal["kind"] = "ordered";
      break;
    case CredalKind::Simplex:
      credal["kind"] = "simplex";
      break;
    case CredalKind::Constraints: {
      credal["kind"] = "constraints";
      json entries = json::array();
      for (const auto& b : pf.credal.entries)
        entries.push_back({{"coeffs", b.f}, {"lo", bound_json(b.lo)}, {"hi", bound_json(b.hi)}});
      credal["entries"] = std::move(entries);
      break;
    }
    case CredalKind::ExtremePoints:
      credal["kind"] = "extreme_points";
      credal["points"] = pf.credal.points;
      break;
  }
  root["credal"] = std::move(credal);
  json actions = json::array();
  for (std::size_t a = 0; a < pf.action_names.size(); ++a)
    actions.push_back({{"name", pf.action_names[a]}, {"values", pf.values[a]}});
  root["actions"] = std::move(actions);
  root["num_cardinal"] = pf.num_cardinal;
  if (pf.deltas_auto)
    root["deltas"] = "auto";
  else
    root["deltas"] = pf.deltas;
  return root.dump(2) + "\n";
}

Mtdp to_mtdp(const ProblemFile& pf) {
  return Mtdp(StateSpace(pf.states), pf.action_names, pf.values, pf.num_cardinal);
}

CredalSet to_credal_set(const ProblemFile& pf) {
  StateSpace space(pf.states);
  switch (pf.credal.kind) {
    case CredalKind::Ordered:
      return ordered_family(space);
    case CredalKind::Simplex:
      return full_simplex(space);
    case CredalKind::Constraints: {
      auto cs = CredalSet::from_constraints(space, pf.credal.entries);
      auto points = enumerate_extreme_points(cs);
      return cs.with_extreme_points(std::move(points));
    }
    case CredalKind::ExtremePoints:
      return CredalSet::from_extreme_points(space, pf.credal.points);
  }
  throw InputError("unknown credal kind");
}

}  // namespace mtdm
