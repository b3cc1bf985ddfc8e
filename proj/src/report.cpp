#include "mtdm/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mtdm/error.hpp"
#include "mtdm/mtdp.hpp"
#include "mtdm/oracle.hpp"

namespace mtdm {

namespace {

using json = nlohmann::json;

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<std::string> sorted_names(const std::vector<std::string>& all,
                                      const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(all[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string class_label(const DominanceRelation& rel, const std::vector<std::size_t>& members) {
  std::string label;
  for (std::size_t i : members) {
    if (!label.empty()) label += ',';
    label += rel.acts[i];
  }
  return label;
}

OracleStats cross_check(const SubSystem& sub, const CredalSet& cs, const DominanceRelation& rel,
                        const RunOptions& options) {
  RefuteOptions ro;
  ro.eps_opt = options.eps_opt;
  const auto table = refute_all(sub.system, cs, rel.delta, sub.acts, options.oracle_samples,
                                options.seed, ro);
  OracleStats st;
  st.samples = table.samples;
  st.degenerate = table.degenerate;
  const auto& points = cs.extreme_points();
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < rel.size(); ++j) {
      if (i == j) continue;
      if (rel.dominates[i][j]) {
        ++st.dominated_pairs;
        if (table.found[i][j]) ++st.dominated_refuted;
        continue;
      }
      ++st.not_dominated_pairs;
      if (table.found[i][j]) ++st.not_dominated_sampled;
      const auto& w = rel.witnesses[i][j];
      double best = lp::kInf;
      for (const auto& pi : points)
        best = std::min(best, expected_utility(w, pi, sub.acts[i]) -
                                  expected_utility(w, pi, sub.acts[j]));
      if (!w.empty() && best < -options.eps_opt) ++st.not_dominated_witnessed;
    }
  return st;
}

}  // namespace

Report run(const ProblemFile& pf, const RunOptions& options) {
  const Mtdp m = to_mtdp(pf);
  const CredalSet cs = to_credal_set(pf);
  const SubSystem sub = sub_system(m);

  Report rep;
  rep.actions = m.actions();
  rep.states = m.space().states();
  rep.num_elements = sub.system.size();
  rep.r1_size = sub.system.r1().size();
  rep.r2_size = sub.system.r2().size();
  const auto md = max_delta(sub.system);
  rep.delta_max = md.value;
  rep.delta_max_at_boundary = md.at_boundary;
  rep.uniformly_optimal = sorted_names(m.actions(), uniformly_optimal(m));
  rep.pareto = sorted_names(m.actions(), pareto_front(m));

  std::vector<double> deltas;
  std::vector<std::string> labels;
  const bool use_auto = options.deltas_auto || (!options.deltas && pf.deltas_auto);
  if (use_auto) {
    // δ must stay below 1, so a boundary δ_max is approached from below.
    const double top = md.at_boundary ? std::nextafter(1.0, 0.0) : md.value;
    deltas = {0.0, 0.5 * md.value, top};
    labels = {"min", "med", "max"};
  } else {
    deltas = options.deltas ? *options.deltas : pf.deltas;
    labels.assign(deltas.size(), "");
  }
  for (double d : deltas) {
    if (!(d >= 0.0 && d < 1.0)) throw InputError("delta " + shortest(d) + " is outside [0, 1)");
    if (d > md.value)
      throw InconsistencyError("delta " + shortest(d) + " exceeds the largest consistent delta " +
                               shortest(md.value));
  }

  DominanceOptions dopt;
  dopt.eps_opt = options.eps_opt;
  dopt.threads = options.threads;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    DeltaReport dr;
    dr.delta = deltas[k];
    dr.label = labels[k];
    dr.consistent = is_delta_consistent(sub.system, dr.delta);
    if (!dr.consistent)
      throw InconsistencyError("preference system is not " + shortest(dr.delta) +
                               "-consistent (largest consistent delta " + shortest(md.value) +
                               ")");
    dr.relation = delta_dominance(sub, cs, dr.delta, dopt);
    dr.maximal = sorted_names(m.actions(), maximal_set(dr.relation));
    dr.undominated = sorted_names(m.actions(), undominated_set(dr.relation));
    dr.hasse = hasse_edges(dr.relation);
    if (options.oracle_samples > 0) dr.oracle = cross_check(sub, cs, dr.relation, options);
    rep.per_delta.push_back(std::move(dr));
  }
  return rep;
}

std::string report_json(const Report& rep) {
  json root;
  root["actions"] = rep.actions;
  root["states"] = rep.states;
  root["num_elements"] = rep.num_elements;
  root["r1_size"] = rep.r1_size;
  root["r2_size"] = rep.r2_size;
  root["delta_max"] = rep.delta_max;
  root["delta_max_at_boundary"] = rep.delta_max_at_boundary;
  root["uno"] = rep.uniformly_optimal;
  root["par"] = rep.pareto;
  json per = json::array();
  for (const auto& dr : rep.per_delta) {
    const auto& rel = dr.relation;
    json d;
    d["delta"] = dr.delta;
    d["label"] = dr.label;
    d["consistent"] = dr.consistent;
    d["max"] = dr.maximal;
    d["und"] = dr.undominated;
    json matrix = json::array();
    json opt = json::array();
    json marginal = json::array();
    for (std::size_t i = 0; i < rel.size(); ++i) {
      json row = json::array();
      json orow = json::array();
      for (std::size_t j = 0; j < rel.size(); ++j) {
        row.push_back(rel.dominates[i][j] ? 1 : 0);
        orow.push_back(rel.opt_values[i][j]);
        if (rel.marginal[i][j]) marginal.push_back({rel.acts[i], rel.acts[j]});
      }
      matrix.push_back(std::move(row));
      opt.push_back(std::move(orow));
    }
    d["dominates"] = std::move(matrix);
    d["min_opt"] = std::move(opt);
    d["marginal"] = std::move(marginal);
    json classes = json::array();
    for (const auto& c : dr.hasse.classes) classes.push_back(class_label(rel, c));
    json edges = json::array();
    for (const auto& [a, b] : dr.hasse.edges)
      edges.push_back({class_label(rel, dr.hasse.classes[a]), class_label(rel, dr.hasse.classes[b])});
    d["hasse"] = {{"classes", std::move(classes)}, {"edges", std::move(edges)}};
    if (dr.oracle) {
      const auto& o = *dr.oracle;
      d["oracle"] = {{"samples", o.samples},
                     {"degenerate", o.degenerate},
                     {"dominated_pairs", o.dominated_pairs},
                     {"dominated_refuted", o.dominated_refuted},
                     {"not_dominated_pairs", o.not_dominated_pairs},
                     {"not_dominated_sampled", o.not_dominated_sampled},
                     {"not_dominated_witnessed", o.not_dominated_witnessed},
                     {"agrees", o.agrees()}};
    }
    per.push_back(std::move(d));
  }
  root["deltas"] = std::move(per);
  return root.dump(2) + "\n";
}

std::string report_text(const Report& rep) {
  auto set = [](const std::vector<std::string>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s + "}";
  };
  std::ostringstream os;
  os << "elements " << rep.num_elements << ", |R1| " << rep.r1_size << ", |R2| " << rep.r2_size
     << "\n";
  os << "delta_max " << shortest(rep.delta_max) << (rep.delta_max_at_boundary ? " (boundary)" : "")
     << "\n";
  os << "uno " << set(rep.uniformly_optimal) << "\n";
  os << "par " << set(rep.pareto) << "\n";
  for (const auto& dr : rep.per_delta) {
    os << "delta " << shortest(dr.delta);
    if (!dr.label.empty()) os << " (" << dr.label << ")";
    os << ": max " << set(dr.maximal) << ", und " << set(dr.undominated) << "\n";
    if (dr.oracle)
      os << "  oracle " << dr.oracle->samples << " samples, "
         << (dr.oracle->agrees() ? "agrees" : "DISAGREES") << "\n";
  }
  return os.str();
}

std::string emit_dot(const DominanceRelation& rel) {
  const auto h = hasse_edges(rel);
  std::ostringstream os;
  os << "digraph hasse {\n";
  for (const auto& c : h.classes) os << "  \"" << class_label(rel, c) << "\";\n";
  for (const auto& [a, b] : h.edges)
    os << "  \"" << class_label(rel, h.classes[a]) << "\" -> \""
       << class_label(rel, h.classes[b]) << "\";\n";
  os << "}\n";
  return os.str();
}

std::string dot_file_name(double delta) { return "hasse_delta_" + shortest(delta) + ".dot"; }

}  // namespace mtdm
