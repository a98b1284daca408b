#include "hyperricci/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hyperricci/instances.hpp"
#include "hyperricci/oracles.hpp"

namespace hyperricci {

using nlohmann::json;

namespace {

json values_by_name(const Hypergraph& h, const Vec& values) {
  json out = json::object();
  for (int v = 0; v < h.vertex_count(); ++v) out[h.vertex_name(v)] = values[v];
  return out;
}

json vertex_list(const Hypergraph& h, const std::vector<int>& vs) {
  json out = json::array();
  for (int v : vs) out.push_back(h.vertex_name(v));
  return out;
}

}  // namespace

Instance parse_instance_json(const json& doc, const std::string& context) {
  if (!doc.is_object()) throw ValidationError(context + ": instance document must be an object");
  const std::string name = doc.value("name", std::string("unnamed"));

  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ValidationError(context + ": missing 'vertices' array");
  std::vector<std::string> names;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ValidationError(context + ": vertex names must be strings");
    names.push_back(v.get<std::string>());
  }

  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw ValidationError(context + ": missing 'edges' array");
  std::vector<Hyperedge> edges;
  int index = 0;
  for (const auto& e : doc["edges"]) {
    const std::string label = context + ": edge " + std::to_string(index);
    if (!e.is_object() || !e.contains("members") || !e["members"].is_array())
      throw ValidationError(label + " needs a 'members' array");
    Hyperedge edge;
    for (const auto& m : e["members"]) {
      if (!m.is_string()) throw ValidationError(label + ": members must be vertex names");
      const std::string name = m.get<std::string>();
      int v = -1;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) v = static_cast<int>(i);
      if (v < 0) throw ValidationError(label + ": unknown member '" + name + "'");
      edge.members.push_back(v);
    }
    if (e.contains("weight")) {
      if (!e["weight"].is_number()) throw ValidationError(label + ": weight must be a number");
      edge.weight = e["weight"].get<double>();
    }
    if (!(edge.weight > 0.0))
      throw ValidationError(label + ": weight must be positive, got " +
                            std::to_string(edge.weight));
    edges.push_back(std::move(edge));
    ++index;
  }

  return Instance{name, Hypergraph(std::move(names), std::move(edges))};
}

Instance parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("parse error in '" + path.string() + "': " + e.what());
  }
  return parse_instance_json(doc, path.filename().string());
}

json instance_to_json(const Instance& inst) {
  json edges = json::array();
  for (const auto& e : inst.graph.edges()) {
    json members = json::array();
    for (int v : e.members) members.push_back(inst.graph.vertex_name(v));
    edges.push_back({{"members", members}, {"weight", e.weight}});
  }
  return {{"name", inst.name}, {"vertices", inst.graph.vertex_names()}, {"edges", edges}};
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write instance file '" + path.string() + "'");
  out << instance_to_json(inst).dump(2) << "\n";
}

json to_json(const Hypergraph& h, const LaplacianValue& value) {
  json sel = json::array();
  for (int e = 0; e < h.edge_count(); ++e) {
    json pairs = json::array();
    for (const auto& p : value.selection.per_edge[e])
      pairs.push_back({{"max", h.vertex_name(p.u)}, {"min", h.vertex_name(p.v)}, {"weight", p.weight}});
    sel.push_back(pairs);
  }
  return {{"value", values_by_name(h, value.value)},
          {"weighted_norm", value.weighted_norm},
          {"fw_gap", value.fw_gap},
          {"multivalued", value.multivalued},
          {"selection", sel}};
}

json to_json(const Hypergraph& h, const ProxResult& r) {
  return {{"input", values_by_name(h, r.input)},
          {"lambda", r.lambda},
          {"minimizer", values_by_name(h, r.minimizer)},
          {"objective", r.objective},
          {"residual", r.residual},
          {"iterations", r.iterations}};
}

json to_json(const Hypergraph& h, const FlowTrajectory& t) {
  json states = json::array();
  for (std::size_t i = 0; i < t.states.size(); ++i)
    states.push_back({{"t", t.times[i]}, {"state", values_by_name(h, t.states[i])}});
  return {{"initial", values_by_name(h, t.initial)},
          {"method", t.method == FlowMethod::euler ? "euler" : "resolvent"},
          {"step", t.step},
          {"trajectory", states}};
}

json to_json(const Hypergraph& h, const KDResult& r) {
  return {{"x", h.vertex_name(r.x)},
          {"y", h.vertex_name(r.y)},
          {"lambda", r.lambda},
          {"value", r.value},
          {"witness", values_by_name(h, raw_values(h, r.witness))},
          {"candidates", r.candidate_count},
          {"seed", r.seed}};
}

json to_json(const Hypergraph& h, const CurvatureEstimate& e) {
  json table = json::array();
  for (const auto& row : e.table)
    table.push_back({{"lambda", row.lambda}, {"kappa_lambda", row.kappa}, {"ratio", row.ratio}});
  return {{"x", h.vertex_name(e.x)},
          {"y", h.vertex_name(e.y)},
          {"d", e.dist},
          {"table", table},
          {"kappa_lower_est", e.kappa_lower},
          {"kappa_upper_est", e.kappa_upper},
          {"c_bound",
           {{"distance_normalized", e.c_bound.distance_feasible ? json(e.c_bound.distance_normalized) : json()},
            {"unit_normalized", e.c_bound.unit_feasible ? json(e.c_bound.unit_normalized) : json()}}},
          {"diagnostics",
           {{"fit_intercept", e.fit_intercept},
            {"interval_width", e.interval_width},
            {"seed", e.seed}}}};
}

json to_json(const Hypergraph& h, const EigenCheck& c) {
  return {{"pole", h.vertex_name(c.pole)},
          {"K", c.K},
          {"function", values_by_name(h, c.function)},
          {"residual", c.residual}};
}

json to_json(const Hypergraph& h, const RigidityReport& r) {
  json pairs = json::array();
  json excess = json::array();
  json coverage = json::array();
  json eigen = json::array();
  for (const auto& pr : r.pairs) {
    json pair_name = json::array({h.vertex_name(pr.p), h.vertex_name(pr.q)});
    pairs.push_back(pair_name);
    excess.push_back({{"pair", pair_name}, {"values", values_by_name(h, pr.excess)}});
    coverage.push_back({{"pair", pair_name},
                        {"ok", pr.coverage},
                        {"violators", vertex_list(h, pr.violators)},
                        {"pairing_pq", pr.pairing_pq},
                        {"pairing_qp", pr.pairing_qp}});
    eigen.push_back(to_json(h, pr.eigen_p));
    eigen.push_back(to_json(h, pr.eigen_q));
  }
  json curvatures = json::array();
  for (const auto& c : r.curvatures) {
    json entry = to_json(h, c.estimate);
    entry["diametral_pair"] = json::array({h.vertex_name(c.p), h.vertex_name(c.q)});
    entry["common_geodesic"] = c.common_geodesic;
    curvatures.push_back(entry);
  }
  return {{"K", r.K},
          {"diameter", r.diameter},
          {"bound", r.bound},
          {"satisfied", r.satisfied},
          {"maximal", r.maximal},
          {"diametral_pairs", pairs},
          {"coverage", coverage},
          {"excess", excess},
          {"eigen_residuals", eigen},
          {"geodesic_curvature", curvatures}};
}

std::string curvature_csv(const Hypergraph& h, const std::vector<CurvatureEstimate>& estimates) {
  std::string out = "x,y,d,lambda,kappa_lambda,ratio,kappa_lower_est,kappa_upper_est,C_bound\n";
  char buf[256];
  for (const auto& e : estimates) {
    for (const auto& row : e.table) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                    h.vertex_name(e.x).c_str(), h.vertex_name(e.y).c_str(), e.dist, row.lambda,
                    row.kappa, row.ratio, e.kappa_lower, e.kappa_upper,
                    e.c_bound.distance_normalized);
      out += buf;
    }
  }
  return out;
}

}  // namespace hyperricci
