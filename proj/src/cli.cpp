#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hyperricci/instances.hpp"
#include "hyperricci/io.hpp"
#include "hyperricci/oracles.hpp"

namespace hyperricci {

namespace {

using nlohmann::json;

struct GlobalOpts {
  double tol = 1e-7;
  bool oracle = false;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string out;
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(g.out);
    if (!f) throw ValidationError("cannot write output file '" + g.out + "'");
    f << text;
    if (text.empty() || text.back() != '\n') f << "\n";
  }
}

void emit(const GlobalOpts& g, const json& doc) { emit(g, doc.dump(2)); }

// A function argument is either a JSON file ({"values": {...}} by vertex
// name or a plain array, raw view unless "view" says otherwise) or the
// shorthand rho_<vertex>.
Vec load_function(const Hypergraph& h, const std::string& fn_arg, const std::string& rho_arg) {
  if (!fn_arg.empty() && !rho_arg.empty())
    throw ValidationError("--fn and --rho are mutually exclusive");
  if (fn_arg.empty() && rho_arg.empty())
    throw ValidationError("one of --fn or --rho is required");
  if (!rho_arg.empty()) return h.rho(h.vertex_index(rho_arg));

  if (!std::filesystem::exists(fn_arg) && fn_arg.rfind("rho_", 0) == 0)
    return h.rho(h.vertex_index(fn_arg.substr(4)));

  std::ifstream in(fn_arg);
  if (!in) throw ValidationError("cannot open function file '" + fn_arg + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("parse error in '" + fn_arg + "': " + e.what());
  }
  json values = doc.is_object() && doc.contains("values") ? doc["values"] : doc;
  Vec raw(h.vertex_count(), 0.0);
  if (values.is_array()) {
    if (static_cast<int>(values.size()) != h.vertex_count())
      throw ValidationError("function file has " + std::to_string(values.size()) +
                            " values for " + std::to_string(h.vertex_count()) + " vertices");
    for (int v = 0; v < h.vertex_count(); ++v) raw[v] = values[v].get<double>();
  } else if (values.is_object()) {
    for (const auto& [key, val] : values.items()) raw[h.vertex_index(key)] = val.get<double>();
  } else {
    throw ValidationError("function file must hold an array or name->value object");
  }
  std::string view = doc.is_object() ? doc.value("view", "raw") : "raw";
  if (view == "density") return h.raw_from_density(raw);
  if (view != "raw") throw ValidationError("unknown view '" + view + "'");
  return raw;
}

std::vector<double> parse_schedule(const std::string& text) {
  if (text.empty()) return default_lambda_schedule();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("bad schedule entry '" + item + "'");
    }
  }
  return out;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"coarse Ricci curvature of weighted hypergraphs via the nonlinear Laplacian"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--tol", g.tol, "solver tolerance");
  app.add_flag("--oracle", g.oracle, "use the slow exhaustive reference solvers");
  app.add_option("--format", g.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "seed for randomized searches");
  app.add_option("--out", g.out, "write output to a file instead of stdout");

  std::string instance_path, fn_arg, rho_arg, pair_arg, schedule_arg, method_arg = "resolvent";
  std::string x_arg, y_arg, dir_arg = ".";
  double lambda = 0.1, t = 1.0, K = 1.0;
  int steps = 64, starts = 64;
  bool all_pairs = false, no_curvature = false;

  auto* info = app.add_subcommand("info", "degrees, distances and diameter");
  info->add_option("instance", instance_path)->required();

  auto* lap = app.add_subcommand("laplacian", "canonical Laplacian L0 f");
  lap->add_option("instance", instance_path)->required();
  lap->add_option("--fn", fn_arg, "function file (or rho_<vertex>)");
  lap->add_option("--rho", rho_arg, "distance function pole vertex");

  auto* res = app.add_subcommand("resolvent", "proximal resolvent J_lambda f");
  res->add_option("instance", instance_path)->required();
  res->add_option("--lambda", lambda, "resolvent scale")->required();
  res->add_option("--fn", fn_arg, "function file (or rho_<vertex>)");
  res->add_option("--rho", rho_arg, "distance function pole vertex");

  auto* heat = app.add_subcommand("heat", "nonlinear heat flow");
  heat->add_option("instance", instance_path)->required();
  heat->add_option("--t", t, "flow time")->required();
  heat->add_option("--steps", steps, "grid steps");
  heat->add_option("--method", method_arg, "euler or resolvent")
      ->check(CLI::IsMember({"euler", "resolvent"}));
  heat->add_option("--fn", fn_arg, "function file (or rho_<vertex>)");
  heat->add_option("--rho", rho_arg, "distance function pole vertex");

  auto* kd = app.add_subcommand("kd", "nonlinear Kantorovich difference KD_lambda(x,y)");
  kd->add_option("instance", instance_path)->required();
  kd->add_option("--x", x_arg)->required();
  kd->add_option("--y", y_arg)->required();
  kd->add_option("--lambda", lambda)->required();
  kd->add_option("--starts", starts, "multistart count");

  auto* curv = app.add_subcommand("curvature", "coarse Ricci curvature estimates");
  curv->add_option("instance", instance_path)->required();
  curv->add_option("--pair", pair_arg, "vertex pair X,Y");
  curv->add_flag("--all", all_pairs, "all unordered pairs");
  curv->add_option("--schedule", schedule_arg, "comma-separated decreasing lambdas");
  curv->add_option("--starts", starts, "multistart count");

  auto* rig = app.add_subcommand("rigidity", "Bonnet-Myers and maximal-diameter analysis");
  rig->add_option("instance", instance_path)->required();
  rig->add_option("--K", K, "claimed curvature lower bound")->required();
  rig->add_flag("--no-curvature", no_curvature, "skip curvature estimates along geodesics");
  rig->add_option("--starts", starts, "multistart count");
  rig->add_option("--schedule", schedule_arg, "comma-separated decreasing lambdas");

  auto* ex = app.add_subcommand("examples", "write the bundled instance files");
  ex->add_option("dir", dir_arg, "target directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  MultistartOptions ms;
  ms.count = starts;
  ms.seed = g.seed;

  if (*info) {
    Instance inst = parse_instance(instance_path);
    const auto& h = inst.graph;
    json dist = json::object();
    for (int u = 0; u < h.vertex_count(); ++u) {
      json row = json::object();
      for (int v = 0; v < h.vertex_count(); ++v) {
        int d = h.distance(u, v);
        row[h.vertex_name(v)] = d == Hypergraph::kUnreachable ? json("inf") : json(d);
      }
      dist[h.vertex_name(u)] = row;
    }
    json doc = {{"name", inst.name},
                {"vertices", h.vertex_names()},
                {"edge_count", h.edge_count()},
                {"degrees", json::object()},
                {"volume", h.volume()},
                {"connected", h.connected()},
                {"distance", dist}};
    for (int v = 0; v < h.vertex_count(); ++v) doc["degrees"][h.vertex_name(v)] = h.degree(v);
    if (h.connected()) doc["diameter"] = h.diameter();
    emit(g, doc);
    return 0;
  }

  if (*lap) {
    Instance inst = parse_instance(instance_path);
    Vec f = load_function(inst.graph, fn_arg, rho_arg);
    if (g.oracle) {
      Vec l0 = oracle_min_norm(inst.graph, f);
      json doc = {{"oracle", true}, {"value", json::object()}};
      for (int v = 0; v < inst.graph.vertex_count(); ++v)
        doc["value"][inst.graph.vertex_name(v)] = l0[v];
      emit(g, doc);
    } else {
      emit(g, to_json(inst.graph, canonical_laplacian(inst.graph, f, g.tol)));
    }
    return 0;
  }

  if (*res) {
    Instance inst = parse_instance(instance_path);
    Vec f = load_function(inst.graph, fn_arg, rho_arg);
    if (g.oracle) {
      Vec jf = oracle_resolvent(inst.graph, f, lambda);
      json doc = {{"oracle", true}, {"lambda", lambda}, {"minimizer", json::object()}};
      for (int v = 0; v < inst.graph.vertex_count(); ++v)
        doc["minimizer"][inst.graph.vertex_name(v)] = jf[v];
      emit(g, doc);
    } else {
      emit(g, to_json(inst.graph, resolvent(inst.graph, f, lambda, g.tol)));
    }
    return 0;
  }

  if (*heat) {
    Instance inst = parse_instance(instance_path);
    Vec f = load_function(inst.graph, fn_arg, rho_arg);
    FlowTrajectory traj = method_arg == "euler" ? heat_flow_euler(inst.graph, f, t, steps)
                                                : heat_flow_resolvent(inst.graph, f, t, steps);
    emit(g, to_json(inst.graph, traj));
    return 0;
  }

  if (*kd) {
    Instance inst = parse_instance(instance_path);
    int xi = inst.graph.vertex_index(x_arg);
    int yi = inst.graph.vertex_index(y_arg);
    if (g.oracle) {
      double value = oracle_kd(inst.graph, xi, yi, lambda, {.seed = g.seed});
      emit(g, json{{"oracle", true},
                   {"x", x_arg},
                   {"y", y_arg},
                   {"lambda", lambda},
                   {"value", value}});
    } else {
      emit(g, to_json(inst.graph, kantorovich_difference(inst.graph, xi, yi, lambda, ms)));
    }
    return 0;
  }

  if (*curv) {
    Instance inst = parse_instance(instance_path);
    if (all_pairs == !pair_arg.empty())
      throw ValidationError("curvature needs exactly one of --pair or --all");
    auto schedule = parse_schedule(schedule_arg);
    std::vector<CurvatureEstimate> estimates;
    if (all_pairs) {
      estimates = curvature_matrix(inst.graph, schedule, ms);
    } else {
      auto comma = pair_arg.find(',');
      if (comma == std::string::npos) throw ValidationError("--pair expects X,Y");
      int xi = inst.graph.vertex_index(pair_arg.substr(0, comma));
      int yi = inst.graph.vertex_index(pair_arg.substr(comma + 1));
      estimates.push_back(coarse_curvature(inst.graph, xi, yi, schedule, ms));
    }
    if (g.format == "csv") {
      emit(g, curvature_csv(inst.graph, estimates));
    } else {
      json doc = json::array();
      for (const auto& e : estimates) doc.push_back(to_json(inst.graph, e));
      emit(g, doc);
    }
    return 0;
  }

  if (*rig) {
    Instance inst = parse_instance(instance_path);
    RigidityOptions opts;
    opts.curvature = !no_curvature;
    opts.schedule = parse_schedule(schedule_arg);
    opts.multistart = ms;
    opts.solver_tol = g.tol;
    emit(g, to_json(inst.graph, maximal_diameter_rigidity(inst.graph, K, opts)));
    return 0;
  }

  if (*ex) {
    std::filesystem::create_directories(dir_arg);
    auto dir = std::filesystem::path(dir_arg);
    write_instance({"h1", make_h1()}, dir / "h1.json");
    write_instance({"h2", make_h2()}, dir / "h2.json");
    write_instance({"single_edge", make_single_edge()}, dir / "single_edge.json");
    write_instance({"path3", make_path3()}, dir / "path3.json");
    write_instance({"h2_pendant", make_pendant_h2()}, dir / "h2_pendant.json");
    emit(g, json{{"written", {"h1.json", "h2.json", "single_edge.json", "path3.json",
                              "h2_pendant.json"}},
                 {"dir", dir.string()}});
    return 0;
  }

  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    return run(args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args);
}

}  // namespace hyperricci
