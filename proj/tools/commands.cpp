#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "resnet/approximation.hpp"
#include "resnet/edge_list.hpp"
#include "resnet/errors.hpp"
#include "resnet/flows.hpp"
#include "resnet/lattice.hpp"
#include "resnet/random_walk.hpp"
#include "resnet/solver.hpp"

namespace resnet::cli {

namespace {

using nlohmann::json;

struct SolverFlags {
  double tolerance = 1e-10;
  std::size_t max_iterations = 0;  // 0: default
  std::string preconditioner = "diagonal";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--tol", tolerance, "relative residual tolerance")->capture_default_str();
    cmd->add_option("--max-iter", max_iterations, "iteration cap (0 = 20 x vertices)")->capture_default_str();
    cmd->add_option("--precond", preconditioner, "none|diagonal")
        ->check(CLI::IsMember({"none", "diagonal"}))
        ->capture_default_str();
  }
  SolveConfig config() const {
    SolveConfig cfg;
    cfg.residual_tolerance = tolerance;
    if (max_iterations) cfg.max_iterations = max_iterations;
    cfg.preconditioner = preconditioner == "none" ? Preconditioner::none : Preconditioner::diagonal;
    cfg.validate();
    return cfg;
  }
  json to_json() const {
    return {{"tol", tolerance}, {"max_iter", max_iterations}, {"precond", preconditioner}};
  }
};

// Round-trip doubles, with non-finite values as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Site resolve_site(const LatticeSpec& lattice, const std::string& text, const Site* anchor) {
  if (text == "neighbor") {
    if (!anchor) throw ArgumentError("'neighbor' needs an anchor site");
    return lattice.neighbors(*anchor).front().site;
  }
  return lattice.parse_site(text);
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json_output = false;
  std::string manifest_path;
  json manifest;

  void emit_manifest() {
    manifest["tool_version"] = kToolVersion;
    manifest["csv_schema"] = kCsvSchemaVersion;
    manifest["timestamp"] = utc_timestamp();
    if (manifest_path.empty()) {
      err << "# manifest " << manifest.dump() << '\n';
      return;
    }
    std::ofstream file(manifest_path);
    if (!file) throw ArgumentError("cannot write manifest '" + manifest_path + "'");
    file << manifest.dump(2) << '\n';
  }
};

int cmd_bracket(Context& ctx, const std::string& kind, const std::string& p_text, const std::string& q_text,
                const std::string& radii_text, const SolverFlags& solver) {
  LatticeSpec lattice = LatticeSpec::from_name(kind);
  Site p = resolve_site(lattice, p_text, nullptr);
  Site q = resolve_site(lattice, q_text, &p);
  std::vector<int> radii = parse_radius_list(radii_text);
  ctx.manifest["command"] = "bracket";
  ctx.manifest["parameters"] = {{"lattice", kind},
                                {"p", lattice.format_site(p)},
                                {"q", lattice.format_site(q)},
                                {"radii", radii_text},
                                {"solver", solver.to_json()}};
  ctx.emit_manifest();

  auto seq = SwellingSequence::around(lattice, p, q);
  auto table = bracket_table(lattice, p, q, seq, radii, solver.config());
  auto violations = bracket_violations(table);
  if (ctx.json_output) {
    json rows = json::array();
    for (const Bracket& b : table) {
      rows.push_back({{"radius", b.radius},
                      {"vertices", b.vertices},
                      {"edges", b.edges},
                      {"short_R", number(b.short_resistance)},
                      {"cut_R", number(b.cut_resistance)},
                      {"gap", number(b.gap())}});
    }
    ctx.out << json{{"table", rows}, {"violations", violations}}.dump(2) << '\n';
  } else {
    write_bracket_csv(ctx.out, table);
  }
  for (const std::string& v : violations) ctx.err << "invariant violated: " << v << '\n';
  return violations.empty() ? kOk : kNumerical;
}

int cmd_foster_file(Context& ctx, const std::string& path, const SolverFlags& solver) {
  Network network = read_edge_list_file(path);
  ctx.manifest["command"] = "foster";
  ctx.manifest["parameters"] = {{"edges", path}, {"solver", solver.to_json()}};
  ctx.emit_manifest();
  if (!network.is_connected()) {
    ctx.err << "error: input network is disconnected\n";
    return kNumerical;
  }
  const double average = foster_average(network, solver.config());
  const double formula = foster_formula(network);
  if (ctx.json_output) {
    ctx.out << json{{"vertices", network.vertex_count()},
                    {"edges", network.edge_count()},
                    {"average_resistance", average},
                    {"formula", formula},
                    {"difference", average - formula}}
                   .dump(2)
            << '\n';
  } else {
    ctx.out << "vertices,edges,average_resistance,formula,difference\n"
            << network.vertex_count() << ',' << network.edge_count() << ',' << format_double(average) << ','
            << format_double(formula) << ',' << format_double(average - formula) << '\n';
  }
  return kOk;
}

int cmd_foster_lattice(Context& ctx, const std::string& kind, int radius, const SolverFlags& solver) {
  LatticeSpec lattice = LatticeSpec::from_name(kind);
  ctx.manifest["command"] = "foster";
  ctx.manifest["parameters"] = {{"lattice", kind}, {"radius", radius}, {"solver", solver.to_json()}};
  ctx.emit_manifest();
  VertexSubset s = ball(lattice, lattice.origin(), radius);
  const SolveConfig cfg = solver.config();
  CutResult cut = cut_network(lattice, s);
  ShortResult shorted = short_network(lattice, s);
  const double cut_average = foster_average(cut.network, cfg);
  const double short_average = foster_average(shorted.network, cfg);
  const double target = 2.0 / average_valence(lattice).value();
  if (ctx.json_output) {
    ctx.out << json{{"lattice", kind},
                    {"radius", radius},
                    {"cut_vertices", cut.network.vertex_count()},
                    {"cut_edges", cut.network.edge_count()},
                    {"cut_average", cut_average},
                    {"short_vertices", shorted.network.vertex_count()},
                    {"short_edges", shorted.network.edge_count()},
                    {"short_average", short_average},
                    {"two_over_average_valence", target}}
                   .dump(2)
            << '\n';
  } else {
    ctx.out << "lattice,radius,cut_vertices,cut_edges,cut_average,short_vertices,short_edges,short_average,"
               "two_over_average_valence\n"
            << kind << ',' << radius << ',' << cut.network.vertex_count() << ',' << cut.network.edge_count() << ','
            << format_double(cut_average) << ',' << shorted.network.vertex_count() << ','
            << shorted.network.edge_count() << ',' << format_double(short_average) << ',' << format_double(target)
            << '\n';
  }
  return kOk;
}

int cmd_walk(Context& ctx, const std::string& kind, const std::string& start_text, std::uint64_t steps,
             std::uint64_t trials, std::uint64_t seed, const std::string& ladder_text) {
  LatticeSpec lattice = LatticeSpec::from_name(kind);
  WalkConfig cfg;
  cfg.start = resolve_site(lattice, start_text, nullptr);
  cfg.max_steps = steps;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.validate();
  std::vector<std::uint64_t> limits;
  if (!ladder_text.empty()) {
    for (int r : parse_radius_list(ladder_text)) limits.push_back(static_cast<std::uint64_t>(r));
  } else {
    limits.push_back(steps);
  }
  ctx.manifest["command"] = "walk";
  ctx.manifest["seed"] = seed;
  ctx.manifest["parameters"] = {{"lattice", kind},    {"start", lattice.format_site(cfg.start)},
                                {"steps", steps},     {"trials", trials},
                                {"seed", seed},       {"ladder", ladder_text}};
  ctx.emit_manifest();
  auto stats = return_frequencies(lattice, cfg, limits);
  if (ctx.json_output) {
    json rows = json::array();
    for (const WalkStats& s : stats) {
      rows.push_back({{"max_steps", s.max_steps},
                      {"trials", s.trials},
                      {"seed", s.seed},
                      {"returns", s.returns},
                      {"return_frequency", s.return_frequency},
                      {"standard_error", s.standard_error},
                      {"mean_first_return_step", number(s.mean_first_return_step)}});
    }
    ctx.out << json{{"lattice", kind}, {"start", lattice.format_site(cfg.start)}, {"seed", seed}, {"stats", rows}}
                   .dump(2)
            << '\n';
  } else {
    write_walk_csv(ctx.out, lattice, cfg.start, stats);
  }
  return kOk;
}

int cmd_rinf(Context& ctx, const std::string& kind, const std::string& p_text, const std::string& radii_text,
             const SolverFlags& solver) {
  LatticeSpec lattice = LatticeSpec::from_name(kind);
  Site p = resolve_site(lattice, p_text, nullptr);
  std::vector<int> radii = parse_radius_list(radii_text);
  ctx.manifest["command"] = "rinf";
  ctx.manifest["parameters"] = {
      {"lattice", kind}, {"p", lattice.format_site(p)}, {"radii", radii_text}, {"solver", solver.to_json()}};
  ctx.emit_manifest();
  SwellingSequence seq(lattice, {p});
  InfinityTable result = resistance_to_infinity(lattice, p, seq, radii, solver.config());
  EscapeEstimate escape = escape_probability_via_resistance(lattice, p, result);
  if (ctx.json_output) {
    json rows = json::array();
    for (const EstimateRow& row : result.table.rows)
      rows.push_back({{"radius", row.radius}, {"vertices", row.vertices}, {"edges", row.edges}, {"R_inf", row.value}});
    json fit = {{"trend", to_string(result.fit.trend)},
                {"growth_exponent", number(result.fit.growth_exponent)},
                {"limit", result.fit.limit ? json(*result.fit.limit) : json(nullptr)}};
    json esc = {{"status", to_string(escape.status)}};
    if (escape.status != EscapeStatus::indeterminate) esc["probability"] = escape.probability;
    ctx.out << json{{"table", rows}, {"fit", fit}, {"escape", esc}}.dump(2) << '\n';
  } else {
    write_infinity_csv(ctx.out, result);
    ctx.out << "# trend " << to_string(result.fit.trend) << " growth_exponent "
            << format_double(result.fit.growth_exponent);
    if (result.fit.limit) ctx.out << " limit " << format_double(*result.fit.limit);
    ctx.out << '\n' << "# escape " << to_string(escape.status);
    if (escape.status != EscapeStatus::indeterminate) ctx.out << ' ' << format_double(escape.probability);
    ctx.out << '\n';
  }
  return kOk;
}

int cmd_treeprob(Context& ctx, const std::string& path, const SolverFlags& solver) {
  Network network = read_edge_list_file(path);
  ctx.manifest["command"] = "treeprob";
  ctx.manifest["parameters"] = {{"edges", path}, {"solver", solver.to_json()}};
  ctx.emit_manifest();
  auto probabilities = spanning_tree_edge_probabilities(network);
  auto resistances = edge_resistances(network, solver.config());
  double max_diff = 0.0;
  json rows = json::array();
  std::ostringstream csv;
  csv << "edge,u,v,conductance,tree_probability,resistance,difference\n";
  for (EdgeId e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    const double diff = probabilities[e] - resistances[e];
    max_diff = std::max(max_diff, std::abs(diff));
    csv << e << ',' << edge.tail << ',' << edge.head << ',' << format_double(edge.conductance) << ','
        << format_double(probabilities[e]) << ',' << format_double(resistances[e]) << ',' << format_double(diff)
        << '\n';
    rows.push_back({{"edge", e},
                    {"u", edge.tail},
                    {"v", edge.head},
                    {"conductance", edge.conductance},
                    {"tree_probability", probabilities[e]},
                    {"resistance", resistances[e]},
                    {"difference", diff}});
  }
  if (ctx.json_output) {
    ctx.out << json{{"edges", rows}, {"max_abs_difference", max_diff}}.dump(2) << '\n';
  } else {
    ctx.out << csv.str() << "# max_abs_difference " << format_double(max_diff) << '\n';
  }
  return kOk;
}

int cmd_resistance(Context& ctx, const std::string& path, VertexId p, VertexId q, const SolverFlags& solver) {
  Network network = read_edge_list_file(path);
  ctx.manifest["command"] = "resistance";
  ctx.manifest["parameters"] = {{"edges", path}, {"p", p}, {"q", q}, {"solver", solver.to_json()}};
  ctx.emit_manifest();
  ResistanceReport report = effective_resistance(network, p, q, solver.config());
  if (ctx.json_output) {
    ctx.out << json{{"p", p},
                    {"q", q},
                    {"resistance", report.resistance},
                    {"iterations", report.iterations},
                    {"residual", report.residual}}
                   .dump(2)
            << '\n';
  } else {
    ctx.out << "p,q,resistance,iterations,residual\n"
            << p << ',' << q << ',' << format_double(report.resistance) << ',' << report.iterations << ','
            << format_double(report.residual) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective resistance on finite networks and lattice approximations", "resnet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Context ctx{out, err};
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", ctx.json_output, "emit JSON instead of CSV");
    cmd->add_option("--manifest", ctx.manifest_path, "write the run manifest to this file instead of stderr");
  };

  std::string kind, p_text = "origin", q_text = "neighbor", radii_text, path, ladder;
  SolverFlags solver;
  int radius = 10;
  std::uint64_t steps = 10000, trials = 1000, seed = 0;
  VertexId p_id = 0, q_id = 1;

  auto* bracket = app.add_subcommand("bracket", "short/cut resistance brackets along a swelling sequence");
  bracket->add_option("lattice", kind, "grid1|grid2|grid3|grid4|tri|hex|subdiv|tree3|dumbbell3")->required();
  bracket->add_option("--p", p_text, "first terminal (coordinates, or 'origin')")->capture_default_str();
  bracket->add_option("--q", q_text, "second terminal (coordinates, or 'neighbor' of p)")->capture_default_str();
  bracket->add_option("--radii", radii_text, "radius list, e.g. 2..32 or 2,4,8")->required();
  solver.add_to(bracket);
  add_common(bracket);

  auto* foster = app.add_subcommand("foster", "average edge resistance versus Foster's formula");
  auto* foster_edges = foster->add_option("--edges", path, "edge-list file");
  auto* foster_kind = foster->add_option("lattice", kind, "lattice kind (with --radius)");
  foster->add_option("--radius", radius, "ball radius around the origin")->capture_default_str();
  foster_edges->excludes(foster_kind);
  solver.add_to(foster);
  add_common(foster);

  auto* walk = app.add_subcommand("walk", "Monte-Carlo return frequency of the random walk");
  walk->add_option("lattice", kind, "lattice kind")->required();
  walk->add_option("--start", p_text, "start site")->capture_default_str();
  walk->add_option("--steps", steps, "maximum steps per trial")->capture_default_str();
  walk->add_option("--trials", trials, "number of trials")->capture_default_str();
  walk->add_option("--seed", seed, "64-bit seed")->capture_default_str();
  walk->add_option("--ladder", ladder, "several step limits, e.g. 1000,10000,100000 (overrides --steps)");
  add_common(walk);

  auto* rinf = app.add_subcommand("rinf", "resistance to infinity along balls around p");
  rinf->add_option("lattice", kind, "lattice kind")->required();
  rinf->add_option("--p", p_text, "site")->capture_default_str();
  rinf->add_option("--radii", radii_text, "radius list")->required();
  solver.add_to(rinf);
  add_common(rinf);

  auto* treeprob = app.add_subcommand("treeprob", "spanning-tree edge probabilities versus edge resistances");
  treeprob->add_option("edges", path, "edge-list file")->required();
  solver.add_to(treeprob);
  add_common(treeprob);

  auto* resistance = app.add_subcommand("resistance", "effective resistance between two vertices of an edge list");
  resistance->add_option("edges", path, "edge-list file")->required();
  resistance->add_option("--p", p_id, "source vertex")->required();
  resistance->add_option("--q", q_id, "sink vertex")->required();
  solver.add_to(resistance);
  add_common(resistance);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (bracket->parsed()) return cmd_bracket(ctx, kind, p_text, q_text, radii_text, solver);
    if (foster->parsed()) {
      if (!path.empty()) return cmd_foster_file(ctx, path, solver);
      if (kind.empty()) throw ArgumentError("foster needs --edges FILE or a lattice kind");
      return cmd_foster_lattice(ctx, kind, radius, solver);
    }
    if (walk->parsed()) return cmd_walk(ctx, kind, p_text, steps, trials, seed, ladder);
    if (rinf->parsed()) return cmd_rinf(ctx, kind, p_text, radii_text, solver);
    if (treeprob->parsed()) return cmd_treeprob(ctx, path, solver);
    if (resistance->parsed()) return cmd_resistance(ctx, path, p_id, q_id, solver);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace resnet::cli
