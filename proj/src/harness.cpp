#include "rmt/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

std::string graph_name(GraphKind g) {
  switch (g) {
    case GraphKind::ring: return "ring";
    case GraphKind::complete: return "complete";
    case GraphKind::star: return "star";
    case GraphKind::erdos_renyi: return "er";
  }
  return "?";
}

GraphKind graph_from_name(const std::string& s) {
  if (s == "ring") return GraphKind::ring;
  if (s == "complete") return GraphKind::complete;
  if (s == "star") return GraphKind::star;
  if (s == "er") return GraphKind::erdos_renyi;
  throw ConfigError("unknown graph kind: " + s);
}

void RunConfig::validate() const {
  algo.validate();
  if (nodes < 2) throw ConfigError("nodes must be >= 2");
  if (d < 1 || r < 1 || r > d) throw ConfigError("need 1 <= r <= d");
  if (samples < d) throw ConfigError("samples per node must be >= d");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0, 1)");
  if (!(sigma0 > 0.0)) throw ConfigError("sigma0 must be > 0");
  if (graph == GraphKind::erdos_renyi && !(er_p > 0.0 && er_p <= 1.0))
    throw ConfigError("er-p must be in (0, 1]");
  if (record_every < 1) throw ConfigError("record-every must be >= 1");
}

RunOutcome run_experiment(const RunConfig& cfg) {
  cfg.validate();
  GraphParams gp;
  gp.er_p = cfg.er_p;
  Graph g = build_graph(cfg.graph, cfg.nodes, gp, cfg.algo.seed);
  MixingMatrix mm = with_consensus_steps(metropolis_weights(g), cfg.algo.t);
  EigProblem p = generate_synthetic(cfg.nodes, cfg.samples, cfg.d, cfg.r, cfg.delta,
                                    cfg.sigma0, cfg.algo.seed);

  RunOutcome out;
  const std::size_t every = cfg.record_every;
  RecordSink sink = [&](const IterateRecord& rec) {
    if (rec.k % every == 0) out.written.push_back(rec);
  };
  out.summary = run(p, mm, cfg.algo, sink);
  if (out.summary.final_record.k % every != 0)
    out.written.push_back(out.summary.final_record);

  if (!cfg.out_path.empty()) write_csv(out.written, cfg.out_path);
  if (!cfg.svg_path.empty()) emit_svg_chart({cfg.out_path}, "ds", cfg.svg_path);
  return out;
}

namespace {

std::string strip_csv_suffix(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return path.substr(0, path.size() - 4);
  return path;
}

void apply_axis_value(RunConfig& rc, const std::string& axis, const std::string& value) {
  if (axis == "beta") {
    rc.algo.beta = std::stod(value);
  } else if (axis == "alpha-hat") {
    rc.algo.alpha_hat = std::stod(value);
  } else if (axis == "algo") {
    rc.algo.algo = algo_from_name(value);
  } else {
    throw ConfigError("unknown sweep axis: " + axis);
  }
}

long iters_to_tolerance(const RunOutcome& outcome, double tol) {
  for (const IterateRecord& r : outcome.written)
    if (r.ds <= tol) return long(r.k);
  return -1;
}

}  // namespace

std::vector<SweepCell> sweep(const RunConfig& base, const std::string& axis,
                             const std::vector<std::string>& values,
                             const std::string& stem) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (axis != "beta" && axis != "alpha-hat" && axis != "algo")
    throw ConfigError("unknown sweep axis: " + axis);
  std::vector<SweepCell> cells;
  for (const std::string& value : values) {
    SweepCell cell;
    cell.value = value;
    cell.csv_path = stem + "_" + axis + "_" + value + ".csv";
    try {
      RunConfig rc = base;
      apply_axis_value(rc, axis, value);
      rc.out_path = cell.csv_path;
      rc.svg_path.clear();
      RunOutcome outcome = run_experiment(rc);
      cell.iters_to_tol = iters_to_tolerance(outcome, rc.algo.tol_ds);
      cell.final_ds = outcome.summary.final_record.ds;
      cell.final_fgap = outcome.summary.final_record.f_gap;
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
      cell.iters_to_tol = -1;
      cell.final_ds = std::nan("");
      cell.final_fgap = std::nan("");
    }
    cells.push_back(std::move(cell));
  }
  write_sweep_summary(cells, stem + "_summary.csv");
  return cells;
}

void write_sweep_summary(const std::vector<SweepCell>& cells, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw std::runtime_error("sweep summary: cannot open " + path);
  std::fprintf(f, "value,iters_to_tol,final_ds,final_fgap\n");
  for (const SweepCell& c : cells) {
    std::fprintf(f, "%s,%ld,%.17g,%.17g\n", c.value.c_str(), c.iters_to_tol,
                 c.final_ds, c.final_fgap);
  }
  if (std::fclose(f) != 0) throw std::runtime_error("sweep summary: write failed");
}

std::vector<SweepCell> compare(const RunConfig& base, const std::string& stem) {
  return sweep(base, "algo", {"dprgd", "dprgt", "drgtm", "rmtracking"}, stem);
}

namespace {

void add_common_options(CLI::App* cmd, RunConfig& rc, std::string& algo_s,
                        std::string& graph_s, std::string& minit_s,
                        std::string& gpoint_s, std::string& cfg_path, bool with_algo,
                        bool algo_required) {
  if (with_algo) {
    auto* opt = cmd->add_option("--algo", algo_s,
                                "algorithm: dprgd|dprgt|drgtm|rmtracking")
                    ->check(CLI::IsMember({"dprgd", "dprgt", "drgtm", "rmtracking"}));
    if (algo_required) opt->required();
  }
  cmd->add_option("--graph", graph_s, "topology: ring|complete|star|er")
      ->check(CLI::IsMember({"ring", "complete", "star", "er"}));
  cmd->add_option("--er-p", rc.er_p, "Erdos-Renyi edge probability");
  cmd->add_option("--nodes", rc.nodes, "number of agents");
  cmd->add_option("--d", rc.d, "ambient dimension");
  cmd->add_option("--r", rc.r, "frame width (columns)");
  cmd->add_option("--samples", rc.samples, "data rows per agent");
  cmd->add_option("--delta", rc.delta, "eigengap ratio");
  cmd->add_option("--sigma0", rc.sigma0, "top singular value of the stacked data");
  cmd->add_option("--alpha-hat", rc.algo.alpha_hat, "normalized step size");
  cmd->add_option("--beta", rc.algo.beta, "momentum parameter");
  cmd->add_option("--t", rc.algo.t, "gossip rounds per optimization round");
  cmd->add_option("--max-iters", rc.algo.max_iters, "iteration cap");
  cmd->add_option("--tol-ds", rc.algo.tol_ds, "termination tolerance on ds");
  cmd->add_option("--seed", rc.algo.seed, "RNG seed (problem + initial frames)");
  cmd->add_option("--record-every", rc.record_every, "CSV row stride");
  cmd->add_option("--momentum-init", minit_s, "zero|gradient")
      ->check(CLI::IsMember({"zero", "gradient"}));
  cmd->add_option("--grad-point", gpoint_s, "current|next")
      ->check(CLI::IsMember({"current", "next"}));
  cmd->add_option("--out", rc.out_path, "output CSV path (stem for sweep/compare)")
      ->required();
  cmd->add_option("--svg", rc.svg_path, "optional SVG chart path");
  cmd->add_option("--config", cfg_path, "key = value file; flags take precedence");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads key = value lines into --key=value tokens.
std::vector<std::string> read_config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value, got: " + t);
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("config: empty key in: " + t);
    tokens.push_back("--" + key + "=" + trim(t.substr(eq + 1)));
  }
  return tokens;
}

// Splices --config file contents into the argument list right after the
// subcommand, skipping any key the command line already sets so that flags
// take precedence.
void expand_config_file(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return;

  std::set<std::string> given;
  for (const std::string& a : args) {
    if (a.rfind("--", 0) != 0 || a.size() <= 2) continue;
    const auto eq = a.find('=');
    given.insert(eq == std::string::npos ? a.substr(2) : a.substr(2, eq - 2));
  }

  std::vector<std::string> spliced;
  for (const std::string& tok : read_config_tokens(path)) {
    const std::string key = tok.substr(2, tok.find('=') - 2);
    if (key == "config" || given.count(key) > 0) continue;
    spliced.push_back(tok);
  }

  auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "run" || a == "sweep" || a == "compare";
  });
  if (sub == args.end()) return;
  args.insert(sub + 1, spliced.begin(), spliced.end());
}

void print_cell(std::ostream& os, const SweepCell& c) {
  if (c.failed) {
    os << c.value << " FAILED: " << c.error << "\n";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", c.final_ds);
  os << c.value << " iters_to_tol=" << c.iters_to_tol << " final_ds=" << buf
     << " out=" << c.csv_path << "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"decentralized Riemannian optimization over Stiefel frames"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string algo_s;
  std::string graph_s = "ring";
  std::string minit_s = "gradient";
  std::string gpoint_s = "current";
  std::string cfg_path;
  std::string axis;
  std::vector<std::string> values;

  CLI::App* cmd_run = app.add_subcommand("run", "single optimization run");
  add_common_options(cmd_run, rc, algo_s, graph_s, minit_s, gpoint_s, cfg_path, true,
                     true);

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "one run per parameter value");
  add_common_options(cmd_sweep, rc, algo_s, graph_s, minit_s, gpoint_s, cfg_path, true,
                     false);
  cmd_sweep->add_option("--axis", axis, "swept parameter: beta|alpha-hat|algo")
      ->check(CLI::IsMember({"beta", "alpha-hat", "algo"}))
      ->required();
  cmd_sweep->add_option("--values", values, "comma-separated values")
      ->delimiter(',')
      ->required();

  CLI::App* cmd_compare = app.add_subcommand("compare", "all four algorithms");
  add_common_options(cmd_compare, rc, algo_s, graph_s, minit_s, gpoint_s, cfg_path,
                     false, false);

  app.add_subcommand("selftest", "fast built-in invariant checks");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    expand_config_file(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> cargs;
  cargs.push_back(argc > 0 ? argv[0] : "rmtrack");
  for (const std::string& a : args) cargs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return code;
    return 2;
  }

  try {
    rc.graph = graph_from_name(graph_s);
    rc.algo.momentum_init =
        minit_s == "zero" ? MomentumInit::zero : MomentumInit::gradient;
    rc.algo.grad_point = gpoint_s == "next" ? GradPoint::next : GradPoint::current;

    if (app.got_subcommand("selftest")) return selftest(std::cout);

    if (app.got_subcommand("run")) {
      rc.algo.algo = algo_from_name(algo_s);
      RunOutcome outcome = run_experiment(rc);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", outcome.summary.final_record.ds);
      std::cout << algo_name(rc.algo.algo) << " k=" << outcome.summary.final_round
                << " reason=" << stop_reason_name(outcome.summary.reason)
                << " ds=" << buf << " out=" << rc.out_path << "\n";
      return 0;
    }

    if (app.got_subcommand("sweep")) {
      if (axis != "algo") {
        if (algo_s.empty()) throw ConfigError("sweep over " + axis + " needs --algo");
        rc.algo.algo = algo_from_name(algo_s);
      }
      const std::string stem = strip_csv_suffix(rc.out_path);
      std::vector<SweepCell> cells = sweep(rc, axis, values, stem);
      for (const SweepCell& c : cells) print_cell(std::cout, c);
      std::cout << "summary: " << stem << "_summary.csv\n";
      if (!rc.svg_path.empty()) {
        std::vector<std::string> paths;
        for (const SweepCell& c : cells)
          if (!c.failed) paths.push_back(c.csv_path);
        if (!paths.empty()) emit_svg_chart(paths, "ds", rc.svg_path);
      }
      for (const SweepCell& c : cells)
        if (c.failed) return 1;
      return 0;
    }

    if (app.got_subcommand("compare")) {
      const std::string stem = strip_csv_suffix(rc.out_path);
      std::vector<SweepCell> cells = compare(rc, stem);
      for (const SweepCell& c : cells) print_cell(std::cout, c);
      std::cout << "summary: " << stem << "_summary.csv\n";
      if (!rc.svg_path.empty()) {
        std::vector<std::string> paths;
        for (const SweepCell& c : cells)
          if (!c.failed) paths.push_back(c.csv_path);
        if (!paths.empty()) emit_svg_chart(paths, "ds", rc.svg_path);
      }
      for (const SweepCell& c : cells)
        if (c.failed) return 1;
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rmt
