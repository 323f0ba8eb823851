// rgiso: theory reports, Monte Carlo simulations and figures for induced
// subgraph containment and maximum common induced subgraphs in random graphs.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "rgiso/errors.hpp"
#include "rgiso/graph.hpp"
#include "rgiso/montecarlo.hpp"
#include "rgiso/pseudorandom.hpp"
#include "rgiso/report_io.hpp"
#include "rgiso/solver.hpp"
#include "rgiso/theory.hpp"

namespace {

using rgiso::io::Json;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitBudget = 4;

struct Config {
  std::string command;
  std::string mode;
  double p1 = 0.5;
  double p2 = 0.5;
  double N = 0;
  int n = 0;
  std::optional<std::int64_t> m;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  std::int64_t budget_ms = 10000;
  std::optional<std::uint64_t> budget_nodes;
  int workers = 0;
  int grid = 9;
  int slack = 1;
  std::string out = "-";
  std::string format;
  std::string graph_path;
  std::string property = "A";
  std::string svg_path;
};

struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw rgiso::DomainError(what);
}

int int_N(const Config& c) {
  require(c.N >= 1 && c.N <= 100000 && c.N == std::floor(c.N), "--N must be an integer in [1, 100000] here");
  return static_cast<int>(c.N);
}

rgiso::SearchBudget budget(const Config& c) {
  require(c.budget_ms >= 1, "--budget-ms must be at least 1");
  rgiso::SearchBudget b;
  b.cpu_ms = c.budget_ms;
  b.max_nodes = c.budget_nodes;
  return b;
}

rgiso::mc::Exec exec(const Config& c) {
  require(c.workers >= 0, "--workers must be non-negative");
  return {c.workers == 0 ? rgiso::mc::default_workers() : c.workers};
}

// Worker count is left out so artifacts are byte-identical across pool sizes.
Json meta(const Config& c) {
  Json j;
  j["command"] = c.command;
  if (!c.mode.empty()) j["mode"] = c.mode;
  const auto& cmd = c.command;
  const bool sim = cmd == "simulate" || cmd == "heatmap";
  if (cmd == "threshold" || cmd == "mcis-location" || (sim && cmd != "heatmap" && c.mode != "pseudorandom")) {
    if (c.mode != "fixed-pattern") j["p1"] = c.p1;
    j["p2"] = c.p2;
  }
  if (cmd == "simulate" && c.mode == "pseudorandom") {
    j["property"] = c.property;
    j["n"] = c.n;
    if (c.m) {
      j["model"] = "gnm";
      j["m"] = *c.m;
    } else {
      j["model"] = "gnp";
      j["p"] = c.p1;
    }
  }
  if (cmd != "region-map" && cmd != "check-pseudorandom" && c.mode != "pseudorandom") j["N"] = c.N;
  if (cmd == "heatmap" || c.mode == "containment" || c.mode == "copies") j["n"] = c.n;
  if (cmd == "region-map" || cmd == "heatmap") j["grid"] = c.grid;
  if (sim) {
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    if (c.mode != "pseudorandom") {
      j["budget_ms"] = c.budget_ms;
      if (c.budget_nodes) j["budget_nodes"] = *c.budget_nodes;
    }
  }
  if (c.mode == "mcis") j["slack"] = c.slack;
  if (!c.graph_path.empty()) j["graph"] = c.graph_path;
  if (cmd == "check-pseudorandom") {
    if (c.m) j["m"] = *c.m;
  }
  j["format"] = c.format;
  return j;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
    out_ = path == "-" ? &std::cout : &file_;
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit_json(const Config& c, const Json& report) {
  Json doc;
  doc["meta"] = meta(c);
  doc["report"] = report;
  Output o(c.out);
  *o << doc.dump(2) << '\n';
}

rgiso::Graph load_graph(const std::string& path) {
  require(!path.empty(), "--graph is required");
  std::ifstream in(path);
  if (!in) throw rgiso::DomainError("cannot read graph file " + path);
  return rgiso::read_graph(in);
}

void check_format(Config& c, std::initializer_list<const char*> allowed) {
  if (c.format.empty()) c.format = *allowed.begin();
  for (const char* f : allowed)
    if (c.format == f) return;
  throw CLI::ValidationError("--format", "unsupported format " + c.format + " for " + c.command);
}

void cmd_threshold(Config& c) {
  check_format(c, {"json"});
  const rgiso::ProbPair pp(c.p1, c.p2);
  Json r = rgiso::io::to_json(rgiso::theory::threshold_report(pp, c.N));
  r["f_samples"] = rgiso::io::limit_f_samples(pp);
  emit_json(c, r);
}

void cmd_mcis_location(Config& c) {
  check_format(c, {"json"});
  emit_json(c, rgiso::io::to_json(rgiso::theory::n_N(rgiso::ProbPair(c.p1, c.p2), c.N)));
}

void cmd_region_map(Config& c) {
  check_format(c, {"csv", "svg"});
  require(c.grid >= 8, "--grid must be at least 8 for region maps");
  const auto cells = rgiso::io::region_map(c.grid);
  Output o(c.out);
  if (c.format == "svg") {
    rgiso::io::write_region_svg(*o, cells, c.grid);
  } else {
    rgiso::io::write_csv_meta(*o, meta(c));
    rgiso::io::write_region_csv(*o, cells);
  }
}

void emit_estimate(const Config& c, const rgiso::mc::EstimateReport& r, double x, double y, int n) {
  if (c.format == "json") {
    emit_json(c, rgiso::io::to_json(r));
    return;
  }
  Output o(c.out);
  rgiso::io::write_csv_meta(*o, meta(c));
  *o << rgiso::io::kContainmentHeader << '\n';
  rgiso::io::write_containment_row(*o, x, y, n, static_cast<int>(c.N), r.trials, r, r.timeouts);
}

template <class Fn>
auto budgeted(Fn&& fn) {
  try {
    return fn();
  } catch (const rgiso::UndefinedRateError& e) {
    throw BudgetExhausted(e.what());
  }
}

void emit_distribution(const Config& c, const rgiso::mc::DistributionReport& d, const Json& report) {
  if (d.timeouts == d.trials) throw BudgetExhausted("every trial exhausted its search budget");
  if (c.format == "json") {
    emit_json(c, report);
    return;
  }
  Output o(c.out);
  Json m = meta(c);
  m["metric"] = d.metric;
  m["distance"] = rgiso::io::sig9(d.distance);
  m["timeouts"] = d.timeouts;
  rgiso::io::write_csv_meta(*o, m);
  rgiso::io::write_distribution_csv(*o, d.histogram);
}

void cmd_simulate(Config& c) {
  namespace mc = rgiso::mc;
  namespace pr = rgiso::pseudorandom;
  check_format(c, {"csv", "json"});
  require(c.trials >= 1, "--trials must be at least 1");
  const auto ex = exec(c);
  if (c.mode == "pseudorandom") {
    require(c.n >= 1, "--n must be at least 1");
    const pr::Property prop = pr::parse_property(c.property);
    pr::Model model = pr::GnpModel{c.n, c.p1};
    if (c.m) {
      require(*c.m >= 0 && *c.m <= rgiso::pair_count(c.n), "--m must lie in [0, C(n,2)]");
      model = pr::GnmModel{c.n, *c.m};
    } else {
      require(c.p1 >= 0.0 && c.p1 <= 1.0, "--p must lie in [0, 1]");
    }
    const auto r = mc::estimate_property_rate(prop, model, c.trials, c.seed, ex);
    emit_estimate(c, r, c.m ? static_cast<double>(*c.m) : c.p1, 0.0, c.n);
    return;
  }
  const int N = int_N(c);
  const auto b = budget(c);
  if (c.mode == "containment") {
    const auto r = budgeted([&] { return mc::estimate_containment(c.n, c.p1, N, c.p2, c.trials, c.seed, b, ex); });
    emit_estimate(c, r, c.p1, c.p2, c.n);
  } else if (c.mode == "copies") {
    require(c.p1 > 0.0 && c.p1 < 1.0 && c.p2 > 0.0 && c.p2 < 1.0, "--p1 and --p2 must lie in (0, 1)");
    const auto d = budgeted([&] {
      return c.p2 == 0.5 ? mc::copy_count_distribution(c.n, N, c.p1, c.p2, c.trials, c.seed, b, ex)
                         : mc::log_copy_statistic(c.n, N, c.p1, c.p2, c.trials, c.seed, b, ex);
    });
    emit_distribution(c, d, rgiso::io::to_json(d));
  } else if (c.mode == "mcis") {
    const auto r = mc::mcis_concentration(N, c.p1, c.p2, c.trials, c.seed, b, c.slack, ex);
    emit_distribution(c, r.distribution, rgiso::io::to_json(r));
  } else if (c.mode == "fixed-pattern") {
    const rgiso::Graph H = load_graph(c.graph_path);
    require(H.n() <= N, "pattern has more vertices than --N");
    const auto r = budgeted([&] { return mc::fixed_pattern_containment(H, N, c.p2, c.trials, c.seed, b, ex); });
    if (c.format == "json") {
      Json j = rgiso::io::to_json(r);
      if (H.n() >= 1 && c.p2 > 0.0 && c.p2 < 1.0 && N >= 3) {
        const auto pred = rgiso::theory::predict_fixed_pattern_containment(H.n(), H.edge_count(), N,
                                                                             rgiso::ProbPair(0.5, c.p2));
        j["prediction"] = rgiso::theory::to_string(pred.verdict);
        j["prediction_score"] = pred.score;
        j["eps_N"] = pred.eps_N;
      }
      emit_json(c, j);
    } else {
      emit_estimate(c, r, H.n() > 1 ? static_cast<double>(H.edge_count()) / rgiso::pair_count(H.n()) : 0.0, c.p2,
                    H.n());
    }
  } else {
    throw CLI::ValidationError("mode", "unknown simulate mode " + c.mode);
  }
}

void cmd_heatmap(Config& c) {
  check_format(c, {"csv", "svg"});
  const int N = int_N(c);
  const auto cells =
      rgiso::mc::heatmap_containment(N, c.n, c.grid, c.trials, c.seed, budget(c), exec(c));
  bool any = false;
  for (const auto& cell : cells) any = any || cell.estimate.has_value();
  if (!any) throw BudgetExhausted("every trial in every cell exhausted its search budget");
  auto write_svg = [&](std::ostream& out) { rgiso::io::write_heatmap_svg(out, cells, c.grid, N, c.n); };
  if (c.format == "svg") {
    Output o(c.out);
    write_svg(*o);
    return;
  }
  {
    Output o(c.out);
    rgiso::io::write_csv_meta(*o, meta(c));
    *o << rgiso::io::kContainmentHeader << '\n';
    for (const auto& cell : cells) {
      rgiso::io::write_containment_row(*o, cell.x, cell.y, c.n, N, c.trials, cell.estimate, cell.timeouts);
    }
  }
  if (!c.svg_path.empty()) {
    Output o(c.svg_path);
    write_svg(*o);
  }
}

void cmd_check_pseudorandom(Config& c) {
  namespace pr = rgiso::pseudorandom;
  check_format(c, {"json"});
  const rgiso::Graph g = load_graph(c.graph_path);
  const std::int64_t m = c.m.value_or(g.edge_count());
  const double p = c.p1;
  Json r;
  r["n"] = g.n();
  r["edges"] = g.edge_count();
  r["A"] = rgiso::io::to_json(pr::check_A(g));
  r["A"]["min_size"] = pr::asymmetry_threshold(g.n());
  if (m == g.edge_count()) {
    r["E"] = rgiso::io::to_json(pr::check_E(g, m));
  } else {
    r["E"] = {{"holds", false}, {"witness", nullptr}, {"note", "m differs from the edge count"}};
  }
  r["E"]["m"] = m;
  r["F"] = rgiso::io::to_json(pr::check_F(g, p));
  r["F"]["p"] = p;
  r["asymmetric"] = rgiso::is_asymmetric(g);
  emit_json(c, r);
}

void cmd_generate(Config& c) {
  check_format(c, {"txt"});
  require(c.n >= 0, "--n must be non-negative");
  rgiso::Graph g = c.m ? rgiso::gen_gnm(c.n, *c.m, rgiso::Seed{c.seed, 0})
                       : rgiso::gen_gnp(c.n, c.p1, rgiso::Seed{c.seed, 0});
  Output o(c.out);
  rgiso::write_graph(*o, g);
}

void add_probs(CLI::App* app, Config& c) {
  app->add_option("--p1", c.p1, "pattern edge probability")->capture_default_str();
  app->add_option("--p2", c.p2, "target edge probability")->capture_default_str();
}

void add_trials(CLI::App* app, Config& c) {
  app->add_option("--trials", c.trials, "Monte Carlo trials")->capture_default_str();
  app->add_option("--seed", c.seed, "master seed")->capture_default_str();
  app->add_option("--budget-ms", c.budget_ms, "per-trial CPU time budget")->capture_default_str();
  app->add_option("--budget-nodes", c.budget_nodes, "per-trial search node budget");
  app->add_option("--workers", c.workers, "worker threads (0: RGISO_WORKERS or all cores)")->capture_default_str();
}

void add_io(CLI::App* app, Config& c) {
  app->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
  app->add_option("--format", c.format, "csv, json or svg");
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Induced subgraph containment and MCIS in random graphs"};
  app.require_subcommand(1);

  auto* th = app.add_subcommand("threshold", "containment threshold report");
  add_probs(th, c);
  th->add_option("--N", c.N, "target size")->required();
  add_io(th, c);

  auto* loc = app.add_subcommand("mcis-location", "location of the MCIS size n_N and its region");
  add_probs(loc, c);
  loc->add_option("--N", c.N, "graph size")->required();
  add_io(loc, c);

  auto* rm = app.add_subcommand("region-map", "region tags over the unit square");
  rm->add_option("--grid", c.grid, "points per axis")->capture_default_str();
  add_io(rm, c);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates");
  sim->require_subcommand(1);
  for (const char* mode : {"containment", "copies", "mcis", "fixed-pattern", "pseudorandom"}) {
    auto* s = sim->add_subcommand(mode);
    s->add_option("--N", c.N, "target size");
    add_trials(s, c);
    add_io(s, c);
    const std::string m = mode;
    if (m == "pseudorandom") {
      s->add_option("--p,--p1", c.p1, "G(n,p) edge probability")->capture_default_str();
      s->add_option("--n", c.n, "graph size")->required();
      s->add_option("--m", c.m, "edge count; selects G(n,m)");
      s->add_option("--property", c.property, "A, E, F, AE, AF or asym")->capture_default_str();
    } else if (m == "fixed-pattern") {
      s->get_option("--N")->required();
      s->add_option("--p2", c.p2, "target edge probability")->capture_default_str();
      s->add_option("--graph", c.graph_path, "pattern graph file")->required();
    } else {
      s->get_option("--N")->required();
      add_probs(s, c);
      if (m == "mcis") {
        s->add_option("--slack", c.slack, "interval widening")->capture_default_str();
      } else {
        s->add_option("--n", c.n, "pattern size")->required();
      }
    }
  }

  auto* hm = app.add_subcommand("heatmap", "containment rates over a grid of (p1, p2)");
  hm->add_option("--N", c.N, "target size")->required();
  hm->add_option("--n", c.n, "pattern size")->required();
  hm->add_option("--grid", c.grid, "points per axis")->capture_default_str();
  hm->add_option("--svg", c.svg_path, "also write the SVG raster here");
  add_trials(hm, c);
  add_io(hm, c);

  auto* cp = app.add_subcommand("check-pseudorandom", "pseudorandom class membership of one graph");
  cp->add_option("--graph", c.graph_path, "graph file")->required();
  cp->add_option("--m", c.m, "edge count for the edge-distribution class");
  cp->add_option("--p", c.p1, "reference density for the edge-count class")->capture_default_str();
  add_io(cp, c);

  auto* gen = app.add_subcommand("generate", "sample a random graph in the text format");
  gen->add_option("--n", c.n, "vertices")->required();
  gen->add_option("--p", c.p1, "edge probability")->capture_default_str();
  gen->add_option("--m", c.m, "edge count; selects G(n,m)");
  gen->add_option("--seed", c.seed, "seed")->capture_default_str();
  add_io(gen, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (th->parsed()) {
      c.command = "threshold";
      cmd_threshold(c);
    } else if (loc->parsed()) {
      c.command = "mcis-location";
      cmd_mcis_location(c);
    } else if (rm->parsed()) {
      c.command = "region-map";
      cmd_region_map(c);
    } else if (sim->parsed()) {
      c.command = "simulate";
      c.mode = sim->get_subcommands().front()->get_name();
      cmd_simulate(c);
    } else if (hm->parsed()) {
      c.command = "heatmap";
      cmd_heatmap(c);
    } else if (cp->parsed()) {
      c.command = "check-pseudorandom";
      cmd_check_pseudorandom(c);
    } else if (gen->parsed()) {
      c.command = "generate";
      cmd_generate(c);
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "rgiso: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExhausted& e) {
    std::cerr << "rgiso: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::logic_error& e) {
    // DomainError, SizeLimitError and invalid_argument all derive from logic_error.
    std::cerr << "rgiso: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "rgiso: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
