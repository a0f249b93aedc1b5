#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topovel/complex.hpp"
#include "topovel/day_graph.hpp"
#include "topovel/distances.hpp"
#include "topovel/evaluate.hpp"
#include "topovel/featurize.hpp"
#include "topovel/persistence.hpp"
#include "topovel/stability.hpp"
#include "topovel/summaries.hpp"
#include "topovel/synth.hpp"

namespace {

using namespace topovel;

// "1..7", "1,2,5" or a mix such as "1..3,7".
template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const long lo = std::stol(item.substr(0, dots));
      const long hi = std::stol(item.substr(dots + 2));
      if (lo > hi) throw std::invalid_argument("bad range " + item);
      for (long v = lo; v <= hi; ++v) out.push_back(static_cast<T>(v));
    } else {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument("bad list item " + item);
      out.push_back(static_cast<T>(v));
    }
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Graph from `node,weight` and `u,v` files.
WeightedGraph read_graph(const std::string& nodes_path, const std::string& edges_path) {
  auto nodes_in = open_or_throw(nodes_path);
  std::string line;
  std::getline(nodes_in, line);
  WeightedGraph graph;
  std::map<std::string, Vertex> index;
  std::size_t row = 1;
  while (std::getline(nodes_in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("nodes csv: expected node,weight", row);
    const auto id = line.substr(0, comma);
    double w = 0.0;
    try {
      w = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("nodes csv: bad weight", row);
    }
    if (index.contains(id)) throw ParseError("nodes csv: duplicate node " + id, row);
    index.emplace(id, graph.add_node(w, id));
  }
  if (!edges_path.empty()) {
    auto edges_in = open_or_throw(edges_path);
    std::getline(edges_in, line);
    row = 1;
    while (std::getline(edges_in, line)) {
      ++row;
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw ParseError("edges csv: expected u,v", row);
      const auto u = index.find(line.substr(0, comma));
      const auto v = index.find(line.substr(comma + 1));
      if (u == index.end() || v == index.end()) throw ParseError("edges csv: unknown node", row);
      try {
        graph.add_edge(u->second, v->second);
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("edges csv: ") + e.what(), row);
      }
    }
  }
  return graph;
}

struct DiagramArgs {
  std::string nodes, edges, transactions, date, out = "-", essential = "raw";
  std::size_t top_rank = 250;
  int max_hom_dim = 1;
  double cap = 0.0;
  bool keep_zero = false;
};

int run_diagram(const DiagramArgs& a, const CLI::App& cmd) {
  WeightedGraph graph;
  if (!a.nodes.empty()) {
    graph = read_graph(a.nodes, a.edges);
  } else if (!a.transactions.empty()) {
    const auto series = ingest_snapshots(a.transactions);
    if (series.days.empty()) throw std::runtime_error("no transactions in " + a.transactions);
    const Snapshot* day = &series.days.front();
    if (!a.date.empty()) {
      const Date want = parse_date(a.date);
      day = nullptr;
      for (const auto& d : series.days)
        if (d.date == want) day = &d;
      if (!day) throw std::runtime_error("no transactions on " + a.date);
    }
    graph = build_day_graph(day->transactions, a.top_rank);
  } else {
    throw std::invalid_argument("diagram: give --nodes/--edges or --transactions\n" + cmd.help());
  }
  const auto fc = lower_star_filtration(graph, a.max_hom_dim + 1);
  auto diagrams = compute_diagrams(fc, a.max_hom_dim);
  if (a.essential != "raw") {
    FinalizeOptions opt;
    opt.discard_zero_persistence = !a.keep_zero;
    if (a.essential == "cap") {
      double cap = a.cap;
      if (cmd.count("--cap") == 0) {
        cap = -std::numeric_limits<double>::infinity();
        for (double w : graph.weights()) cap = std::max(cap, w);
      }
      opt.cap = cap;
    }
    for (auto& d : diagrams) d = finalize_diagram(d, opt);
  }
  Output out(a.out);
  write_diagrams_csv(out.stream(), diagrams);
  return 0;
}

struct SummarizeArgs {
  std::string input, out = "-", method = "owhnpv", dims = "0,1";
  double alpha = 0.0, beta = 1.0;
  std::size_t m = 30, n_sub = 1, pl_k = 5, pl_samples = 6;
};

int run_summarize(const SummarizeArgs& a) {
  auto in = open_or_throw(a.input);
  const auto diagrams = read_diagrams_csv(in);
  const auto method = parse_method(a.method);
  const HierarchicalGrid grid(a.alpha, a.beta, a.m, a.n_sub);
  SummaryConfig config;
  config.landscape_k = a.pl_k;
  config.landscape_samples = a.pl_samples;
  std::vector<std::string> header;
  std::vector<double> row;
  for (int k : parse_list<int>(a.dims)) {
    PersistenceDiagram d;
    d.dimension = k;
    if (static_cast<std::size_t>(k) < diagrams.size()) d = diagrams[k];
    if (d.has_essential())
      throw std::invalid_argument("summarize: dimension " + std::to_string(k) +
                                  " has essential classes; finalize with `diagram --essential cap`");
    const auto v = summarize(d, method, grid, config).values;
    for (std::size_t i = 0; i < v.size(); ++i) {
      header.push_back(a.method + "_d" + std::to_string(k) + "_" + std::to_string(i + 1));
      row.push_back(v[i]);
    }
  }
  Output out(a.out);
  auto& os = out.stream();
  os.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
  os << '\n';
  return 0;
}

struct DistanceArgs {
  std::string first, second;
  double p = 1.0, q = 1.0;
  int dim = 0;
};

int run_distance(const DistanceArgs& a) {
  auto in1 = open_or_throw(a.first);
  auto in2 = open_or_throw(a.second);
  auto pick = [&](const std::vector<PersistenceDiagram>& ds) {
    PersistenceDiagram d;
    d.dimension = a.dim;
    if (static_cast<std::size_t>(a.dim) < ds.size()) d = ds[a.dim];
    return d;
  };
  const auto d1 = pick(read_diagrams_csv(in1));
  const auto d2 = pick(read_diagrams_csv(in2));
  const auto r = wasserstein(d1, d2, a.p, a.q);
  std::printf("%.17g\n", r.cost);
  return 0;
}

struct StabilityArgs {
  std::size_t trials = 1000, m = 30, n_sub = 1;
  std::uint64_t seed = 1;
};

int run_check_stability(const StabilityArgs& a) {
  const auto lemmas = lemma_suite(a.trials, a.seed);
  const auto theorem = theorem_suite(a.trials, a.seed, a.m, a.n_sub);
  std::printf("trials                          %zu\n", a.trials);
  std::printf("lemma total_overlap             %zu violations\n", lemmas.total_overlap_violations);
  std::printf("lemma overlap_difference        %zu violations\n", lemmas.overlap_difference_violations);
  std::printf("lemma velocity_difference       %zu violations\n", lemmas.velocity_difference_violations);
  std::printf("lemma total_persistence         %zu violations\n", lemmas.total_persistence_violations);
  std::printf("theorem ow_hnpv_stability       %zu violations\n", theorem.violations);
  std::printf("unequal cardinality trials      %zu\n", theorem.unequal_cardinality_trials);
  std::printf("max persistence ratio           %.3f\n", theorem.max_persistence_ratio);
  std::printf("max slack ratio                 %.6f\n", theorem.max_slack_ratio);
  std::printf("max diagonal augmentation delta %.3g\n", theorem.max_diagonal_augmentation_delta);
  return lemmas.violations() + theorem.violations == 0 ? 0 : 1;
}

struct FeaturizeArgs {
  std::string transactions, out = "-", method = "owhnpv", dims = "0,1";
  std::size_t m = 30, n_sub = 1, top_rank = 250;
  bool no_baseline = false;
};

int run_featurize(const FeaturizeArgs& a) {
  const auto series = ingest_snapshots(a.transactions);
  TopologyConfig topo;
  topo.top_rank = a.top_rank;
  topo.dims = parse_list<int>(a.dims);
  FeaturizeConfig fc;
  fc.method = parse_method(a.method);
  fc.m = a.m;
  fc.n_sub = a.n_sub;
  fc.baseline = !a.no_baseline;
  const auto features = featurize_series(series, topo, fc);
  Output out(a.out);
  write_features_csv(out.stream(), features);
  return 0;
}

struct EvaluateArgs {
  std::string transactions, prices, out = "-", methods = "hnav,hwnav,owhnpv,vab,pl,pi";
  std::string horizons = "1..7", n_subs = "1,2,3,5,10";
  std::size_t m = 30, trees = 500, folds = 10, repeats = 10, top_rank = 250;
  std::uint64_t seed = 0;
  double threshold = 0.05;
};

int run_evaluate(const EvaluateArgs& a) {
  const auto series = ingest_snapshots(a.transactions);
  const auto prices = read_prices(a.prices);
  EvaluateConfig config;
  config.methods.clear();
  std::stringstream ms(a.methods);
  for (std::string name; std::getline(ms, name, ',');)
    if (!name.empty()) config.methods.push_back(parse_method(name));
  config.horizons = parse_list<int>(a.horizons);
  config.n_subs = parse_list<std::size_t>(a.n_subs);
  config.m = a.m;
  config.trees = a.trees;
  config.folds = a.folds;
  config.repeats = a.repeats;
  config.seed = a.seed;
  config.threshold = a.threshold;
  config.topology.top_rank = a.top_rank;
  const auto rows = run_evaluation(series, prices, config);
  Output out(a.out);
  write_results_csv(out.stream(), rows);
  return 0;
}

struct SimulateArgs {
  std::string out_dir = ".", shock = "community", anomaly_days;
  std::uint64_t seed = 1;
  SynthConfig config;
};

int run_simulate(SimulateArgs a) {
  a.config.shock = parse_shock(a.shock);
  if (!a.anomaly_days.empty()) a.config.anomaly_days = parse_list<std::size_t>(a.anomaly_days);
  const auto data = synth_dynamic_graphs(a.config, a.seed);
  const std::string dir = a.out_dir.empty() ? "." : a.out_dir;
  std::filesystem::create_directories(dir);
  Output tx(dir + "/transactions.csv");
  write_snapshots_csv(tx.stream(), data.series);
  Output px(dir + "/prices.csv");
  write_prices_csv(px.stream(), data.prices);
  Output an(dir + "/anomalies.csv");
  an.stream() << "day,date\n";
  for (std::size_t d : data.anomaly_days)
    an.stream() << d << ',' << format_date(data.series.days[d - 1].date) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological velocity summaries for time-varying weighted graphs"};
  app.require_subcommand(1);

  DiagramArgs diag;
  auto* diagram_cmd = app.add_subcommand("diagram", "Persistence diagrams of a node-weighted graph");
  diagram_cmd->add_option("--nodes", diag.nodes, "CSV `node,weight`");
  diagram_cmd->add_option("--edges", diag.edges, "CSV `u,v`");
  diagram_cmd->add_option("--transactions", diag.transactions, "Transactions CSV; builds one day's graph");
  diagram_cmd->add_option("--date", diag.date, "Day to use with --transactions (default: first)");
  diagram_cmd->add_option("--top-rank", diag.top_rank, "Most active nodes kept")->capture_default_str();
  diagram_cmd->add_option("--max-dim", diag.max_hom_dim, "Highest homological dimension")
      ->capture_default_str()
      ->check(CLI::Range(0, 2));
  diagram_cmd->add_option("--essential", diag.essential, "raw (inf deaths), cap or drop")
      ->capture_default_str()
      ->check(CLI::IsMember({"raw", "cap", "drop"}));
  diagram_cmd->add_option("--cap", diag.cap, "Cap value (default: max node weight)");
  diagram_cmd->add_flag("--keep-zero", diag.keep_zero, "Keep zero-persistence pairs when finalizing");
  diagram_cmd->add_option("-o,--out", diag.out, "Output CSV (default stdout)");

  SummarizeArgs sum;
  auto* summarize_cmd = app.add_subcommand("summarize", "Vectorize a diagram CSV into one feature row");
  summarize_cmd->add_option("input", sum.input, "Diagram CSV")->required();
  summarize_cmd->add_option("--method", sum.method, "hnav|hwnav|owhnpv|vab|pl|pi")
      ->capture_default_str()
      ->check(CLI::IsMember({"hnav", "hwnav", "owhnpv", "vab", "pl", "pi"}));
  summarize_cmd->add_option("--alpha", sum.alpha, "Range start")->capture_default_str();
  summarize_cmd->add_option("--beta", sum.beta, "Range end")->capture_default_str();
  summarize_cmd->add_option("--m", sum.m, "Main intervals")->capture_default_str();
  summarize_cmd->add_option("--nsub", sum.n_sub, "Subintervals per main interval")->capture_default_str();
  summarize_cmd->add_option("--dims", sum.dims, "Dimensions, e.g. 0,1")->capture_default_str();
  summarize_cmd->add_option("--pl-k", sum.pl_k, "Landscape count")->capture_default_str();
  summarize_cmd->add_option("--pl-samples", sum.pl_samples, "Landscape samples")->capture_default_str();
  summarize_cmd->add_option("-o,--out", sum.out, "Output CSV (default stdout)");

  DistanceArgs dist;
  auto* distance_cmd = app.add_subcommand("distance", "L^p q-Wasserstein distance between two diagram CSVs");
  distance_cmd->add_option("first", dist.first, "Diagram CSV")->required();
  distance_cmd->add_option("second", dist.second, "Diagram CSV")->required();
  distance_cmd->add_option("--p", dist.p, "Ground norm exponent (>= 1, inf allowed)")->capture_default_str();
  distance_cmd->add_option("--q", dist.q, "Wasserstein exponent (>= 1)")->capture_default_str();
  distance_cmd->add_option("--dim", dist.dim, "Homological dimension")->capture_default_str();

  StabilityArgs stab;
  auto* stability_cmd = app.add_subcommand("check-stability", "Randomized checks of the OW-HNPV stability bound");
  stability_cmd->add_option("--trials", stab.trials)->capture_default_str()->check(CLI::PositiveNumber);
  stability_cmd->add_option("--seed", stab.seed)->capture_default_str();
  stability_cmd->add_option("--m", stab.m)->capture_default_str()->check(CLI::PositiveNumber);
  stability_cmd->add_option("--nsub", stab.n_sub)->capture_default_str()->check(CLI::PositiveNumber);

  FeaturizeArgs feat;
  auto* featurize_cmd = app.add_subcommand("featurize", "Per-day feature matrix from a transactions CSV");
  featurize_cmd->add_option("transactions", feat.transactions, "Transactions CSV")->required();
  featurize_cmd->add_option("--method", feat.method)->capture_default_str()
      ->check(CLI::IsMember({"hnav", "hwnav", "owhnpv", "vab", "pl", "pi"}));
  featurize_cmd->add_option("--m", feat.m)->capture_default_str();
  featurize_cmd->add_option("--nsub", feat.n_sub)->capture_default_str();
  featurize_cmd->add_option("--dims", feat.dims)->capture_default_str();
  featurize_cmd->add_option("--top-rank", feat.top_rank)->capture_default_str();
  featurize_cmd->add_flag("--no-baseline", feat.no_baseline, "Omit graph centrality columns");
  featurize_cmd->add_option("-o,--out", feat.out, "Output CSV (default stdout)");

  EvaluateArgs eval;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Cross-validated AUC sweep over methods, horizons and n_sub");
  evaluate_cmd->add_option("--transactions", eval.transactions)->required();
  evaluate_cmd->add_option("--prices", eval.prices)->required();
  evaluate_cmd->add_option("--methods", eval.methods)->capture_default_str();
  evaluate_cmd->add_option("--horizons", eval.horizons)->capture_default_str();
  evaluate_cmd->add_option("--nsub", eval.n_subs, "n_sub values")->capture_default_str();
  evaluate_cmd->add_option("--m", eval.m)->capture_default_str();
  evaluate_cmd->add_option("--trees", eval.trees)->capture_default_str()->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--folds", eval.folds)->capture_default_str();
  evaluate_cmd->add_option("--repeats", eval.repeats)->capture_default_str();
  evaluate_cmd->add_option("--top-rank", eval.top_rank)->capture_default_str();
  evaluate_cmd->add_option("--threshold", eval.threshold)->capture_default_str();
  evaluate_cmd->add_option("--seed", eval.seed)->capture_default_str();
  evaluate_cmd->add_option("-o,--out", eval.out, "Results CSV (default stdout)");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Write a seeded synthetic transactions/prices benchmark");
  simulate_cmd->add_option("--seed", sim.seed)->capture_default_str();
  simulate_cmd->add_option("--days", sim.config.days)->capture_default_str();
  simulate_cmd->add_option("--nodes", sim.config.nodes)->capture_default_str();
  simulate_cmd->add_option("--transactions-per-day", sim.config.transactions_per_day)->capture_default_str();
  simulate_cmd->add_option("--anomalies", sim.config.anomaly_count, "Number of shock days")->capture_default_str();
  simulate_cmd->add_option("--anomaly-days", sim.anomaly_days, "Explicit 1-based shock days");
  simulate_cmd->add_option("--lag", sim.config.lag, "Days from shock to price jump")->capture_default_str();
  simulate_cmd->add_option("--shock", sim.shock)->capture_default_str()->check(CLI::IsMember({"community", "hub"}));
  simulate_cmd->add_option("--out-dir", sim.out_dir, "Directory for transactions.csv, prices.csv, anomalies.csv")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*diagram_cmd) return run_diagram(diag, *diagram_cmd);
    if (*summarize_cmd) return run_summarize(sum);
    if (*distance_cmd) return run_distance(dist);
    if (*stability_cmd) return run_check_stability(stab);
    if (*featurize_cmd) return run_featurize(feat);
    if (*evaluate_cmd) return run_evaluate(eval);
    if (*simulate_cmd) return run_simulate(sim);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
