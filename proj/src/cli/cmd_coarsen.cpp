#include <filesystem>
#include <iostream>
#include <memory>

#include "agc/coarsen.hpp"
#include "agc/io.hpp"
#include "agc/timing.hpp"
#include "commands.hpp"

namespace agc::cli {

namespace {

struct CoarsenArgs {
  std::string edges;
  std::string features;
  std::string labels;
  Index num_nodes = -1;
  std::vector<std::string> ratios;
  std::string alpha = "auto";
  Index projectors = 10;
  std::uint64_t seed = 0;
  std::string aggregate = "mean";
  bool standardize = false;
  std::string out;
  bool emit_metrics = false;
  MetricFlags metric_flags;
};

std::string absolute_string(const std::string& path) {
  return std::filesystem::absolute(path).lexically_normal().string();
}

int run_coarsen(const CoarsenArgs& args) {
  const auto ratios = parse_ratios(args.ratios);
  CoarsenOptions options;
  options.alpha = parse_alpha(args.alpha);
  options.projectors = args.projectors;
  options.seed = args.seed;
  options.aggregate = parse_aggregate(args.aggregate);
  options.standardize = args.standardize;
  if (options.projectors < 1) throw Error(ErrorCode::invalid_params, "--projectors must be >= 1");
  std::optional<SpectralOptions> spectral;
  if (args.emit_metrics) spectral = to_spectral_options(args.metric_flags);

  std::vector<TimingRecord> timings;
  Stopwatch watch;
  io::GraphFiles files;
  files.edges = args.edges;
  if (!args.features.empty()) files.features = args.features;
  if (!args.labels.empty()) files.labels = args.labels;
  if (args.num_nodes >= 0) files.num_nodes = args.num_nodes;
  const Graph g = io::load_graph(files);
  timings.push_back({Phase::load, watch.seconds(), std::nullopt});
  if (g.dropped_self_loops() > 0) {
    std::cerr << "warning: dropped " << g.dropped_self_loops() << " self-loop(s) from "
              << args.edges << '\n';
  }

  const AdaptiveCoarsener coarsener(g, ratios.back(), options, ratios);
  timings.push_back({Phase::project, coarsener.times().project, std::nullopt});
  timings.push_back({Phase::sort, coarsener.times().sort, std::nullopt});
  timings.push_back({Phase::schedule, coarsener.times().schedule, std::nullopt});

  const std::filesystem::path out_dir(args.out);
  std::filesystem::create_directories(out_dir);
  std::string metrics_rows;

  for (double ratio : ratios) {
    watch.reset();
    const CoarseningMatrix partition = coarsener.partition(ratio);
    timings.push_back({Phase::per_ratio_extract, watch.seconds(), ratio});

    watch.reset();
    const CoarsenedGraph cg = coarsen_graph(g, partition);
    timings.push_back({Phase::coarsen, watch.seconds(), ratio});

    const auto dir = out_dir / ratio_dir_name(ratio);
    std::filesystem::create_directories(dir);
    io::write_edge_list(dir / "edges.tsv", cg.edges());
    io::write_features_csv(dir / "features.csv", cg.features);
    io::write_assignment(dir / "assignment.txt", partition.assignment);
    {
      FeatureMatrix self(cg.self_weights.size(), 1);
      self.col(0) = cg.self_weights;
      io::write_features_csv(dir / "self_weights.txt", self);
    }
    if (cg.labels) io::write_labels(dir / "labels.txt", *cg.labels);

    nlohmann::json sidecar;
    sidecar["ratio"] = ratio;
    sidecar["num_nodes"] = g.num_nodes();
    sidecar["num_supernodes"] = cg.num_supernodes;
    sidecar["seed"] = args.seed;
    sidecar["alpha"] = coarsener.alpha();
    sidecar["projectors"] = args.projectors;
    sidecar["aggregate"] = args.aggregate;
    sidecar["standardize"] = args.standardize;
    sidecar["assignment_file"] = "assignment.txt";
    sidecar["edges_file"] = "edges.tsv";
    sidecar["features_file"] = "features.csv";
    sidecar["self_weights_file"] = "self_weights.txt";
    if (cg.labels) sidecar["labels_file"] = "labels.txt";
    nlohmann::json source;
    source["edges"] = absolute_string(args.edges);
    if (!args.features.empty()) source["features"] = absolute_string(args.features);
    if (!args.labels.empty()) source["labels"] = absolute_string(args.labels);
    if (args.features.empty()) source["num_nodes"] = g.num_nodes();
    sidecar["source"] = source;
    write_json(dir / "coarsened.json", sidecar);

    if (spectral) {
      watch.reset();
      const auto report = spectral_report(g, cg, *spectral);
      timings.push_back({Phase::metrics, watch.seconds(), ratio});
      write_json(dir / "metrics.json", metrics_json(ratio, report));
      metrics_rows += metrics_csv_row(ratio, report);
    }
    std::cout << ratio_dir_name(ratio) << ": " << cg.num_supernodes << " supernodes\n";
  }
  if (spectral) io::write_text(out_dir / "metrics.csv", metrics_csv_header() + metrics_rows);
  io::write_text(out_dir / "timing.csv", timing_csv(timings));
  return kExitOk;
}

}  // namespace

void add_coarsen(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<CoarsenArgs>();
  auto* sub = app.add_subcommand("coarsen", "Coarsen a graph at several ratios from one hashing pass");
  sub->add_option("--edges", args->edges, "Edge list (src<TAB>dst[<TAB>weight])")->required();
  sub->add_option("--features", args->features, "Headerless CSV of node features");
  sub->add_option("--labels", args->labels, "One integer label per line");
  sub->add_option("--num-nodes", args->num_nodes, "Node count when no feature file is given");
  sub->add_option("--ratios", args->ratios, "Descending ratios, fractions or percents")
      ->required()
      ->delimiter(',');
  sub->add_option("--alpha", args->alpha, "Heterophily weight: auto or a value in [0, 1]")
      ->capture_default_str();
  sub->add_option("--projectors", args->projectors, "Number of random projections")
      ->capture_default_str();
  sub->add_option("--seed", args->seed, "Random seed")->capture_default_str();
  sub->add_option("--aggregate", args->aggregate, "Score aggregate: mean, max or median")
      ->capture_default_str();
  sub->add_flag("--standardize", args->standardize, "Z-score feature columns before hashing");
  sub->add_option("--out", args->out, "Output directory")->required();
  sub->add_flag("--emit-metrics", args->emit_metrics, "Also compute spectral metrics per ratio");
  add_metric_flags(sub, args->metric_flags);
  sub->callback([args, &ctx] { ctx.exit_code = guarded([&] { return run_coarsen(*args); }); });
}

}  // namespace agc::cli
