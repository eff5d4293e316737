#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "agc/coarsen.hpp"
#include "agc/io.hpp"
#include "agc/spectral.hpp"
#include "commands.hpp"

namespace agc::cli {

namespace {

struct MetricsArgs {
  std::vector<std::string> coarsened;
  std::string edges;
  std::string features;
  std::string labels;
  std::string out;
  std::string csv;
  MetricFlags flags;
};

nlohmann::json read_sidecar(const std::filesystem::path& dir) {
  const auto path = dir / "coarsened.json";
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
}

Graph load_original(const MetricsArgs& args, const nlohmann::json& sidecar,
                    const std::filesystem::path& dir) {
  io::GraphFiles files;
  try {
    const auto& source = sidecar.at("source");
    files.edges = args.edges.empty() ? source.at("edges").get<std::string>() : args.edges;
    if (!args.features.empty()) {
      files.features = args.features;
    } else if (source.contains("features")) {
      files.features = source["features"].get<std::string>();
    }
    if (!files.features) files.num_nodes = sidecar.at("num_nodes").get<Index>();
    if (!args.labels.empty()) files.labels = args.labels;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, (dir / "coarsened.json").string() + ": " + e.what());
  }
  return io::load_graph(files);
}

CoarsenedGraph load_coarsened(const Graph& original, const nlohmann::json& sidecar,
                              const std::filesystem::path& dir) {
  std::string assignment_file;
  std::string edges_file;
  Index n = 0;
  try {
    assignment_file = sidecar.at("assignment_file").get<std::string>();
    edges_file = sidecar.value("edges_file", std::string("edges.tsv"));
    n = sidecar.at("num_supernodes").get<Index>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, (dir / "coarsened.json").string() + ": " + e.what());
  }
  auto assignment = io::read_assignment(dir / assignment_file);
  if (static_cast<Index>(assignment.size()) != original.num_nodes()) {
    throw Error(ErrorCode::parse_error, (dir / assignment_file).string() + ": " +
                                            std::to_string(assignment.size()) +
                                            " entries for " +
                                            std::to_string(original.num_nodes()) + " nodes");
  }
  CoarsenedGraph cg;
  cg.partition = CoarseningMatrix::from_assignment(std::move(assignment));
  if (cg.partition.num_supernodes != n) {
    throw Error(ErrorCode::parse_error, (dir / assignment_file).string() +
                                            ": supernode count disagrees with the sidecar");
  }
  const auto edges = io::read_edge_list(dir / edges_file);
  if (edges.max_node_id >= n) {
    throw Error(ErrorCode::parse_error, (dir / edges_file).string() + ": supernode id out of range");
  }
  const Graph coarse = Graph::from_edges(n, edges.edges, FeatureMatrix(n, 0));
  cg.num_supernodes = n;
  cg.adjacency = coarse.adjacency();
  return cg;
}

int run_metrics(const MetricsArgs& args) {
  const SpectralOptions options = to_spectral_options(args.flags);
  nlohmann::json results = nlohmann::json::array();
  std::string csv = metrics_csv_header();
  for (const auto& entry : args.coarsened) {
    const std::filesystem::path dir(entry);
    const auto sidecar = read_sidecar(dir);
    const Graph original = load_original(args, sidecar, dir);
    if (original.num_nodes() > options.eigen.dense_limit && !options.eigen.allow_iterative) {
      throw Error(ErrorCode::too_large,
                  "N = " + std::to_string(original.num_nodes()) +
                      " exceeds --dense-eig-limit; pass --iterative-eig for the iterative eigensolver");
    }
    const CoarsenedGraph cg = load_coarsened(original, sidecar, dir);
    const double ratio = sidecar.value("ratio", static_cast<double>(cg.num_supernodes) /
                                                    static_cast<double>(original.num_nodes()));
    const auto report = spectral_report(original, cg, options);
    results.push_back(metrics_json(ratio, report));
    csv += metrics_csv_row(ratio, report);
  }
  const nlohmann::json doc = results.size() == 1 ? results[0] : results;
  if (args.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(args.out, doc);
  }
  if (!args.csv.empty()) io::write_text(args.csv, csv);
  return kExitOk;
}

}  // namespace

void add_metrics(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<MetricsArgs>();
  auto* sub = app.add_subcommand("metrics", "Spectral fidelity of coarsened graphs (REE, HE, RcE)");
  sub->add_option("--coarsened", args->coarsened, "Directory written by `coarsen` (repeatable)")
      ->required();
  sub->add_option("--edges", args->edges, "Original edge list (default: from the sidecar)");
  sub->add_option("--features", args->features, "Original features (default: from the sidecar)");
  sub->add_option("--labels", args->labels, "Original labels (unused by the metrics)");
  sub->add_option("--out", args->out, "Write JSON here instead of stdout");
  sub->add_option("--csv", args->csv, "Also write one CSV row per coarsened directory");
  add_metric_flags(sub, args->flags);
  sub->callback([args, &ctx] { ctx.exit_code = guarded([&] { return run_metrics(*args); }); });
}

}  // namespace agc::cli
