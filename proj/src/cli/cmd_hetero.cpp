#include <charconv>
#include <filesystem>
#include <iostream>
#include <memory>

#include "agc/hetero.hpp"
#include "agc/hetero_io.hpp"
#include "agc/io.hpp"
#include "commands.hpp"

namespace agc::cli {

namespace {

struct HeteroArgs {
  std::string manifest;
  double eta = 0.5;
  std::vector<std::string> eta_type;
  std::string alpha = "auto";
  Index projectors = 10;
  std::uint64_t seed = 0;
  std::string aggregate = "mean";
  std::string out;
};

std::map<std::string, double> parse_type_ratios(const std::vector<std::string>& entries) {
  std::map<std::string, double> out;
  for (const auto& entry : entries) {
    const auto eq = entry.find('=');
    double value = 0.0;
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::invalid_ratio, "--eta-type expects name=ratio, got `" + entry + "`");
    }
    const auto [ptr, ec] = std::from_chars(entry.data() + eq + 1, entry.data() + entry.size(), value);
    if (ec != std::errc() || ptr != entry.data() + entry.size()) {
      throw Error(ErrorCode::invalid_ratio, "invalid ratio in `" + entry + "`");
    }
    out[entry.substr(0, eq)] = value;
  }
  return out;
}

std::vector<Edge> relation_edges(const SparseMatrix& m) {
  std::vector<Edge> edges;
  for (Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      if (it.value() != 0.0) {
        edges.push_back({static_cast<Index>(it.row()), static_cast<Index>(it.col()), it.value()});
      }
    }
  }
  return edges;
}

int run_coarsen_hetero(const HeteroArgs& args) {
  HeteroOptions options;
  options.eta = args.eta;
  options.eta_per_type = parse_type_ratios(args.eta_type);
  options.alpha = parse_alpha(args.alpha);
  options.projectors = args.projectors;
  options.seed = args.seed;
  options.aggregate = parse_aggregate(args.aggregate);
  if (!(options.eta > 0.0 && options.eta <= 1.0)) {
    throw Error(ErrorCode::invalid_ratio, "--eta must lie in (0, 1]");
  }
  if (options.projectors < 1) throw Error(ErrorCode::invalid_params, "--projectors must be >= 1");

  const HeteroGraph h = io::load_hetero_manifest(args.manifest);
  for (const auto& [name, eta] : options.eta_per_type) {
    if (!h.has_type(name)) {
      throw Error(ErrorCode::invalid_params, "--eta-type names unknown type `" + name + "`");
    }
  }
  const HeteroCoarsenedGraph coarse = coarsen_hetero(h, options);
  const double purity = type_purity(h, coarse);

  const std::filesystem::path out_dir(args.out);
  std::filesystem::create_directories(out_dir);
  nlohmann::json summary;
  summary["eta"] = args.eta;
  summary["seed"] = args.seed;
  summary["projectors"] = args.projectors;
  summary["target_type"] = coarse.target_type;
  summary["purity"] = purity;
  summary["manifest"] = std::filesystem::absolute(args.manifest).lexically_normal().string();

  nlohmann::json types = nlohmann::json::object();
  for (const auto& ct : coarse.types) {
    nlohmann::json t;
    t["count"] = ct.partition.num_nodes();
    t["num_supernodes"] = ct.partition.num_supernodes;
    t["eta"] = ct.eta;
    t["alpha"] = ct.alpha;
    t["assignment_file"] = ct.name + ".assignment.txt";
    io::write_assignment(out_dir / (ct.name + ".assignment.txt"), ct.partition.assignment);
    if (ct.features) {
      t["features_file"] = ct.name + ".features.csv";
      io::write_features_csv(out_dir / (ct.name + ".features.csv"), *ct.features);
    }
    if (ct.labels) {
      t["labels_file"] = ct.name + ".labels.txt";
      io::write_labels(out_dir / (ct.name + ".labels.txt"), *ct.labels);
    }
    types[ct.name] = t;
  }
  summary["types"] = types;

  nlohmann::json relations = nlohmann::json::array();
  for (std::size_t i = 0; i < coarse.relations.size(); ++i) {
    const auto& r = coarse.relations[i];
    const auto file = r.key.to_string() + ".edges.tsv";
    io::write_edge_list(out_dir / file, relation_edges(r.matrix));
    relations.push_back({{"src", r.key.src},
                         {"rel", r.key.rel},
                         {"dst", r.key.dst},
                         {"edges_file", file},
                         {"total_weight", r.matrix.sum()},
                         {"original_total_weight", h.relations()[i].matrix.sum()}});
  }
  summary["relations"] = relations;
  write_json(out_dir / "hetero.json", summary);

  std::cout << "purity: " << purity * 100.0 << "%\n";
  for (const auto& ct : coarse.types) {
    std::cout << ct.name << ": " << ct.partition.num_nodes() << " -> "
              << ct.partition.num_supernodes << " supernodes\n";
  }
  return kExitOk;
}

}  // namespace

void add_coarsen_hetero(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<HeteroArgs>();
  auto* sub = app.add_subcommand("coarsen-hetero", "Type-isolated coarsening of a heterogeneous graph");
  sub->add_option("--manifest", args->manifest, "Heterogeneous dataset manifest (JSON)")->required();
  sub->add_option("--eta", args->eta, "Coarsening ratio applied to every node type")
      ->capture_default_str();
  sub->add_option("--eta-type", args->eta_type, "Per-type ratio override, name=ratio");
  sub->add_option("--alpha", args->alpha, "Heterophily weight for same-type structure")
      ->capture_default_str();
  sub->add_option("--projectors", args->projectors, "Number of random projections")
      ->capture_default_str();
  sub->add_option("--seed", args->seed, "Random seed")->capture_default_str();
  sub->add_option("--aggregate", args->aggregate, "Score aggregate: mean, max or median")
      ->capture_default_str();
  sub->add_option("--out", args->out, "Output directory")->required();
  sub->callback([args, &ctx] { ctx.exit_code = guarded([&] { return run_coarsen_hetero(*args); }); });
}

}  // namespace agc::cli
