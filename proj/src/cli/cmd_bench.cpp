#include <iostream>
#include <memory>

#include "agc/bench.hpp"
#include "agc/io.hpp"
#include "commands.hpp"

namespace agc::cli {

namespace {

struct BenchArgs {
  std::vector<Index> sizes = {10000, 20000, 40000, 80000};
  std::vector<std::string> ratios = {"55", "50", "45", "40", "35", "30", "25", "20", "15", "10"};
  std::uint64_t seed = 0;
  Index projectors = 10;
  Index feature_dim = 32;
  double avg_degree = 10.0;
  int repeats = 3;
  std::string out;
};

int run_bench(const BenchArgs& args) {
  bench::BenchConfig config;
  config.sizes = args.sizes;
  config.ratios = parse_ratios(args.ratios);
  config.seed = args.seed;
  config.projectors = args.projectors;
  config.feature_dim = args.feature_dim;
  config.avg_degree = args.avg_degree;
  config.repeats = args.repeats;
  for (Index n : config.sizes) {
    if (n < 1) throw Error(ErrorCode::invalid_params, "--sizes must be positive");
  }
  const auto records = bench::run_bench(config);
  const auto csv = bench::bench_csv(records);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    io::write_text(args.out, csv);
  }
  if (records.size() >= 2) {
    std::vector<double> n, t;
    for (const auto& r : records) {
      n.push_back(static_cast<double>(r.num_nodes));
      t.push_back(r.adaptive_seconds);
    }
    std::cerr << "log-log slope of adaptive time vs N: " << bench::loglog_slope(n, t) << '\n';
  }
  return kExitOk;
}

}  // namespace

void add_bench(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<BenchArgs>();
  auto* sub = app.add_subcommand("bench", "Adaptive vs per-ratio coarsening time on synthetic graphs");
  sub->add_option("--sizes", args->sizes, "Node counts")->delimiter(',')->capture_default_str();
  sub->add_option("--ratios", args->ratios, "Descending ratios, fractions or percents")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--seed", args->seed, "Random seed")->capture_default_str();
  sub->add_option("--projectors", args->projectors, "Number of random projections")
      ->capture_default_str();
  sub->add_option("--feature-dim", args->feature_dim, "Synthetic feature columns")
      ->capture_default_str();
  sub->add_option("--avg-degree", args->avg_degree, "Synthetic mean degree")->capture_default_str();
  sub->add_option("--repeats", args->repeats, "Timing repetitions (minimum kept)")
      ->capture_default_str();
  sub->add_option("--out", args->out, "Write CSV here instead of stdout");
  sub->callback([args, &ctx] { ctx.exit_code = guarded([&] { return run_bench(*args); }); });
}

}  // namespace agc::cli
