#include <cmath>
#include <iostream>
#include <memory>

#include "agc/io.hpp"
#include "agc/theory.hpp"
#include "commands.hpp"

namespace agc::cli {

namespace {

struct TheoryArgs {
  std::string check = "all";
  std::uint64_t seed = 0;
  std::size_t lb_n = 10000;
  std::size_t lb_k = 100;
  double lb_c = 3.0;
  std::size_t lb_trials = 500;
  double dist = 1.0;
  std::size_t projectors = 4;
  double eps = 2.0 * std::sqrt(2.0);
  std::size_t trials = 100000;
  std::size_t sep_projectors = 16;
  double sep_ratio = 0.1;
  std::string out;
  std::string curve_csv;
};

nlohmann::json check_json(const theory::BoundCheck& c) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return {{"name", c.name},       {"params", params},   {"empirical", c.empirical},
          {"analytic", c.analytic}, {"trials", c.trials}, {"sigma", c.sigma},
          {"tolerance", c.tolerance}, {"pass", c.pass}};
}

int run_validate_theory(const TheoryArgs& args) {
  const bool all = args.check == "all";
  if (!all && args.check != "load-balance" && args.check != "proximity" &&
      args.check != "separation") {
    throw Error(ErrorCode::invalid_params, "unknown --check `" + args.check + "`");
  }
  nlohmann::json results = nlohmann::json::array();
  bool pass = true;

  if (all || args.check == "load-balance") {
    const auto c = theory::validate_load_balance(args.lb_n, args.lb_k, args.lb_c, args.lb_trials, args.seed);
    pass = pass && c.pass;
    results.push_back(check_json(c));
  }
  if (all || args.check == "proximity") {
    if (!(args.dist > 0.0)) throw Error(ErrorCode::degenerate_input, "--dist must be positive");
    Vector x = Vector::Zero(2);
    Vector y = Vector::Zero(2);
    y[0] = args.dist;
    const auto c = theory::validate_proximity(x, y, args.projectors, args.eps, args.trials, args.seed);
    pass = pass && c.pass;
    results.push_back(check_json(c));
    const auto v = theory::validate_gap_variance(x, y, args.projectors, args.trials, args.seed);
    pass = pass && v.pass;
    results.push_back({{"name", "proximity_variance"},
                       {"params", {{"dist", args.dist}, {"projectors", args.projectors}}},
                       {"empirical", v.sample_variance},
                       {"analytic", v.expected_variance},
                       {"relative_error", v.relative_error},
                       {"trials", args.trials},
                       {"tolerance", 0.02},
                       {"pass", v.pass}});
    if (!args.curve_csv.empty()) {
      std::vector<double> grid;
      const double sigma = std::sqrt(static_cast<double>(args.projectors)) * args.dist;
      for (int i = 0; i <= 40; ++i) grid.push_back(sigma * 4.0 * i / 40.0);
      std::string csv = "eps,empirical,analytic\n";
      for (const auto& p : theory::proximity_curve(x, y, args.projectors, grid, args.trials, args.seed)) {
        csv += io::format_double(p.eps) + "," + io::format_double(p.empirical) + "," +
               io::format_double(p.analytic) + "\n";
      }
      io::write_text(args.curve_csv, csv);
    }
  }
  if (all || args.check == "separation") {
    Vector x = Vector::Zero(2);
    Vector y = Vector::Zero(2);
    Vector z = Vector::Zero(2);
    y[0] = args.sep_ratio;
    z[1] = 1.0;
    const auto c = theory::validate_separation(x, y, z, args.sep_projectors, args.trials, args.seed);
    pass = pass && c.pass;
    results.push_back(check_json(c));
  }

  if (args.out.empty()) {
    std::cout << results.dump(2) << '\n';
  } else {
    write_json(args.out, results);
  }
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

void add_validate_theory(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<TheoryArgs>();
  auto* sub = app.add_subcommand("validate-theory",
                                 "Monte-Carlo checks of the load-balance, proximity and separation bounds");
  sub->add_option("--check", args->check, "all, load-balance, proximity or separation")
      ->capture_default_str();
  sub->add_option("--seed", args->seed, "Random seed")->capture_default_str();
  sub->add_option("--lb-n", args->lb_n, "Nodes on the ring")->capture_default_str();
  sub->add_option("--lb-k", args->lb_k, "Supernodes after merging")->capture_default_str();
  sub->add_option("--lb-c", args->lb_c, "Confidence constant c")->capture_default_str();
  sub->add_option("--lb-trials", args->lb_trials, "Load-balance trials")->capture_default_str();
  sub->add_option("--dist", args->dist, "||x - y|| for the proximity check")->capture_default_str();
  sub->add_option("--projectors", args->projectors, "Projections summed by h")->capture_default_str();
  sub->add_option("--eps", args->eps, "Proximity window")->capture_default_str();
  sub->add_option("--trials", args->trials, "Proximity and separation trials")->capture_default_str();
  sub->add_option("--sep-projectors", args->sep_projectors, "Projections for the separation check")
      ->capture_default_str();
  sub->add_option("--sep-ratio", args->sep_ratio, "||x - y|| / ||x - z|| for the separation check")
      ->capture_default_str();
  sub->add_option("--out", args->out, "Write JSON here instead of stdout");
  sub->add_option("--curve-csv", args->curve_csv, "Write (eps, empirical, analytic) pairs");
  sub->callback([args, &ctx] { ctx.exit_code = guarded([&] { return run_validate_theory(*args); }); });
}

}  // namespace agc::cli
