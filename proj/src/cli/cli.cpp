#include "agc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "agc/io.hpp"
#include "commands.hpp"

namespace agc::cli {

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::parse_error:
      case ErrorCode::io_error:
      case ErrorCode::invalid_graph:
      case ErrorCode::unknown_type:
      case ErrorCode::missing_target_labels:
      case ErrorCode::empty_type:
        return kExitBadInput;
      case ErrorCode::too_large:
        return kExitTooLarge;
      default:
        return kExitBadConfig;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

std::vector<double> parse_ratios(const std::vector<std::string>& tokens) {
  std::vector<double> ratios;
  for (const auto& token : tokens) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::invalid_ratio, "invalid ratio `" + token + "`");
    }
    if (value > 1.0 && value <= 100.0) value /= 100.0;
    if (!(value > 0.0 && value <= 1.0)) {
      throw Error(ErrorCode::invalid_ratio, "ratio `" + token + "` outside (0, 1]");
    }
    if (!ratios.empty() && !(value < ratios.back())) {
      throw Error(ErrorCode::invalid_ratio, "ratios must be strictly descending");
    }
    ratios.push_back(value);
  }
  if (ratios.empty()) throw Error(ErrorCode::invalid_ratio, "no ratios given");
  return ratios;
}

std::optional<double> parse_alpha(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::invalid_params, "--alpha must be `auto` or a number in [0, 1]");
  }
  return value;
}

std::string ratio_dir_name(double ratio) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "ratio_%.4f", ratio);
  return buffer;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  io::write_text(path, doc.dump(2) + "\n");
}

nlohmann::json finite_or_null(double value) {
  return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

nlohmann::json metrics_json(double ratio, const SpectralReport& report) {
  nlohmann::json j;
  j["ratio"] = ratio;
  j["ree"] = report.ree ? nlohmann::json(*report.ree) : nlohmann::json(nullptr);
  j["he"] = report.he ? nlohmann::json(*report.he) : nlohmann::json(nullptr);
  j["rce_raw"] = report.rce_raw;
  j["rce_log10"] = finite_or_null(report.rce_log10);
  j["k"] = report.k_used;
  j["skipped"] = report.skipped;
  if (report.ree_error) j["ree_error"] = *report.ree_error;
  if (report.he_error) j["he_error"] = *report.he_error;
  return j;
}

std::string metrics_csv_header() { return "ratio,ree,he,rce_raw,rce_log10,k,skipped\n"; }

std::string metrics_csv_row(double ratio, const SpectralReport& report) {
  auto opt = [](const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); };
  return io::format_double(ratio) + "," + opt(report.ree) + "," + opt(report.he) + "," +
         io::format_double(report.rce_raw) + "," +
         (std::isfinite(report.rce_log10) ? io::format_double(report.rce_log10) : std::string()) +
         "," + std::to_string(report.k_used) + "," + std::to_string(report.skipped) + "\n";
}

void add_metric_flags(CLI::App* sub, MetricFlags& flags) {
  sub->add_option("--ree-k", flags.ree_k, "Eigenvalues compared by REE")->capture_default_str();
  sub->add_option("--ree-end", flags.ree_end, "Spectrum end for REE: low or high")
      ->capture_default_str();
  sub->add_option("--lift", flags.lift, "Lift with binary or normalized C")->capture_default_str();
  sub->add_option("--dense-eig-limit", flags.dense_eig_limit, "Largest N for the dense eigensolver")
      ->capture_default_str();
  sub->add_flag("--iterative-eig", flags.iterative, "Use the iterative eigensolver above the dense limit");
}

SpectralOptions to_spectral_options(const MetricFlags& flags) {
  if (flags.ree_k < 1) throw Error(ErrorCode::invalid_params, "--ree-k must be at least 1");
  SpectralOptions o;
  o.k = flags.ree_k;
  o.end = parse_spectrum_end(flags.ree_end);
  o.lift = parse_lift_mode(flags.lift);
  o.eigen.dense_limit = flags.dense_eig_limit;
  o.eigen.allow_iterative = flags.iterative;
  return o;
}

int run(int argc, char** argv) {
  CLI::App app{"Adaptive hashing-based graph coarsening"};
  app.require_subcommand(1);
  Context ctx;
  add_coarsen(app, ctx);
  add_coarsen_hetero(app, ctx);
  add_metrics(app, ctx);
  add_validate_theory(app, ctx);
  add_bench(app, ctx);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }
  return ctx.exit_code;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("agc");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace agc::cli
