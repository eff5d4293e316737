#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "agc/cli.hpp"
#include "agc/spectral.hpp"

namespace agc::cli {

struct Context {
  int exit_code = 0;
};

void add_coarsen(CLI::App& app, Context& ctx);
void add_coarsen_hetero(CLI::App& app, Context& ctx);
void add_metrics(CLI::App& app, Context& ctx);
void add_validate_theory(CLI::App& app, Context& ctx);
void add_bench(CLI::App& app, Context& ctx);

/// Runs `body`, mapping agc::Error kinds to exit codes and printing the
/// message on stderr.
int guarded(const std::function<int()>& body);

/// Tokens may be fractions in (0, 1] or percents in (1, 100]. The result
/// must be strictly descending; violations throw invalid_ratio.
std::vector<double> parse_ratios(const std::vector<std::string>& tokens);

/// "auto" or a number in [0, 1].
std::optional<double> parse_alpha(const std::string& text);

std::string ratio_dir_name(double ratio);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Double or null when not finite.
nlohmann::json finite_or_null(double value);

nlohmann::json metrics_json(double ratio, const SpectralReport& report);

std::string metrics_csv_header();
std::string metrics_csv_row(double ratio, const SpectralReport& report);

struct MetricFlags {
  Index ree_k = 10;
  std::string ree_end = "low";
  std::string lift = "binary";
  Index dense_eig_limit = 4000;
  bool iterative = false;
};

void add_metric_flags(CLI::App* sub, MetricFlags& flags);
SpectralOptions to_spectral_options(const MetricFlags& flags);

}  // namespace agc::cli
