#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "agc/graph.hpp"

namespace agc::bench {

/// The ten coarsening ratios used for the adaptive runtime comparison.
inline const std::vector<double> kDefaultRatios = {0.55, 0.50, 0.45, 0.40, 0.35,
                                                   0.30, 0.25, 0.20, 0.15, 0.10};

struct BenchConfig {
  std::vector<Index> sizes = {10000, 20000, 40000, 80000};
  std::vector<double> ratios = kDefaultRatios;
  std::uint64_t seed = 0;
  Index projectors = 10;
  Index feature_dim = 32;
  double avg_degree = 10.0;
  /// Each timing is the minimum over this many repetitions.
  int repeats = 3;
  /// Time each size in its own child process (POSIX fork).
  bool isolate = true;
};

struct BenchRecord {
  Index num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t num_ratios = 0;
  /// One hashing pass and schedule, then every ratio read off it.
  double adaptive_seconds = 0.0;
  /// Full pipeline rerun from scratch for each ratio.
  double naive_seconds = 0.0;
  double project_seconds = 0.0;
  double sort_seconds = 0.0;
  double schedule_seconds = 0.0;
  double extract_seconds = 0.0;

  double speedup() const { return naive_seconds / adaptive_seconds; }
};

/// Times adaptive vs per-ratio coarsening on one graph. File I/O is excluded.
BenchRecord time_graph(const Graph& g, std::span<const double> ratios, const BenchConfig& config);

/// Generates a seeded random geometric graph per size and times it.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRecord>& records);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace agc::bench
