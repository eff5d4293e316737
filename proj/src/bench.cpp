#include "agc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

#include <sys/wait.h>
#include <unistd.h>

#include "agc/coarsen.hpp"
#include "agc/io.hpp"
#include "agc/synthetic.hpp"
#include "agc/timing.hpp"

namespace agc::bench {

BenchRecord time_graph(const Graph& g, std::span<const double> ratios, const BenchConfig& config) {
  BenchRecord rec;
  rec.num_nodes = g.num_nodes();
  rec.num_edges = g.edge_count();
  rec.num_ratios = ratios.size();
  rec.adaptive_seconds = std::numeric_limits<double>::infinity();
  rec.naive_seconds = std::numeric_limits<double>::infinity();
  const double min_ratio = *std::min_element(ratios.begin(), ratios.end());

  CoarsenOptions options;
  options.projectors = config.projectors;
  options.seed = config.seed;

  for (int rep = 0; rep < std::max(config.repeats, 1); ++rep) {
    Stopwatch total;
    AdaptiveCoarsener coarsener(g, min_ratio, options);
    Stopwatch extract;
    const auto coarsened = coarsener.coarsen_all(ratios);
    const double extract_seconds = extract.seconds();
    const double adaptive = total.seconds();
    if (adaptive < rec.adaptive_seconds) {
      rec.adaptive_seconds = adaptive;
      rec.project_seconds = coarsener.times().project;
      rec.sort_seconds = coarsener.times().sort;
      rec.schedule_seconds = coarsener.times().schedule;
      rec.extract_seconds = extract_seconds;
    }

    Stopwatch naive;
    for (double r : ratios) {
      AdaptiveCoarsener single(g, r, options);
      const auto coarsened_single = single.coarsen(r);
    }
    rec.naive_seconds = std::min(rec.naive_seconds, naive.seconds());
  }
  return rec;
}

namespace {

BenchRecord time_size(Index n, const BenchConfig& config) {
  synthetic::GeometricSpec spec;
  spec.num_nodes = n;
  spec.feature_dim = config.feature_dim;
  spec.avg_degree = config.avg_degree;
  spec.seed = config.seed + static_cast<std::uint64_t>(n);
  const Graph g = synthetic::random_geometric(spec);
  return time_graph(g, config.ratios, config);
}

/// Runs `time_size` in a forked child so each size starts from a fresh heap;
/// otherwise pages retained from an earlier, larger size make later sizes
/// look cheaper than a standalone run.
BenchRecord time_size_isolated(Index n, const BenchConfig& config) {
  static_assert(std::is_trivially_copyable_v<BenchRecord>);
  int fds[2];
  if (::pipe(fds) != 0) return time_size(n, config);
  const pid_t child = ::fork();
  if (child < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    return time_size(n, config);
  }
  if (child == 0) {
    ::close(fds[0]);
    int status = 1;
    try {
      const BenchRecord rec = time_size(n, config);
      status = ::write(fds[1], &rec, sizeof rec) == static_cast<ssize_t>(sizeof rec) ? 0 : 1;
    } catch (...) {
    }
    ::_exit(status);
  }
  ::close(fds[1]);
  BenchRecord rec;
  std::size_t got = 0;
  auto* bytes = reinterpret_cast<char*>(&rec);
  while (got < sizeof rec) {
    const ssize_t r = ::read(fds[0], bytes + got, sizeof rec - got);
    if (r <= 0) break;
    got += static_cast<std::size_t>(r);
  }
  ::close(fds[0]);
  int status = 0;
  ::waitpid(child, &status, 0);
  if (got != sizeof rec || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw Error(ErrorCode::invalid_params, "benchmark child for N=" + std::to_string(n) + " failed");
  }
  return rec;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<BenchRecord> out;
  for (Index n : config.sizes) {
    out.push_back(config.isolate ? time_size_isolated(n, config) : time_size(n, config));
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "num_nodes,num_edges,num_ratios,adaptive_seconds,naive_seconds,speedup,"
         "project_seconds,sort_seconds,schedule_seconds,extract_seconds\n";
  for (const auto& r : records) {
    out << r.num_nodes << ',' << r.num_edges << ',' << r.num_ratios << ','
        << io::format_double(r.adaptive_seconds) << ',' << io::format_double(r.naive_seconds) << ','
        << io::format_double(r.speedup()) << ',' << io::format_double(r.project_seconds) << ','
        << io::format_double(r.sort_seconds) << ',' << io::format_double(r.schedule_seconds) << ','
        << io::format_double(r.extract_seconds) << '\n';
  }
  return out.str();
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::invalid_params, "slope fit needs at least two paired points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace agc::bench
