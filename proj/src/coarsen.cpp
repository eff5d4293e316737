#include "agc/coarsen.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "agc/seed.hpp"

namespace agc {

std::vector<Edge> CoarsenedGraph::edges() const {
  std::vector<Edge> out;
  for (Index i = 0; i < adjacency.rows(); ++i) {
    for (SparseMatrix::InnerIterator it(adjacency, i); it; ++it) {
      if (it.col() > i && it.value() != 0.0) out.push_back({i, static_cast<Index>(it.col()), it.value()});
    }
  }
  return out;
}

Graph CoarsenedGraph::as_graph() const {
  return Graph::from_adjacency(adjacency, features, labels);
}

FeatureMatrix average_features(const FeatureMatrix& features, const CoarseningMatrix& c) {
  FeatureMatrix out = FeatureMatrix::Zero(c.num_supernodes, features.cols());
  for (std::size_t i = 0; i < c.assignment.size(); ++i) {
    out.row(c.assignment[i]) += features.row(static_cast<Eigen::Index>(i));
  }
  for (Index s = 0; s < c.num_supernodes; ++s) {
    out.row(s) /= static_cast<double>(c.sizes[static_cast<std::size_t>(s)]);
  }
  return out;
}

std::vector<Label> majority_vote(std::span<const Label> labels, const CoarseningMatrix& c) {
  if (labels.size() != c.assignment.size()) {
    throw Error(ErrorCode::size_mismatch, "label count does not match partition size");
  }
  std::vector<std::pair<Index, Label>> pairs(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) pairs[i] = {c.assignment[i], labels[i]};
  std::sort(pairs.begin(), pairs.end());
  std::vector<Label> out(static_cast<std::size_t>(c.num_supernodes), 0);
  std::vector<std::size_t> best_count(out.size(), 0);
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
    const auto s = static_cast<std::size_t>(pairs[i].first);
    // Runs arrive in ascending label order, so a strict > keeps the smallest on ties.
    if (j - i > best_count[s]) {
      best_count[s] = j - i;
      out[s] = pairs[i].second;
    }
    i = j;
  }
  return out;
}

namespace {

struct Aggregated {
  SparseMatrix adjacency;
  Vector self_weights;
};

struct Triple {
  Index row;
  Index col;
  double value;
};

/// Row blocks small enough that a block's scratch state stays cache resident.
int block_shift(Index n) {
  int shift = 10;
  while ((n >> shift) > 256) ++shift;
  return shift;
}

/// Collapses a symmetric adjacency through `map` (row -> supernode). Entries
/// whose endpoints share a supernode go to the self weights; `self_in`, when
/// given, carries weight already internal to a row.
///
/// Rows are streamed in order and each cross entry is bucketed by the block of
/// its row supernode, so every bucket is reduced with cache-local state. Each
/// coarse entry sums its contributions in ascending (row, column) order.
Aggregated aggregate_edges(const SparseMatrix& a, const Vector* self_in, std::span<const Index> map,
                           Index n) {
  const auto rows = static_cast<Index>(a.rows());
  const auto sz = [](Index i) { return static_cast<std::size_t>(i); };
  const int shift = block_shift(n);
  const std::size_t num_blocks = sz(n >> shift) + 1;

  Aggregated out;
  out.self_weights = Vector::Zero(n);
  if (self_in) {
    for (Index i = 0; i < rows; ++i) out.self_weights[map[sz(i)]] += (*self_in)[i];
  }

  const Index* a_outer = a.outerIndexPtr();
  const Index* a_inner = a.innerIndexPtr();
  const double* a_value = a.valuePtr();
  std::vector<std::vector<Triple>> buckets(num_blocks);
  for (auto& bucket : buckets) bucket.reserve(sz(static_cast<Index>(a.nonZeros())) / (2 * num_blocks) + 16);
  Vector self_local = Vector::Zero(n);
  for (Index i = 0; i < rows; ++i) {
    const Index pi = map[sz(i)];
    std::vector<Triple>& bucket = buckets[sz(pi >> shift)];
    const Index end = a_outer[i + 1];
    for (Index k = a_outer[i]; k < end; ++k) {
      const Index j = a_inner[k];
      const Index pj = map[sz(j)];
      if (pj > pi) {
        bucket.push_back({pi, pj, a_value[k]});
      } else if (pj == pi && j > i) {
        self_local[pi] += a_value[k];
      }
    }
  }
  out.self_weights += self_local;

  // Reduce each bucket into upper-triangle rows.
  std::vector<Index> upper_outer(sz(n) + 1, 0);
  std::vector<Index> upper_inner;
  std::vector<double> upper_value;
  upper_inner.reserve(sz(static_cast<Index>(a.nonZeros() / 2)));
  upper_value.reserve(upper_inner.capacity());
  std::vector<Index> lower_count(sz(n), 0);
  std::vector<double> scratch(sz(n), 0.0);
  std::vector<char> seen(sz(n), 0);
  std::vector<Index> touched;
  const std::size_t block_rows = std::size_t{1} << shift;
  std::vector<Index> row_start(block_rows + 1);
  std::vector<Triple> sorted;
  for (std::size_t b = 0; b < num_blocks; ++b) {
    const Index base = static_cast<Index>(b << shift);
    const Index limit = std::min<Index>(n, base + static_cast<Index>(block_rows));
    if (base >= limit) break;
    std::vector<Triple>& bucket = buckets[b];
    std::fill(row_start.begin(), row_start.end(), 0);
    for (const Triple& t : bucket) ++row_start[sz(t.row - base) + 1];
    for (std::size_t r = 0; r < block_rows; ++r) row_start[r + 1] += row_start[r];
    sorted.resize(bucket.size());
    {
      std::vector<Index> cursor(row_start.begin(), row_start.end() - 1);
      for (const Triple& t : bucket) sorted[sz(cursor[sz(t.row - base)]++)] = t;
    }
    std::vector<Triple>().swap(bucket);
    for (Index u = base; u < limit; ++u) {
      touched.clear();
      for (Index m = row_start[sz(u - base)]; m < row_start[sz(u - base) + 1]; ++m) {
        const Triple& t = sorted[sz(m)];
        if (!seen[sz(t.col)]) {
          seen[sz(t.col)] = 1;
          touched.push_back(t.col);
        }
        scratch[sz(t.col)] += t.value;
      }
      std::sort(touched.begin(), touched.end());
      for (Index v : touched) {
        upper_inner.push_back(v);
        upper_value.push_back(scratch[sz(v)]);
        ++lower_count[sz(v)];
        scratch[sz(v)] = 0.0;
        seen[sz(v)] = 0;
      }
      upper_outer[sz(u) + 1] = static_cast<Index>(upper_inner.size());
    }
  }

  // Mirror: row v holds the column-v entries of earlier rows (ascending)
  // followed by its own upper row. Lower entries are bucketed by row block
  // first so the final scatter stays within one block of the output.
  SparseMatrix& full = out.adjacency;
  full.resize(n, n);
  full.resizeNonZeros(static_cast<Index>(2 * upper_inner.size()));
  Index* outer = full.outerIndexPtr();
  Index* inner = full.innerIndexPtr();
  double* value = full.valuePtr();
  outer[0] = 0;
  for (Index u = 0; u < n; ++u) {
    outer[u + 1] = outer[u] + lower_count[sz(u)] + (upper_outer[sz(u) + 1] - upper_outer[sz(u)]);
  }
  for (Index u = 0; u < n; ++u) {
    for (Index k = upper_outer[sz(u)]; k < upper_outer[sz(u) + 1]; ++k) {
      const Index v = upper_inner[sz(k)];
      buckets[sz(v >> shift)].push_back({v, u, upper_value[sz(k)]});
    }
  }
  std::vector<Index> cursor(block_rows);
  for (std::size_t b = 0; b < num_blocks; ++b) {
    const Index base = static_cast<Index>(b << shift);
    const Index limit = std::min<Index>(n, base + static_cast<Index>(block_rows));
    if (base >= limit) break;
    for (Index v = base; v < limit; ++v) cursor[sz(v - base)] = outer[v];
    for (const Triple& t : buckets[b]) {
      const Index slot = cursor[sz(t.row - base)]++;
      inner[slot] = t.col;
      value[slot] = t.value;
    }
    std::vector<Triple>().swap(buckets[b]);
    for (Index v = base; v < limit; ++v) {
      Index slot = cursor[sz(v - base)];
      for (Index k = upper_outer[sz(v)]; k < upper_outer[sz(v) + 1]; ++k, ++slot) {
        inner[slot] = upper_inner[sz(k)];
        value[slot] = upper_value[sz(k)];
      }
    }
  }
  return out;
}

}  // namespace

CoarsenedGraph coarsen_graph(const Graph& g, const CoarseningMatrix& c) {
  if (c.num_nodes() != g.num_nodes()) {
    throw Error(ErrorCode::size_mismatch, "partition covers " + std::to_string(c.num_nodes()) +
                                              " nodes, graph has " +
                                              std::to_string(g.num_nodes()));
  }
  CoarsenedGraph out;
  out.num_supernodes = c.num_supernodes;
  Aggregated agg = aggregate_edges(g.adjacency(), nullptr, c.assignment, c.num_supernodes);
  out.adjacency = std::move(agg.adjacency);
  out.self_weights = std::move(agg.self_weights);
  out.features = average_features(g.features(), c);
  if (g.has_labels()) out.labels = majority_vote(*g.labels(), c);
  out.partition = c;
  return out;
}

double resolve_alpha(const Graph& g, const std::optional<double>& requested) {
  if (requested) {
    if (!(*requested >= 0.0 && *requested <= 1.0)) {
      throw Error(ErrorCode::invalid_params, "alpha must lie in [0, 1]");
    }
    return *requested;
  }
  if (g.edge_count() == 0) return 0.0;
  if (g.has_labels()) return heterophily_factor(g);
  return 0.5;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ScoreVector score_graph(const Graph& g, const CoarsenOptions& options) {
  const double alpha = resolve_alpha(g, options.alpha);
  const auto projections =
      sample_projections(g.feature_dim() + g.num_nodes(), options.projectors, mix_seed(options.seed, 0));
  ScoreOptions so;
  so.aggregate = options.aggregate;
  if (options.standardize) {
    return project_rows(standardize_columns(g.features()), g.adjacency(), alpha, projections, so);
  }
  return project_scores(g, alpha, projections, so);
}

}  // namespace

AdaptiveCoarsener::AdaptiveCoarsener(const Graph& g, double min_ratio, const CoarsenOptions& options,
                                     std::span<const double> checkpoint_ratios)
    : graph_(g) {
  if (!(min_ratio > 0.0 && min_ratio <= 1.0)) {
    throw Error(ErrorCode::invalid_ratio, "min_ratio must lie in (0, 1]");
  }
  auto start = std::chrono::steady_clock::now();
  scores_ = score_graph(g, options);
  times_.project = seconds_since(start);

  start = std::chrono::steady_clock::now();
  NodeOrder order = build_order(scores_);
  times_.sort = seconds_since(start);

  start = std::chrono::steady_clock::now();
  schedule_ = build_schedule(order, min_ratio, mix_seed(options.seed, 1), checkpoint_ratios);
  times_.schedule = seconds_since(start);
}

CoarsenedGraph AdaptiveCoarsener::coarsen(double ratio) const {
  return coarsen_graph(graph_, partition(ratio));
}

std::vector<CoarsenedGraph> AdaptiveCoarsener::coarsen_all(std::span<const double> ratios) const {
  const std::vector<CoarseningMatrix> parts = schedule_.partitions_at_ratios(ratios);
  std::vector<std::size_t> by_size(parts.size());
  std::iota(by_size.begin(), by_size.end(), std::size_t{0});
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t x, std::size_t y) {
    return parts[x].num_supernodes > parts[y].num_supernodes;
  });

  // Partitions nest, so each coarser level is built from the previous one:
  // edge weights, feature sums and per-class label counts all add up exactly.
  const Graph& g = graph_;
  std::vector<Label> classes;
  if (g.has_labels()) {
    classes = *g.labels();
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  }
  const bool count_labels = g.has_labels() && classes.size() <= 256;
  const auto num_classes = static_cast<Eigen::Index>(classes.size());
  using CountMatrix = Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  FeatureMatrix level_sums = g.features();
  CountMatrix level_counts;
  if (count_labels) {
    level_counts = CountMatrix::Zero(g.num_nodes(), num_classes);
    for (Index v = 0; v < g.num_nodes(); ++v) {
      const auto cls = std::lower_bound(classes.begin(), classes.end(), (*g.labels())[static_cast<std::size_t>(v)]) -
                       classes.begin();
      level_counts(v, cls) = 1;
    }
  }
  const CoarseningMatrix* previous = nullptr;
  std::size_t previous_index = 0;

  std::vector<CoarsenedGraph> out(parts.size());
  for (std::size_t idx : by_size) {
    const CoarseningMatrix& c = parts[idx];
    const Index n = c.num_supernodes;
    std::vector<Index> map;
    if (previous) {
      map.assign(static_cast<std::size_t>(previous->num_supernodes), 0);
      for (std::size_t v = 0; v < c.assignment.size(); ++v) {
        map[static_cast<std::size_t>(previous->assignment[v])] = c.assignment[v];
      }
    } else {
      map = c.assignment;
    }
    const auto rows = static_cast<Index>(map.size());

    const CoarsenedGraph* level = previous ? &out[previous_index] : nullptr;
    Aggregated agg = level ? aggregate_edges(level->adjacency, &level->self_weights, map, n)
                           : aggregate_edges(g.adjacency(), nullptr, map, n);
    FeatureMatrix sums = FeatureMatrix::Zero(n, level_sums.cols());
    for (Index r = 0; r < rows; ++r) sums.row(map[static_cast<std::size_t>(r)]) += level_sums.row(r);
    CountMatrix counts;
    if (count_labels) {
      counts = CountMatrix::Zero(n, num_classes);
      for (Index r = 0; r < rows; ++r) counts.row(map[static_cast<std::size_t>(r)]) += level_counts.row(r);
    }

    CoarsenedGraph& cg = out[idx];
    cg.num_supernodes = n;
    cg.adjacency = std::move(agg.adjacency);
    cg.self_weights = std::move(agg.self_weights);
    cg.features.resize(n, sums.cols());
    for (Index s = 0; s < n; ++s) {
      cg.features.row(s) = sums.row(s) / static_cast<double>(c.sizes[static_cast<std::size_t>(s)]);
    }
    if (count_labels) {
      cg.labels.emplace(static_cast<std::size_t>(n));
      for (Index s = 0; s < n; ++s) {
        Eigen::Index best = 0;
        counts.row(s).maxCoeff(&best);  // first maximum, i.e. the smallest label
        (*cg.labels)[static_cast<std::size_t>(s)] = classes[static_cast<std::size_t>(best)];
      }
    } else if (g.has_labels()) {
      cg.labels = majority_vote(*g.labels(), c);
    }
    cg.partition = c;

    level_sums = std::move(sums);
    level_counts = std::move(counts);
    previous = &c;
    previous_index = idx;
  }
  return out;
}

}  // namespace agc
