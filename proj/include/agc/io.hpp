#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agc/graph.hpp"

namespace agc::io {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

struct EdgeList {
  std::vector<Edge> edges;
  Index max_node_id = -1;
};

/// `src<TAB>dst[<TAB>weight]` per line, `#` comments, blank lines skipped.
/// Spaces are accepted as separators as well. Missing weights default to 1.
EdgeList read_edge_list(const std::filesystem::path& path);
FeatureMatrix read_features_csv(const std::filesystem::path& path);
std::vector<Label> read_labels(const std::filesystem::path& path);
std::vector<Index> read_assignment(const std::filesystem::path& path);

void write_edge_list(const std::filesystem::path& path, const std::vector<Edge>& edges);
void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& features);
void write_labels(const std::filesystem::path& path, const std::vector<Label>& labels);
void write_assignment(const std::filesystem::path& path, const std::vector<Index>& assignment);
void write_text(const std::filesystem::path& path, std::string_view text);

struct GraphFiles {
  std::filesystem::path edges;
  std::optional<std::filesystem::path> features;
  std::optional<std::filesystem::path> labels;
  /// Required when no feature file is given; otherwise must agree with it.
  std::optional<Index> num_nodes;
};

/// Loads a graph. Without a feature file the graph gets zero feature
/// columns. Errors are agc::Error with parse_error or io_error codes and a
/// `path:line:` prefix.
Graph load_graph(const GraphFiles& files);

}  // namespace agc::io
