#include "agc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace agc::io {

namespace {

std::string location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot write " + path.string());
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, std::string_view separators) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto next = line.find_first_of(separators, pos);
    const auto field = line.substr(pos, next == std::string_view::npos ? next : next - pos);
    fields.push_back(trim(field));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return fields;
}

template <class T>
bool parse_number(std::string_view text, T& value) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

EdgeList read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  EdgeList result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    std::vector<std::string_view> fields;
    for (auto f : split_fields(content, "\t ")) {
      if (!f.empty()) fields.push_back(f);
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw Error(ErrorCode::parse_error,
                  location(path, line_no) + "expected `src<TAB>dst[<TAB>weight]`");
    }
    Edge e;
    if (!parse_number(fields[0], e.src) || !parse_number(fields[1], e.dst) || e.src < 0 ||
        e.dst < 0) {
      throw Error(ErrorCode::parse_error, location(path, line_no) + "invalid node id");
    }
    if (fields.size() == 3 && (!parse_number(fields[2], e.weight) || !(e.weight >= 0.0))) {
      throw Error(ErrorCode::parse_error, location(path, line_no) + "invalid edge weight");
    }
    result.max_node_id = std::max({result.max_node_id, e.src, e.dst});
    result.edges.push_back(e);
  }
  return result;
}

FeatureMatrix read_features_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<double> values;
  Eigen::Index cols = -1;
  Eigen::Index rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto fields = split_fields(content, ",");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(fields.size());
    } else if (static_cast<Eigen::Index>(fields.size()) != cols) {
      throw Error(ErrorCode::parse_error, location(path, line_no) + "expected " +
                                              std::to_string(cols) + " columns, found " +
                                              std::to_string(fields.size()));
    }
    for (auto f : fields) {
      double v = 0.0;
      if (!parse_number(f, v)) {
        throw Error(ErrorCode::parse_error,
                    location(path, line_no) + "invalid number `" + std::string(f) + "`");
      }
      values.push_back(v);
    }
    ++rows;
  }
  FeatureMatrix features(rows, std::max<Eigen::Index>(cols, 0));
  std::copy(values.begin(), values.end(), features.data());
  return features;
}

namespace {

template <class T>
std::vector<T> read_integer_lines(const std::filesystem::path& path, const char* what) {
  auto in = open_input(path);
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    T v{};
    if (!parse_number(content, v)) {
      throw Error(ErrorCode::parse_error, location(path, line_no) + "invalid " + what);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<Label> read_labels(const std::filesystem::path& path) {
  return read_integer_lines<Label>(path, "label");
}

std::vector<Index> read_assignment(const std::filesystem::path& path) {
  return read_integer_lines<Index>(path, "supernode id");
}

void write_edge_list(const std::filesystem::path& path, const std::vector<Edge>& edges) {
  auto out = open_output(path);
  for (const Edge& e : edges) {
    out << e.src << '\t' << e.dst << '\t' << format_double(e.weight) << '\n';
  }
}

void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& features) {
  auto out = open_output(path);
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    for (Eigen::Index c = 0; c < features.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(features(r, c));
    }
    out << '\n';
  }
}

void write_labels(const std::filesystem::path& path, const std::vector<Label>& labels) {
  auto out = open_output(path);
  for (Label y : labels) out << y << '\n';
}

void write_assignment(const std::filesystem::path& path, const std::vector<Index>& assignment) {
  auto out = open_output(path);
  for (Index a : assignment) out << a << '\n';
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  auto out = open_output(path);
  out << text;
}

Graph load_graph(const GraphFiles& files) {
  auto edge_list = read_edge_list(files.edges);
  FeatureMatrix features;
  Index n = 0;
  if (files.features) {
    features = read_features_csv(*files.features);
    n = static_cast<Index>(features.rows());
    if (files.num_nodes && *files.num_nodes != n) {
      throw Error(ErrorCode::parse_error,
                  files.features->string() + ": has " + std::to_string(n) +
                      " rows but --num-nodes is " + std::to_string(*files.num_nodes));
    }
  } else if (files.num_nodes) {
    n = *files.num_nodes;
    features = FeatureMatrix(n, 0);
  } else {
    n = edge_list.max_node_id + 1;
    features = FeatureMatrix(n, 0);
  }
  if (edge_list.max_node_id >= n) {
    throw Error(ErrorCode::parse_error, files.edges.string() + ": node id " +
                                            std::to_string(edge_list.max_node_id) +
                                            " out of range for " + std::to_string(n) + " nodes");
  }
  std::optional<std::vector<Label>> labels;
  if (files.labels) {
    labels = read_labels(*files.labels);
    if (static_cast<Index>(labels->size()) != n) {
      throw Error(ErrorCode::parse_error, files.labels->string() + ": has " +
                                              std::to_string(labels->size()) +
                                              " labels, expected " + std::to_string(n));
    }
  }
  return Graph::from_edges(n, edge_list.edges, std::move(features), std::move(labels));
}

}  // namespace agc::io
