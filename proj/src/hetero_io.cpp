#include "agc/hetero_io.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "agc/io.hpp"

namespace agc::io {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::filesystem::path& manifest, const std::string& what) {
  throw Error(ErrorCode::parse_error, manifest.string() + ": " + what);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  std::filesystem::path p(file);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

HeteroGraph load_hetero_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + manifest.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    schema_error(manifest, std::string("invalid JSON: ") + e.what());
  }
  const auto base = manifest.parent_path();
  if (!doc.is_object() || !doc.contains("types") || !doc["types"].is_object()) {
    schema_error(manifest, "missing `types` object");
  }
  if (!doc.contains("target_type") || !doc["target_type"].is_string()) {
    schema_error(manifest, "missing `target_type`");
  }

  std::vector<NodeType> types;
  try {
    for (const auto& [name, spec] : doc["types"].items()) {
      NodeType t;
      t.name = name;
      if (!spec.contains("count") || !spec["count"].is_number_integer() ||
          spec["count"].get<long long>() < 0) {
        schema_error(manifest, "type `" + name + "` needs a nonnegative integer `count`");
      }
      t.count = spec["count"].get<Index>();
      if (spec.contains("features_file")) {
        const auto path = resolve(base, spec["features_file"].get<std::string>());
        t.features = read_features_csv(path);
        if (t.features->rows() != t.count) {
          schema_error(manifest, path.string() + " has " + std::to_string(t.features->rows()) +
                                     " rows, type `" + name + "` declares " +
                                     std::to_string(t.count));
        }
      }
      if (spec.contains("labels_file")) {
        const auto path = resolve(base, spec["labels_file"].get<std::string>());
        t.labels = read_labels(path);
        if (static_cast<Index>(t.labels->size()) != t.count) {
          schema_error(manifest, path.string() + " label count does not match type `" + name + "`");
        }
      }
      types.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    schema_error(manifest, std::string("malformed type entry: ") + e.what());
  }

  auto find_count = [&](const std::string& name) -> Index {
    for (const auto& t : types) {
      if (t.name == name) return t.count;
    }
    schema_error(manifest, "relation references unknown type `" + name + "`");
  };

  std::vector<Relation> relations;
  if (doc.contains("relations")) {
    if (!doc["relations"].is_array()) schema_error(manifest, "`relations` must be an array");
    try {
      for (const auto& spec : doc["relations"]) {
        Relation r;
        r.key = {spec.at("src").get<std::string>(), spec.at("rel").get<std::string>(),
                 spec.at("dst").get<std::string>()};
        const Index rows = find_count(r.key.src);
        const Index cols = find_count(r.key.dst);
        const auto path = resolve(base, spec.at("edges_file").get<std::string>());
        const auto edges = read_edge_list(path);
        std::vector<Eigen::Triplet<double, Index>> triplets;
        triplets.reserve(edges.edges.size());
        for (const auto& e : edges.edges) {
          if (e.src >= rows || e.dst >= cols) {
            schema_error(manifest, path.string() + ": edge (" + std::to_string(e.src) + ", " +
                                       std::to_string(e.dst) + ") outside " + r.key.src + "[" +
                                       std::to_string(rows) + "] x " + r.key.dst + "[" +
                                       std::to_string(cols) + "]");
          }
          triplets.emplace_back(e.src, e.dst, e.weight);
        }
        r.matrix.resize(rows, cols);
        r.matrix.setFromTriplets(triplets.begin(), triplets.end());
        r.matrix.makeCompressed();
        relations.push_back(std::move(r));
      }
    } catch (const json::exception& e) {
      schema_error(manifest, std::string("malformed relation entry: ") + e.what());
    }
  }

  const auto target = doc["target_type"].get<std::string>();
  if (std::none_of(types.begin(), types.end(), [&](const NodeType& t) { return t.name == target; })) {
    schema_error(manifest, "unknown target type `" + target + "`");
  }
  try {
    return HeteroGraph::create(std::move(types), std::move(relations), target);
  } catch (const Error& e) {
    schema_error(manifest, e.what());
  }
}

}  // namespace agc::io
