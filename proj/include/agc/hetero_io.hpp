#pragma once

#include <filesystem>

#include "agc/hetero.hpp"

namespace agc::io {

/// Reads a manifest of the form
///   {"types": {name: {"count": n, "features_file"?: p, "labels_file"?: p}},
///    "relations": [{"src": a, "rel": r, "dst": b, "edges_file": p}],
///    "target_type": name}
/// Relative file paths resolve against the manifest's directory. Relation
/// edge files use the edge-list format with src ids in the src type's range
/// and dst ids in the dst type's range. Schema violations throw parse_error.
HeteroGraph load_hetero_manifest(const std::filesystem::path& manifest);

}  // namespace agc::io
