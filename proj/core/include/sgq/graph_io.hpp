#pragma once

#include <optional>
#include <string>

#include "sgq/graph.hpp"

namespace sgq {

struct LoadReport {
  long n_edges = 0;        // distinct undirected input pairs
  long n_unlabeled = 0;    // nodes without a label row
  bool labels_file_found = true;
};

// Reads the raw (unpreprocessed) graph from:
//   edges_path     TSV, one "u<TAB>v" per line, external node ids
//   features_path  CSV with header (node_id, f0..f{k-1}), values in {0,1}
//   labels_path    CSV with header (node_id, class_index); a node absent
//                  from the file is unlabeled; a missing file means the
//                  whole graph is unlabeled (reported, not an error)
// Node indices follow first appearance in the features file. When
// declared_classes is given, any class_index >= it is a validation error;
// otherwise the class count is max(class_index) + 1.
Graph load_graph(const std::string& edges_path, const std::string& features_path,
                 const std::string& labels_path,
                 std::optional<long> declared_classes = std::nullopt,
                 LoadReport* report = nullptr);

// Graph artifact: versioned JSON with node ids, undirected edge list
// (self-loops implied when preprocessed), feature rows and label indices.
void save_graph(const Graph& g, const std::string& path, bool preprocessed);
Graph load_saved_graph(const std::string& path, bool* preprocessed = nullptr);

// Split file: {"seed":..., "train":[...], "validation":[...], "test":[...]}
// with external node ids.
void save_split(const NodeSplit& split, const Graph& g, const std::string& path);
NodeSplit load_split(const std::string& path, const Graph& g);

}  // namespace sgq
