#pragma once

// Shared test fixtures: hand-built trees, random tree generators and
// synthetic embedding tables.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hierprobe/hierprobe.hpp"

namespace hierprobe::testing {

inline ConceptNode concept_node(std::string id, std::string definition = "") {
  std::string name = id + "-term";
  return ConceptNode{std::move(id), std::move(name), std::move(definition)};
}

/// R -> {A, B}, A -> {a1, a2}, a1 -> {x1, x2}
inline TaxonomyRecord seven_node_record(std::string taxonomy_id = "t7") {
  TaxonomyRecord r;
  r.taxonomy_id = std::move(taxonomy_id);
  for (const char* id : {"R", "A", "B", "a1", "a2", "x1", "x2"}) r.nodes.push_back(concept_node(id));
  r.edges = {{"A", "R"}, {"B", "R"}, {"a1", "A"}, {"a2", "A"}, {"x1", "a1"}, {"x2", "a1"}};
  return r;
}

/// The seven-node tree with a2 -> {y1} added.
inline TaxonomyRecord eight_node_record(std::string taxonomy_id = "t8") {
  auto r = seven_node_record(std::move(taxonomy_id));
  r.nodes.push_back(concept_node("y1"));
  r.edges.emplace_back("y1", "a2");
  return r;
}

/// Complete binary tree; node ids are heap indices "n1" (root) .. "n<2^(h+1)-1>".
inline TaxonomyRecord complete_binary_record(int height, std::string taxonomy_id = "cbt") {
  TaxonomyRecord r;
  r.taxonomy_id = std::move(taxonomy_id);
  const int count = (1 << (height + 1)) - 1;
  for (int i = 1; i <= count; ++i) r.nodes.push_back(concept_node("n" + std::to_string(i)));
  for (int i = 2; i <= count; ++i) {
    r.edges.emplace_back("n" + std::to_string(i), "n" + std::to_string(i / 2));
  }
  return r;
}

/// Random rooted tree with node count in [min_nodes, max_nodes] and height at
/// most `max_height`; every new node attaches to a uniformly chosen existing
/// node that still has depth below the cap.
inline TaxonomyRecord random_tree_record(std::mt19937_64& rng, const std::string& taxonomy_id,
                                         int max_height = 4, int min_nodes = 10,
                                         int max_nodes = 50) {
  std::uniform_int_distribution<int> size_dist(min_nodes, max_nodes);
  const int count = size_dist(rng);
  TaxonomyRecord r;
  r.taxonomy_id = taxonomy_id;
  std::vector<int> depth{0};
  r.nodes.push_back(concept_node("c0", "root concept"));
  for (int i = 1; i < count; ++i) {
    std::vector<int> open;
    for (int j = 0; j < i; ++j) {
      if (depth[j] < max_height) open.push_back(j);
    }
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const int parent = open[pick(rng)];
    depth.push_back(depth[parent] + 1);
    r.nodes.push_back(concept_node("c" + std::to_string(i), "gloss " + std::to_string(i)));
    r.edges.emplace_back("c" + std::to_string(i), "c" + std::to_string(parent));
  }
  return r;
}

inline std::vector<Taxonomy> random_taxonomies(std::uint64_t seed, int count, int max_height = 4,
                                               int min_nodes = 10, int max_nodes = 50) {
  std::mt19937_64 rng(seed);
  std::vector<Taxonomy> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(Taxonomy::build(
        random_tree_record(rng, "tax" + std::to_string(i), max_height, min_nodes, max_nodes)));
  }
  return out;
}

/// Probe datasets (single split, no cap) for `properties` over `taxonomies`.
inline std::vector<ProbeDataset> all_probe_datasets(const std::vector<Taxonomy>& taxonomies,
                                                    std::span<const Property> properties =
                                                        kAllProperties) {
  std::vector<ProbeDataset> out;
  for (auto p : properties) {
    ProbeDataset ds;
    ds.property = p;
    ds.split = Split::Test;
    for (const auto& t : taxonomies) {
      auto part = enumerate_ternaries(t, p);
      ds.ternaries.insert(ds.ternaries.end(), part.begin(), part.end());
    }
    out.push_back(std::move(ds));
  }
  return out;
}

/// i.i.d. Gaussian vectors for every node of every taxonomy.
inline EmbeddingTable gaussian_table(const std::vector<Taxonomy>& taxonomies, std::size_t dim,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  EmbeddingTable table(dim, "gaussian");
  std::vector<double> v(dim);
  for (const auto& t : taxonomies) {
    for (const auto& n : t.nodes()) {
      for (auto& x : v) x = g(rng);
      table.insert(concept_key(t.id(), n.id), v);
    }
  }
  return table;
}

/// Random-walk vectors: each child is its parent's vector plus Gaussian noise,
/// so tree distance is reflected in embedding distance.
inline EmbeddingTable hierarchical_table(const std::vector<Taxonomy>& taxonomies, std::size_t dim,
                                         double step, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  EmbeddingTable table(dim, "hierarchical");
  for (const auto& t : taxonomies) {
    std::vector<std::string> frontier{t.root().id};
    std::vector<double> root(dim);
    for (auto& x : root) x = g(rng);
    table.insert(concept_key(t.id(), t.root().id), root);
    while (!frontier.empty()) {
      std::vector<std::string> next;
      for (const auto& id : frontier) {
        const auto base = *table.find(concept_key(t.id(), id));
        const std::vector<double> parent(base.begin(), base.end());
        for (const auto& child : t.children_of(id)) {
          std::vector<double> v = parent;
          for (auto& x : v) x += step * g(rng);
          table.insert(concept_key(t.id(), child), v);
          next.push_back(child);
        }
      }
      frontier = std::move(next);
    }
  }
  return table;
}

/// Each node maps to the indicator vector of the edges on its root path, so
/// the squared Euclidean distance between two nodes equals their tree
/// distance. Every strict-inequality probe is then judged Correct under L2,
/// and every A-S probe is an exact tie.
inline EmbeddingTable path_indicator_table(const std::vector<Taxonomy>& taxonomies) {
  std::size_t dim = 1;
  for (const auto& t : taxonomies) dim = std::max(dim, t.size());
  EmbeddingTable table(dim, "path-indicator");
  for (const auto& t : taxonomies) {
    std::map<std::string, std::size_t> edge_slot;
    for (const auto& n : t.nodes()) edge_slot.emplace(n.id, edge_slot.size());
    for (const auto& n : t.nodes()) {
      std::vector<double> v(dim, 0.0);
      for (std::string cur = n.id; auto p = t.parent_of(cur); cur = *p) v[edge_slot.at(cur)] = 1.0;
      table.insert(concept_key(t.id(), n.id), v);
    }
  }
  return table;
}

}  // namespace hierprobe::testing
