#include "hierprobe/probes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "rng.hpp"

namespace hierprobe {

std::string_view to_string(Property property) {
  switch (property) {
    case Property::PA: return "P-A";
    case Property::PS: return "P-S";
    case Property::PF: return "P-F";
    case Property::AS: return "A-S";
    case Property::AF: return "A-F";
    case Property::SF: return "S-F";
  }
  return "?";
}

std::optional<Property> parse_property(std::string_view text) {
  for (auto p : kAllProperties) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string_view to_string(PropertyGroup group) {
  switch (group) {
    case PropertyGroup::P: return "P-*";
    case PropertyGroup::A: return "A-*";
    case PropertyGroup::S: return "S-*";
  }
  return "?";
}

RelationKind left_relation(Property property) {
  switch (property) {
    case Property::PA:
    case Property::PS:
    case Property::PF: return RelationKind::Parent;
    case Property::AS:
    case Property::AF: return RelationKind::Ancestor;
    case Property::SF: return RelationKind::Sibling;
  }
  return RelationKind::Parent;
}

RelationKind right_relation(Property property) {
  switch (property) {
    case Property::PA: return RelationKind::Ancestor;
    case Property::PS:
    case Property::AS: return RelationKind::Sibling;
    case Property::PF:
    case Property::AF:
    case Property::SF: return RelationKind::FarRelative;
  }
  return RelationKind::FarRelative;
}

PropertyGroup group_of(Property property) {
  switch (left_relation(property)) {
    case RelationKind::Parent: return PropertyGroup::P;
    case RelationKind::Ancestor: return PropertyGroup::A;
    default: return PropertyGroup::S;
  }
}

std::vector<Property> members_of(PropertyGroup group) {
  std::vector<Property> out;
  for (auto p : kAllProperties) {
    if (group_of(p) == group) out.push_back(p);
  }
  return out;
}

bool is_trainable(Property property) { return property != Property::AS; }

bool distance_matches(RelationKind kind, std::size_t distance) {
  switch (kind) {
    case RelationKind::Parent: return distance == 1;
    case RelationKind::Ancestor:
    case RelationKind::Sibling: return distance == 2;
    case RelationKind::FarRelative: return distance == 3 || distance == 4;
  }
  return false;
}

bool distances_valid(Property property, std::size_t dist_nl, std::size_t dist_nr) {
  if (!distance_matches(left_relation(property), dist_nl) ||
      !distance_matches(right_relation(property), dist_nr)) {
    return false;
  }
  return property == Property::AS ? dist_nl == dist_nr : dist_nl < dist_nr;
}

std::string concept_key(std::string_view taxonomy_id, std::string_view node_id) {
  std::string key;
  key.reserve(taxonomy_id.size() + node_id.size() + 1);
  key.append(taxonomy_id).append("/").append(node_id);
  return key;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view text) {
  for (auto s : kAllSplits) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

void GenConfig::validate() const {
  const double r[] = {ratios.train, ratios.dev, ratios.test};
  for (double x : r) {
    if (!std::isfinite(x) || x < 0.0) throw ConfigError("split ratios must be non-negative");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) throw ConfigError("split ratios must sum to 1");
  if (max_per_node && *max_per_node == 0) throw ConfigError("max_per_node must be positive");
}

namespace {

// Ternaries of one fixed node, sorted by (l, r).
std::vector<Ternary> ternaries_of_node(const Taxonomy& taxonomy, const ConceptNode& node,
                                       Property property) {
  std::vector<Ternary> out;
  const auto lefts = taxonomy.related(node.id, left_relation(property));
  if (lefts.empty()) return out;
  const auto rights = taxonomy.related(node.id, right_relation(property));
  for (const auto& l : lefts) {
    for (const auto& r : rights) {
      if (l == r) continue;
      out.push_back(Ternary{property, taxonomy.id(), node, taxonomy.node(l), taxonomy.node(r),
                            taxonomy.edge_distance(node.id, l), taxonomy.edge_distance(node.id, r)});
    }
  }
  return out;
}

std::vector<const ConceptNode*> nodes_by_id(const Taxonomy& taxonomy) {
  std::vector<const ConceptNode*> nodes;
  for (const auto& n : taxonomy.nodes()) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(),
            [](const ConceptNode* a, const ConceptNode* b) { return a->id < b->id; });
  return nodes;
}

}  // namespace

std::vector<Ternary> enumerate_ternaries(const Taxonomy& taxonomy, Property property) {
  std::vector<Ternary> out;
  for (const auto* node : nodes_by_id(taxonomy)) {
    auto part = ternaries_of_node(taxonomy, *node, property);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<Ternary> sample_ternaries(const Taxonomy& taxonomy, Property property,
                                      const GenConfig& config) {
  if (!config.max_per_node) return enumerate_ternaries(taxonomy, property);
  const std::size_t cap = *config.max_per_node;

  std::vector<Ternary> out;
  for (const auto* node : nodes_by_id(taxonomy)) {
    auto part = ternaries_of_node(taxonomy, *node, property);
    if (part.size() <= cap) {
      std::move(part.begin(), part.end(), std::back_inserter(out));
      continue;
    }
    const auto seed = detail::SeedBuilder(config.seed)
                          .add(taxonomy.id())
                          .add(node->id)
                          .add(to_string(property))
                          .value();
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates over indices, then restore enumeration order.
    std::vector<std::size_t> idx(part.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < cap; ++i) {
      const auto j = i + detail::uniform_below(rng, idx.size() - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    for (auto i : idx) out.push_back(std::move(part[i]));
  }
  return out;
}

const std::vector<std::string>& TaxonomyPartition::of(Split split) const {
  switch (split) {
    case Split::Train: return train;
    case Split::Dev: return dev;
    case Split::Test: return test;
  }
  return test;
}

TaxonomyPartition partition_taxonomies(std::span<const Taxonomy> taxonomies,
                                       const GenConfig& config) {
  config.validate();
  std::vector<std::string> ids;
  for (const auto& t : taxonomies) ids.push_back(t.id());
  std::sort(ids.begin(), ids.end());

  std::mt19937_64 rng(detail::SeedBuilder(config.seed).add("taxonomy-split").value());
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[detail::uniform_below(rng, i)]);
  }

  const auto n = static_cast<double>(ids.size());
  auto cut = [&](double fraction) {
    const auto b = static_cast<std::size_t>(std::llround(fraction * n));
    return std::min(b, ids.size());
  };
  const std::size_t b1 = cut(config.ratios.train);
  const std::size_t b2 = std::max(b1, cut(config.ratios.train + config.ratios.dev));

  TaxonomyPartition part;
  part.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(b1));
  part.dev.assign(ids.begin() + static_cast<std::ptrdiff_t>(b1),
                  ids.begin() + static_cast<std::ptrdiff_t>(b2));
  part.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(b2), ids.end());

  const std::pair<double, Split> checks[] = {{config.ratios.train, Split::Train},
                                             {config.ratios.dev, Split::Dev},
                                             {config.ratios.test, Split::Test}};
  for (const auto& [ratio, split] : checks) {
    if (ratio > 0.0 && part.of(split).empty()) {
      throw InsufficientTaxonomies("split '" + std::string(to_string(split)) + "' with ratio " +
                                   std::to_string(ratio) + " receives no taxonomies out of " +
                                   std::to_string(ids.size()));
    }
  }
  return part;
}

std::array<ProbeDataset, 3> build_splits(std::span<const Taxonomy> taxonomies, Property property,
                                         const GenConfig& config, std::string source_digest) {
  const auto partition = partition_taxonomies(taxonomies, config);
  std::map<std::string_view, const Taxonomy*> by_id;
  for (const auto& t : taxonomies) by_id.emplace(t.id(), &t);

  std::array<ProbeDataset, 3> out;
  for (std::size_t s = 0; s < kAllSplits.size(); ++s) {
    auto& ds = out[s];
    ds.property = property;
    ds.split = kAllSplits[s];
    ds.provenance = Provenance{config.seed, config.max_per_node, source_digest};
    // Taxonomies within a split appear in id order.
    auto ids = partition.of(ds.split);
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) {
      auto part = sample_ternaries(*by_id.at(id), property, config);
      std::move(part.begin(), part.end(), std::back_inserter(ds.ternaries));
    }
  }
  return out;
}

std::string render_concept_text(const ConceptNode& node) {
  if (node.definition.empty()) return node.name;
  return node.name + " is defined as " + node.definition;
}

}  // namespace hierprobe
