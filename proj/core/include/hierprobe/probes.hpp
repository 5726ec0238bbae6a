#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hierprobe/taxonomy.hpp"

namespace hierprobe {

/// The six hierarchy properties. Each pairs a left and a right relation of a
/// fixed node; a probe is satisfied when the left node is closer.
enum class Property { PA, PS, PF, AS, AF, SF };

/// Properties grouped by their left relation.
enum class PropertyGroup { P, A, S };

inline constexpr std::array<Property, 6> kAllProperties = {
    Property::PA, Property::PS, Property::PF, Property::AS, Property::AF, Property::SF};
inline constexpr std::array<PropertyGroup, 3> kAllGroups = {PropertyGroup::P, PropertyGroup::A,
                                                            PropertyGroup::S};

/// "P-A", "P-S", ...
std::string_view to_string(Property property);
std::optional<Property> parse_property(std::string_view text);
/// "P-*", "A-*", "S-*"
std::string_view to_string(PropertyGroup group);

RelationKind left_relation(Property property);
RelationKind right_relation(Property property);
PropertyGroup group_of(Property property);
std::vector<Property> members_of(PropertyGroup group);
/// A-S has no expected ordering in the literature and is kept out of training.
bool is_trainable(Property property);

/// Whether an edge distance is the one implied by `kind` (1, 2, 2, {3,4}).
bool distance_matches(RelationKind kind, std::size_t distance);
/// Both distances match their relations and respect the property's ordering:
/// strict `nl < nr` everywhere except A-S, where both equal 2.
bool distances_valid(Property property, std::size_t dist_nl, std::size_t dist_nr);

/// "<taxonomy_id>/<node_id>", the key used by embedding tables.
std::string concept_key(std::string_view taxonomy_id, std::string_view node_id);

/// One probe (n, l, r): n is the fixed node, l its left relation, r its right.
struct Ternary {
  Property property;
  std::string taxonomy_id;
  ConceptNode n;
  ConceptNode l;
  ConceptNode r;
  std::size_t dist_nl = 0;
  std::size_t dist_nr = 0;

  friend bool operator==(const Ternary&, const Ternary&) = default;
};

enum class Split { Train, Dev, Test };

inline constexpr std::array<Split, 3> kAllSplits = {Split::Train, Split::Dev, Split::Test};

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

struct SplitRatios {
  double train = 0.7;
  double dev = 0.15;
  double test = 0.15;
};

struct GenConfig {
  std::uint64_t seed = 42;
  /// Cap on sampled ternaries per (node, property); unset means no cap.
  std::optional<std::size_t> max_per_node;
  SplitRatios ratios;

  /// Throws ConfigError when ratios are negative or do not sum to 1 (within
  /// 1e-9), or when max_per_node is zero.
  void validate() const;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_per_node;
  std::string source_digest;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ProbeDataset {
  Property property = Property::PA;
  Split split = Split::Test;
  std::vector<Ternary> ternaries;
  Provenance provenance;

  bool trainable() const { return is_trainable(property); }

  friend bool operator==(const ProbeDataset&, const ProbeDataset&) = default;
};

/// Every ternary of `property` in `taxonomy`, sorted by (n, l, r) ids.
std::vector<Ternary> enumerate_ternaries(const Taxonomy& taxonomy, Property property);

/// A per-node uniform sample of enumerate_ternaries(). Each node keeps at most
/// `config.max_per_node` ternaries, drawn with a generator seeded from
/// (seed, taxonomy id, node id, property), so the result does not depend on
/// the order in which nodes or taxonomies are processed. Output keeps the
/// enumeration order.
std::vector<Ternary> sample_ternaries(const Taxonomy& taxonomy, Property property,
                                      const GenConfig& config);

struct TaxonomyPartition {
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;

  const std::vector<std::string>& of(Split split) const;
};

/// Shuffles the sorted taxonomy ids with `config.seed` and cuts them at the
/// cumulative ratio boundaries. Throws InsufficientTaxonomies when a split
/// with a nonzero ratio would be empty.
TaxonomyPartition partition_taxonomies(std::span<const Taxonomy> taxonomies,
                                       const GenConfig& config);

/// Train, dev and test datasets of `property`; each split draws ternaries
/// only from its own taxonomies.
std::array<ProbeDataset, 3> build_splits(std::span<const Taxonomy> taxonomies, Property property,
                                         const GenConfig& config,
                                         std::string source_digest = {});

/// "<name> is defined as <definition>", or just the name when there is no gloss.
std::string render_concept_text(const ConceptNode& node);

}  // namespace hierprobe
