#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hierprobe/errors.hpp"

namespace hierprobe {

/// A concept: surface term plus gloss. `definition` may be empty.
struct ConceptNode {
  std::string id;
  std::string name;
  std::string definition;

  friend bool operator==(const ConceptNode&, const ConceptNode&) = default;
};

/// Unvalidated taxonomy as it appears in an input file.
struct TaxonomyRecord {
  std::string taxonomy_id;
  std::vector<ConceptNode> nodes;
  /// (child_id, parent_id) pairs.
  std::vector<std::pair<std::string, std::string>> edges;

  friend bool operator==(const TaxonomyRecord&, const TaxonomyRecord&) = default;
};

struct Violation {
  TaxonomyErrorKind kind;
  std::string node_id;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every structural problem in `record`, in a stable order (ids and names,
/// edges, cycles, roots, reachability). Empty when the record is a valid tree.
std::vector<Violation> validate(const TaxonomyRecord& record);

enum class RelationKind { Parent, Ancestor, Sibling, FarRelative };

std::string_view to_string(RelationKind kind);

/// Materialized relations of one node. All id lists are sorted.
struct RelationSet {
  std::string node;
  std::optional<std::string> parent;
  std::optional<std::string> ancestor;
  std::vector<std::string> siblings;
  std::vector<std::string> far_relatives;

  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

/// A validated rooted tree of concepts. Immutable once built.
///
/// Relations for a node n:
///   parent       the direct hypernym (1 edge)
///   ancestor     the grandparent (2 edges)
///   sibling      another child of the parent (2 edges)
///   far relative a child or grandchild of the ancestor lying outside the
///                parent's subtree (3 or 4 edges)
class Taxonomy {
 public:
  /// Throws TaxonomyError for the first violation reported by validate().
  static Taxonomy build(TaxonomyRecord record);

  const std::string& id() const noexcept { return id_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const ConceptNode> nodes() const noexcept { return nodes_; }
  const ConceptNode& root() const noexcept { return nodes_[root_]; }

  bool contains(std::string_view node_id) const;
  /// Throws TaxonomyError(UnknownNode).
  const ConceptNode& node(std::string_view node_id) const;

  std::optional<std::string> parent_of(std::string_view node_id) const;
  std::vector<std::string> children_of(std::string_view node_id) const;
  std::size_t depth(std::string_view node_id) const;
  /// Longest root-to-leaf path, in edges.
  std::size_t height() const noexcept { return height_; }

  /// Length of the unique undirected path between a and b.
  std::size_t edge_distance(std::string_view a, std::string_view b) const;

  RelationSet relations_of(std::string_view node_id) const;
  /// The ids related to `node_id` by `kind`, sorted.
  std::vector<std::string> related(std::string_view node_id, RelationKind kind) const;

  /// Inverse of build(): nodes in original order, one edge per non-root node.
  TaxonomyRecord to_record() const;

 private:
  Taxonomy() = default;

  std::size_t index_of(std::string_view node_id) const;
  std::vector<std::string> sorted_ids(const std::vector<std::size_t>& indices) const;

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::string id_;
  std::vector<ConceptNode> nodes_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> depth_;
  std::size_t root_ = 0;
  std::size_t height_ = 0;
};

}  // namespace hierprobe
