#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hierprobe/errors.hpp"

namespace hierprobe {

enum class DistanceMethod { Cosine, Euclidean };

/// "cos" / "l2"
std::string_view to_string(DistanceMethod method);
std::optional<DistanceMethod> parse_distance_method(std::string_view text);

/// Cosine: 1 - u.v / (|u| |v|), in [0, 2], undefined for zero vectors.
/// Euclidean: |u - v|. Both return exactly 0 for identical inputs.
/// Throws DistanceError on dimension mismatch or (cosine) a zero vector.
double distance(std::span<const double> u, std::span<const double> v, DistanceMethod method);

/// Concept key -> fixed-dimension vector. Keys have the form
/// "<taxonomy_id>/<node_id>".
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension, std::string provenance = {});

  /// Throws EmbeddingError on a malformed key, wrong length, non-finite
  /// component, or a key that is already present.
  void insert(std::string key, std::span<const double> values);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return index_.size(); }
  bool empty() const noexcept { return index_.empty(); }
  const std::string& provenance() const noexcept { return provenance_; }

  bool contains(std::string_view key) const { return index_.contains(key); }
  std::optional<std::span<const double>> find(std::string_view key) const;
  /// All keys in sorted order.
  std::vector<std::string> keys() const;

  /// Copy with every vector multiplied by `factor`.
  EmbeddingTable scaled(double factor) const;

 private:
  std::size_t dimension_;
  std::string provenance_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<double> data_;
};

/// Parses the tab-separated embedding format:
///   dim<TAB><d>
///   <concept_key><TAB>v1 v2 ... vd
/// Throws EmbeddingError (MalformedHeader, MalformedRow, DimensionMismatch,
/// NonFiniteValue, DuplicateKey, EmptyTable).
EmbeddingTable load_embeddings(std::istream& in, std::string provenance = {});

/// Writes rows in key order with 17 significant digits per component.
void write_embeddings(std::ostream& out, const EmbeddingTable& table);

}  // namespace hierprobe
