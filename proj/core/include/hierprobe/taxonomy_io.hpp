#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "hierprobe/taxonomy.hpp"

namespace hierprobe {

struct ParseOptions {
  /// Receives non-fatal diagnostics such as ignored unknown fields.
  std::function<void(std::string_view)> on_warning;
};

/// Reads line-delimited taxonomy records without validating tree structure.
/// Blank lines are skipped. Throws TaxonomyError(MalformedRecord) on bad JSON
/// or missing required fields.
std::vector<TaxonomyRecord> read_taxonomy_records(std::istream& in,
                                                  const ParseOptions& options = {});

/// Reads and validates every taxonomy in file order. Throws TaxonomyError
/// naming the taxonomy and offending node on the first invalid record.
std::vector<Taxonomy> parse_taxonomies(std::istream& in, const ParseOptions& options = {});

/// One single-line record per taxonomy, readable by parse_taxonomies().
void write_taxonomies(std::ostream& out, std::span<const Taxonomy> taxonomies);

}  // namespace hierprobe
