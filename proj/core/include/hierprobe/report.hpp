#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hierprobe/probes.hpp"

namespace hierprobe {

struct PropertyScore {
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  /// Ternaries left unjudged because a key was missing (skip policy).
  std::uint64_t skipped = 0;
  /// Fraction in [0, 1]; correct / total for scores built from counts.
  double accuracy = 0.0;

  static PropertyScore from_counts(std::uint64_t correct, std::uint64_t total,
                                   std::uint64_t skipped = 0);

  friend bool operator==(const PropertyScore&, const PropertyScore&) = default;
};

/// Spread of a metric over repeated runs (seeds or random draws).
struct RunSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stdev = 0.0;
  /// Absent when no reference was given or the statistic is undefined.
  std::optional<double> t_stat;
  std::optional<double> p_value;
  /// Zero spread: t is infinite (or undefined when mean equals the reference).
  bool degenerate = false;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct PropertyReport {
  std::string label;
  std::map<Property, PropertyScore> per_property;
  /// Defined only when every member property is present.
  std::map<PropertyGroup, double> groups;
  /// Defined only when all six properties are present.
  std::optional<double> all;
  std::optional<RunSummary> runs;

  /// Recomputes `groups` and `all` as unweighted means of the member
  /// properties' accuracies.
  void recompute_aggregates();

  std::optional<double> accuracy(Property property) const;
  std::optional<double> group(PropertyGroup group) const;

  friend bool operator==(const PropertyReport&, const PropertyReport&) = default;
};

/// Builds a report directly from accuracies (fractions), with aggregates.
PropertyReport report_from_accuracies(std::string label,
                                      const std::map<Property, double>& accuracies);

enum class ReportFormat { Markdown, Csv };

std::optional<ReportFormat> parse_report_format(std::string_view text);

/// Column order of every rendered table.
std::vector<std::string> report_columns();

/// A fraction rendered as a percentage with one decimal, e.g. 0.758 -> "75.8".
std::string format_percent(double fraction);

/// The ten value cells of a report row in report_columns() order; undefined
/// values render as "-".
std::vector<std::string> report_cells(const PropertyReport& report);

/// Renders pre-formatted cells as a markdown table or RFC 4180 CSV.
std::string render_cells(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, ReportFormat format);

/// One header plus one row per report. Columns: label, P-A, P-S, P-F, A-S,
/// A-F, S-F, P-*, A-*, S-*, All. Undefined cells render as "-".
std::string render_report(std::span<const PropertyReport> reports, ReportFormat format);
std::string render_report(const PropertyReport& report, ReportFormat format);

/// Machine-readable persistence used to aggregate runs later.
void save_report(std::ostream& out, const PropertyReport& report);
/// Throws ReportError on malformed input.
PropertyReport load_report(std::istream& in);

}  // namespace hierprobe
