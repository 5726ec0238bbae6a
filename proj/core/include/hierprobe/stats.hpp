#pragma once

#include <map>
#include <optional>
#include <span>

#include "hierprobe/report.hpp"

namespace hierprobe {

/// Two-sided p-value of a t statistic under Student's t with `df` degrees of
/// freedom.
double students_t_two_sided_p(double t, double df);

/// Sample mean and (n-1) standard deviation of `values`; with a reference,
/// also the one-sample t statistic (mean - reference) / (stdev / sqrt(n)) and
/// its two-sided p-value on n-1 degrees of freedom. Zero spread yields a
/// degenerate summary: t = +/-infinity and p = 0, or t = 0 and p = 1 when the
/// mean equals the reference. Throws InsufficientRunsError for n < 2.
RunSummary summarize_sample(std::span<const double> values,
                            std::optional<double> reference = std::nullopt);

struct RunAggregate {
  std::size_t runs = 0;
  std::map<Property, RunSummary> per_property;
  std::map<PropertyGroup, RunSummary> groups;
  std::optional<RunSummary> all;

  /// Mean row as a report (accuracies are per-column means).
  PropertyReport mean_report(std::string label = "mean") const;
  /// Standard deviations laid out like a report row.
  PropertyReport stdev_report(std::string label = "stdev") const;
};

/// Column-wise summary over repeated runs. All reports must cover the same
/// properties (ReportError otherwise); at least two are required
/// (InsufficientRunsError). `reference` is in accuracy units (fractions).
RunAggregate aggregate_runs(std::span<const PropertyReport> reports,
                            std::optional<double> reference = std::nullopt);

/// Per-run rows followed by "mean" and "stdev" rows. When the aggregate
/// carries t-tests, a "p-value" row is added along with a trailing "t-test"
/// column that marks the mean row with "*" when the All p-value exceeds 0.05.
std::string render_run_table(std::span<const PropertyReport> runs, const RunAggregate& aggregate,
                             ReportFormat format);

}  // namespace hierprobe
