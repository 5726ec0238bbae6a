#include "hierprobe/stats.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace hierprobe {

double students_t_two_sided_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

RunSummary summarize_sample(std::span<const double> values, std::optional<double> reference) {
  if (values.size() < 2) {
    throw InsufficientRunsError("InsufficientRuns: need at least 2 runs, got " +
                                std::to_string(values.size()));
  }
  RunSummary s;
  s.n = values.size();
  const auto n = static_cast<double>(s.n);
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(ss / (n - 1.0));

  // Identical inputs can leave rounding residue in the deviation.
  bool all_equal = true;
  for (double v : values) all_equal = all_equal && v == values.front();
  if (all_equal) s.stdev = 0.0;

  if (!reference) return s;
  if (s.stdev == 0.0) {
    s.degenerate = true;
    if (s.mean == *reference) {
      s.t_stat = 0.0;
      s.p_value = 1.0;
    } else {
      s.t_stat = s.mean > *reference ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
      s.p_value = 0.0;
    }
    return s;
  }
  s.t_stat = (s.mean - *reference) / (s.stdev / std::sqrt(n));
  s.p_value = students_t_two_sided_p(*s.t_stat, n - 1.0);
  return s;
}

RunAggregate aggregate_runs(std::span<const PropertyReport> reports,
                            std::optional<double> reference) {
  if (reports.size() < 2) {
    throw InsufficientRunsError("InsufficientRuns: need at least 2 reports, got " +
                                std::to_string(reports.size()));
  }
  const auto& first = reports.front();
  for (const auto& r : reports) {
    std::string diff;
    for (auto p : kAllProperties) {
      const bool a = first.per_property.contains(p);
      const bool b = r.per_property.contains(p);
      if (a != b) {
        diff += std::string(b ? " +" : " -") + std::string(to_string(p));
      }
    }
    if (!diff.empty()) {
      throw ReportError("report '" + r.label + "' covers different properties than '" +
                        first.label + "':" + diff);
    }
  }

  RunAggregate agg;
  agg.runs = reports.size();
  std::vector<double> column;
  for (const auto& [p, score] : first.per_property) {
    column.clear();
    for (const auto& r : reports) column.push_back(r.per_property.at(p).accuracy);
    agg.per_property[p] = summarize_sample(column, reference);
  }
  for (const auto& [g, value] : first.groups) {
    column.clear();
    for (const auto& r : reports) column.push_back(r.groups.at(g));
    agg.groups[g] = summarize_sample(column, reference);
  }
  if (first.all) {
    column.clear();
    for (const auto& r : reports) column.push_back(*r.all);
    agg.all = summarize_sample(column, reference);
  }
  return agg;
}

namespace {

PropertyReport row_from(const RunAggregate& agg, std::string label, double RunSummary::*field) {
  PropertyReport r;
  r.label = std::move(label);
  for (const auto& [p, s] : agg.per_property) r.per_property[p] = PropertyScore{0, 0, 0, s.*field};
  for (const auto& [g, s] : agg.groups) r.groups[g] = s.*field;
  if (agg.all) r.all = (*agg.all).*field;
  return r;
}

}  // namespace

PropertyReport RunAggregate::mean_report(std::string label) const {
  auto r = row_from(*this, std::move(label), &RunSummary::mean);
  if (all) r.runs = *all;
  return r;
}

PropertyReport RunAggregate::stdev_report(std::string label) const {
  return row_from(*this, std::move(label), &RunSummary::stdev);
}

std::string render_run_table(std::span<const PropertyReport> runs, const RunAggregate& aggregate,
                             ReportFormat format) {
  const bool tested = aggregate.all ? aggregate.all->p_value.has_value()
                                    : !aggregate.per_property.empty() &&
                                          aggregate.per_property.begin()->second.p_value.has_value();

  std::vector<std::string> header{"model"};
  const auto cols = report_columns();
  header.insert(header.end(), cols.begin(), cols.end());
  if (tested) header.emplace_back("t-test");

  std::vector<std::vector<std::string>> rows;
  auto add = [&](const PropertyReport& r, std::string marker) {
    std::vector<std::string> cells{r.label};
    auto values = report_cells(r);
    cells.insert(cells.end(), values.begin(), values.end());
    if (tested) cells.push_back(std::move(marker));
    rows.push_back(std::move(cells));
  };
  for (const auto& r : runs) add(r, "");

  std::string mark;
  if (tested && aggregate.all && aggregate.all->p_value && *aggregate.all->p_value > 0.05) {
    mark = "*";
  }
  add(aggregate.mean_report(), mark);
  add(aggregate.stdev_report(), "");

  if (tested) {
    auto p_cell = [](const std::optional<RunSummary>& s) {
      if (!s || !s->p_value) return std::string("-");
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3g", *s->p_value);
      return std::string(buf);
    };
    std::vector<std::string> cells{"p-value"};
    for (auto p : kAllProperties) {
      auto it = aggregate.per_property.find(p);
      cells.push_back(p_cell(it == aggregate.per_property.end() ? std::nullopt
                                                                : std::optional(it->second)));
    }
    for (auto g : kAllGroups) {
      auto it = aggregate.groups.find(g);
      cells.push_back(p_cell(it == aggregate.groups.end() ? std::nullopt : std::optional(it->second)));
    }
    cells.push_back(p_cell(aggregate.all));
    cells.emplace_back("");
    rows.push_back(std::move(cells));
  }
  return render_cells(header, rows, format);
}

}  // namespace hierprobe
