#include "hierprobe/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace hierprobe {

PropertyScore PropertyScore::from_counts(std::uint64_t correct, std::uint64_t total,
                                         std::uint64_t skipped) {
  PropertyScore s{correct, total, skipped, 0.0};
  s.accuracy = total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  return s;
}

void PropertyReport::recompute_aggregates() {
  groups.clear();
  all.reset();
  for (auto g : kAllGroups) {
    const auto members = members_of(g);
    double sum = 0.0;
    bool complete = true;
    for (auto p : members) {
      auto it = per_property.find(p);
      if (it == per_property.end()) {
        complete = false;
        break;
      }
      sum += it->second.accuracy;
    }
    if (complete) groups[g] = sum / static_cast<double>(members.size());
  }
  if (per_property.size() == kAllProperties.size()) {
    double sum = 0.0;
    for (auto p : kAllProperties) sum += per_property.at(p).accuracy;
    all = sum / static_cast<double>(kAllProperties.size());
  }
}

std::optional<double> PropertyReport::accuracy(Property property) const {
  auto it = per_property.find(property);
  if (it == per_property.end()) return std::nullopt;
  return it->second.accuracy;
}

std::optional<double> PropertyReport::group(PropertyGroup g) const {
  auto it = groups.find(g);
  if (it == groups.end()) return std::nullopt;
  return it->second;
}

PropertyReport report_from_accuracies(std::string label,
                                      const std::map<Property, double>& accuracies) {
  PropertyReport report;
  report.label = std::move(label);
  for (const auto& [p, acc] : accuracies) report.per_property[p] = PropertyScore{0, 0, 0, acc};
  report.recompute_aggregates();
  return report;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "markdown") return ReportFormat::Markdown;
  if (text == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

std::vector<std::string> report_columns() {
  std::vector<std::string> cols;
  for (auto p : kAllProperties) cols.emplace_back(to_string(p));
  for (auto g : kAllGroups) cols.emplace_back(to_string(g));
  cols.emplace_back("All");
  return cols;
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
  return buf;
}

std::vector<std::string> report_cells(const PropertyReport& report) {
  std::vector<std::string> cells;
  auto cell = [](std::optional<double> v) { return v ? format_percent(*v) : std::string("-"); };
  for (auto p : kAllProperties) cells.push_back(cell(report.accuracy(p)));
  for (auto g : kAllGroups) cells.push_back(cell(report.group(g)));
  cells.push_back(cell(report.all));
  return cells;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_row(const std::vector<std::string>& cells, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
  } else {
    out = "|";
    for (const auto& c : cells) out += " " + c + " |";
  }
  return out + "\n";
}

}  // namespace

std::string render_cells(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, ReportFormat format) {
  std::string out = join_row(header, format);
  if (format == ReportFormat::Markdown) {
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
    out += "\n";
  }
  for (const auto& row : rows) out += join_row(row, format);
  return out;
}

std::string render_report(std::span<const PropertyReport> reports, ReportFormat format) {
  std::vector<std::string> header{"model"};
  const auto cols = report_columns();
  header.insert(header.end(), cols.begin(), cols.end());

  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    std::vector<std::string> cells{r.label};
    auto values = report_cells(r);
    cells.insert(cells.end(), values.begin(), values.end());
    rows.push_back(std::move(cells));
  }
  return render_cells(header, rows, format);
}

std::string render_report(const PropertyReport& report, ReportFormat format) {
  return render_report(std::span<const PropertyReport>(&report, 1), format);
}

namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

std::optional<double> read_optional_number(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number()) throw ReportError("expected a number or null");
  return j.get<double>();
}

}  // namespace

void save_report(std::ostream& out, const PropertyReport& report) {
  json j;
  j["label"] = report.label;
  json props = json::object();
  for (const auto& [p, s] : report.per_property) {
    props[std::string(to_string(p))] = {{"correct", s.correct},
                                        {"total", s.total},
                                        {"skipped", s.skipped},
                                        {"accuracy", s.accuracy}};
  }
  j["per_property"] = std::move(props);
  json groups = json::object();
  for (const auto& [g, v] : report.groups) groups[std::string(to_string(g))] = v;
  j["groups"] = std::move(groups);
  j["all"] = optional_number(report.all);
  if (report.runs) {
    const auto& r = *report.runs;
    j["runs"] = {{"n", r.n},
                 {"mean", r.mean},
                 {"stdev", r.stdev},
                 {"t_stat", optional_number(r.t_stat)},
                 {"p_value", optional_number(r.p_value)},
                 {"degenerate", r.degenerate}};
  } else {
    j["runs"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

PropertyReport load_report(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    const auto j = json::parse(text);
    PropertyReport report;
    report.label = j.at("label").get<std::string>();
    for (const auto& [name, s] : j.at("per_property").items()) {
      const auto p = parse_property(name);
      if (!p) throw ReportError("unknown property '" + name + "'");
      const double acc = s.at("accuracy").get<double>();
      if (!(acc >= 0.0 && acc <= 1.0)) throw ReportError("accuracy out of range for " + name);
      report.per_property[*p] = PropertyScore{s.at("correct").get<std::uint64_t>(),
                                              s.at("total").get<std::uint64_t>(),
                                              s.at("skipped").get<std::uint64_t>(), acc};
    }
    report.recompute_aggregates();
    const auto& runs = j.at("runs");
    if (!runs.is_null()) {
      RunSummary r;
      r.n = runs.at("n").get<std::size_t>();
      r.mean = runs.at("mean").get<double>();
      r.stdev = runs.at("stdev").get<double>();
      r.t_stat = read_optional_number(runs.at("t_stat"));
      r.p_value = read_optional_number(runs.at("p_value"));
      r.degenerate = runs.at("degenerate").get<bool>();
      report.runs = r;
    }
    return report;
  } catch (const json::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace hierprobe
