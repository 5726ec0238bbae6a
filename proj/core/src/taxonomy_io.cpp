#include "hierprobe/taxonomy_io.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <string>

#include <json.hpp>

namespace hierprobe {

namespace {

using nlohmann::json;

void warn(const ParseOptions& options, const std::string& message) {
  if (options.on_warning) options.on_warning(message);
}

void warn_unknown_fields(const json& obj, std::initializer_list<std::string_view> known,
                         const std::string& where, const ParseOptions& options) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) warn(options, where + ": ignoring unknown field '" + key + "'");
  }
}

TaxonomyRecord record_from_json(const json& obj, std::size_t line, const ParseOptions& options) {
  const std::string where = "line " + std::to_string(line);
  auto malformed = [&](const std::string& tax_id) {
    return TaxonomyError(TaxonomyErrorKind::MalformedRecord, tax_id, "", line);
  };
  if (!obj.is_object() || !obj.contains("taxonomy_id") || !obj["taxonomy_id"].is_string()) {
    throw malformed("");
  }
  TaxonomyRecord record;
  record.taxonomy_id = obj["taxonomy_id"].get<std::string>();
  if (!obj.contains("nodes") || !obj["nodes"].is_array() || !obj.contains("edges") ||
      !obj["edges"].is_array()) {
    throw malformed(record.taxonomy_id);
  }
  warn_unknown_fields(obj, {"taxonomy_id", "nodes", "edges"}, where, options);

  for (const auto& n : obj["nodes"]) {
    if (!n.is_object() || !n.contains("id") || !n["id"].is_string() || !n.contains("name") ||
        !n["name"].is_string()) {
      throw malformed(record.taxonomy_id);
    }
    warn_unknown_fields(n, {"id", "name", "definition"}, where, options);
    ConceptNode node{n["id"].get<std::string>(), n["name"].get<std::string>(), ""};
    if (n.contains("definition")) {
      const auto& def = n["definition"];
      if (def.is_string()) {
        node.definition = def.get<std::string>();
      } else if (!def.is_null()) {
        throw malformed(record.taxonomy_id);
      }
    }
    record.nodes.push_back(std::move(node));
  }
  for (const auto& e : obj["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw malformed(record.taxonomy_id);
    }
    record.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return record;
}

}  // namespace

std::vector<TaxonomyRecord> read_taxonomy_records(std::istream& in, const ParseOptions& options) {
  std::vector<TaxonomyRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error&) {
      throw TaxonomyError(TaxonomyErrorKind::MalformedRecord, "", "", line_no);
    }
    records.push_back(record_from_json(obj, line_no, options));
  }
  return records;
}

std::vector<Taxonomy> parse_taxonomies(std::istream& in, const ParseOptions& options) {
  auto records = read_taxonomy_records(in, options);
  std::vector<Taxonomy> out;
  out.reserve(records.size());
  std::set<std::string> seen;
  for (auto& record : records) {
    if (!seen.insert(record.taxonomy_id).second) {
      throw TaxonomyError(TaxonomyErrorKind::DuplicateTaxonomyId, record.taxonomy_id, "");
    }
    out.push_back(Taxonomy::build(std::move(record)));
  }
  return out;
}

void write_taxonomies(std::ostream& out, std::span<const Taxonomy> taxonomies) {
  for (const auto& tax : taxonomies) {
    const auto record = tax.to_record();
    nlohmann::ordered_json obj;
    obj["taxonomy_id"] = record.taxonomy_id;
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : record.nodes) {
      nodes.push_back({{"id", n.id}, {"name", n.name}, {"definition", n.definition}});
    }
    obj["nodes"] = std::move(nodes);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [child, parent] : record.edges) edges.push_back({child, parent});
    obj["edges"] = std::move(edges);
    out << obj.dump() << '\n';
  }
}

}  // namespace hierprobe
