#include "hierprobe/probe_io.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <tuple>

#include <json.hpp>

namespace hierprobe {

namespace {

using ojson = nlohmann::ordered_json;

ojson concept_json(const ConceptNode& node) {
  return ojson{{"id", node.id}, {"name", node.name}, {"definition", node.definition}};
}

[[noreturn]] void malformed(std::size_t line, const std::string& detail) {
  throw ProbeFormatError(ProbeFormatErrorKind::MalformedRecord, line, detail);
}

const ojson& field(const ojson& obj, const char* name, std::size_t line) {
  auto it = obj.find(name);
  if (it == obj.end()) malformed(line, std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const ojson& obj, const char* name, std::size_t line) {
  const auto& v = field(obj, name, line);
  if (!v.is_string()) malformed(line, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t unsigned_field(const ojson& obj, const char* name, std::size_t line) {
  const auto& v = field(obj, name, line);
  if (!v.is_number_unsigned()) {
    malformed(line, std::string("field '") + name + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

ConceptNode concept_from_json(const ojson& obj, const char* name, std::size_t line) {
  const auto& c = field(obj, name, line);
  if (!c.is_object()) malformed(line, std::string("field '") + name + "' must be an object");
  return ConceptNode{string_field(c, "id", line), string_field(c, "name", line),
                     string_field(c, "definition", line)};
}

ojson parse_line(const std::string& text, std::size_t line) {
  try {
    auto obj = ojson::parse(text);
    if (!obj.is_object()) malformed(line, "record is not an object");
    return obj;
  } catch (const ojson::parse_error& e) {
    malformed(line, e.what());
  }
}

}  // namespace

void write_probes(std::ostream& out, const ProbeDataset& dataset) {
  ojson header;
  header["format_version"] = kProbeFormatVersion;
  header["property"] = to_string(dataset.property);
  header["split"] = to_string(dataset.split);
  header["trainable"] = dataset.trainable();
  header["seed"] = dataset.provenance.seed;
  if (dataset.provenance.max_per_node) {
    header["max_per_node"] = *dataset.provenance.max_per_node;
  } else {
    header["max_per_node"] = nullptr;
  }
  header["source_digest"] = dataset.provenance.source_digest;
  out << header.dump() << '\n';

  for (const auto& t : dataset.ternaries) {
    ojson rec;
    rec["taxonomy_id"] = t.taxonomy_id;
    rec["n"] = concept_json(t.n);
    rec["l"] = concept_json(t.l);
    rec["r"] = concept_json(t.r);
    rec["dist_nl"] = t.dist_nl;
    rec["dist_nr"] = t.dist_nr;
    out << rec.dump() << '\n';
  }
}

ProbeDataset read_probes(std::istream& in) {
  ProbeDataset ds;
  std::string text;
  std::size_t line = 0;
  bool have_header = false;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;

  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto obj = parse_line(text, line);

    if (!have_header) {
      if (unsigned_field(obj, "format_version", line) != kProbeFormatVersion) {
        malformed(line, "unsupported format_version");
      }
      const auto prop = parse_property(string_field(obj, "property", line));
      if (!prop) malformed(line, "unknown property");
      const auto split = parse_split(string_field(obj, "split", line));
      if (!split) malformed(line, "unknown split");
      const auto& trainable = field(obj, "trainable", line);
      if (!trainable.is_boolean()) malformed(line, "field 'trainable' must be a boolean");
      if (trainable.get<bool>() != is_trainable(*prop)) {
        throw ProbeFormatError(ProbeFormatErrorKind::PropertyMismatch, line,
                               "trainable flag contradicts property");
      }
      ds.property = *prop;
      ds.split = *split;
      ds.provenance.seed = unsigned_field(obj, "seed", line);
      const auto& cap = field(obj, "max_per_node", line);
      if (!cap.is_null()) ds.provenance.max_per_node = unsigned_field(obj, "max_per_node", line);
      ds.provenance.source_digest = string_field(obj, "source_digest", line);
      have_header = true;
      continue;
    }

    Ternary t;
    t.property = ds.property;
    t.taxonomy_id = string_field(obj, "taxonomy_id", line);
    t.n = concept_from_json(obj, "n", line);
    t.l = concept_from_json(obj, "l", line);
    t.r = concept_from_json(obj, "r", line);
    t.dist_nl = unsigned_field(obj, "dist_nl", line);
    t.dist_nr = unsigned_field(obj, "dist_nr", line);

    if (t.n.id == t.l.id || t.n.id == t.r.id || t.l.id == t.r.id) {
      throw ProbeFormatError(ProbeFormatErrorKind::PropertyMismatch, line,
                             "n, l and r must be distinct");
    }
    if (!distances_valid(t.property, t.dist_nl, t.dist_nr)) {
      throw ProbeFormatError(
          ProbeFormatErrorKind::PropertyMismatch, line,
          "distances (" + std::to_string(t.dist_nl) + ", " + std::to_string(t.dist_nr) +
              ") do not satisfy " + std::string(to_string(t.property)));
    }
    if (!seen.emplace(t.taxonomy_id, t.n.id, t.l.id, t.r.id).second) {
      throw ProbeFormatError(ProbeFormatErrorKind::DuplicateTernary, line,
                             concept_key(t.taxonomy_id, t.n.id));
    }
    ds.ternaries.push_back(std::move(t));
  }
  if (!have_header) malformed(line == 0 ? 1 : line, "missing header record");
  return ds;
}

}  // namespace hierprobe
