#include "hierprobe/errors.hpp"

#include <utility>

namespace hierprobe {

std::string_view to_string(TaxonomyErrorKind kind) {
  switch (kind) {
    case TaxonomyErrorKind::MalformedRecord: return "MalformedRecord";
    case TaxonomyErrorKind::DuplicateTaxonomyId: return "DuplicateTaxonomyId";
    case TaxonomyErrorKind::EmptyId: return "EmptyId";
    case TaxonomyErrorKind::DuplicateNodeId: return "DuplicateNodeId";
    case TaxonomyErrorKind::EmptyName: return "EmptyName";
    case TaxonomyErrorKind::UnknownNodeInEdge: return "UnknownNodeInEdge";
    case TaxonomyErrorKind::ChildHasTwoParents: return "ChildHasTwoParents";
    case TaxonomyErrorKind::CycleDetected: return "CycleDetected";
    case TaxonomyErrorKind::MultipleRoots: return "MultipleRoots";
    case TaxonomyErrorKind::NoRoot: return "NoRoot";
    case TaxonomyErrorKind::Disconnected: return "Disconnected";
    case TaxonomyErrorKind::UnknownNode: return "UnknownNode";
  }
  return "Unknown";
}

namespace {

std::string taxonomy_message(TaxonomyErrorKind kind, const std::string& tax,
                             const std::string& node, std::size_t line) {
  std::string msg(to_string(kind));
  msg += " (taxonomy '" + tax + "'";
  if (!node.empty()) msg += ", node '" + node + "'";
  if (line != 0) msg += ", line " + std::to_string(line);
  msg += ")";
  return msg;
}

std::string_view to_string(ProbeFormatErrorKind kind) {
  switch (kind) {
    case ProbeFormatErrorKind::MalformedRecord: return "MalformedRecord";
    case ProbeFormatErrorKind::PropertyMismatch: return "PropertyMismatch";
    case ProbeFormatErrorKind::DuplicateTernary: return "DuplicateTernary";
  }
  return "Unknown";
}

std::string_view to_string(EmbeddingErrorKind kind) {
  switch (kind) {
    case EmbeddingErrorKind::MalformedHeader: return "MalformedHeader";
    case EmbeddingErrorKind::MalformedRow: return "MalformedRow";
    case EmbeddingErrorKind::DimensionMismatch: return "DimensionMismatch";
    case EmbeddingErrorKind::NonFiniteValue: return "NonFiniteValue";
    case EmbeddingErrorKind::DuplicateKey: return "DuplicateKey";
    case EmbeddingErrorKind::EmptyTable: return "EmptyTable";
  }
  return "Unknown";
}

}  // namespace

TaxonomyError::TaxonomyError(TaxonomyErrorKind kind, std::string taxonomy_id,
                             std::string node_id, std::size_t line)
    : Error(taxonomy_message(kind, taxonomy_id, node_id, line)),
      kind_(kind),
      taxonomy_id_(std::move(taxonomy_id)),
      node_id_(std::move(node_id)),
      line_(line) {}

ProbeFormatError::ProbeFormatError(ProbeFormatErrorKind kind, std::size_t line,
                                   const std::string& detail)
    : Error(std::string(to_string(kind)) + " at line " + std::to_string(line) + ": " + detail),
      kind_(kind),
      line_(line) {}

EmbeddingError::EmbeddingError(EmbeddingErrorKind kind, std::string key, std::size_t line)
    : Error(std::string(to_string(kind)) + (key.empty() ? "" : " for key '" + key + "'") +
            (line != 0 ? " at line " + std::to_string(line) : std::string())),
      kind_(kind),
      key_(std::move(key)),
      line_(line) {}

MissingKeyError::MissingKeyError(std::string key)
    : Error("MissingKey: no embedding for '" + key + "'"), key_(std::move(key)) {}

}  // namespace hierprobe
