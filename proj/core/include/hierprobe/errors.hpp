#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hierprobe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural problem in a taxonomy record.
enum class TaxonomyErrorKind {
  MalformedRecord,
  DuplicateTaxonomyId,
  EmptyId,
  DuplicateNodeId,
  EmptyName,
  UnknownNodeInEdge,
  ChildHasTwoParents,
  CycleDetected,
  MultipleRoots,
  NoRoot,
  Disconnected,
  UnknownNode,
};

std::string_view to_string(TaxonomyErrorKind kind);

class TaxonomyError : public Error {
 public:
  TaxonomyError(TaxonomyErrorKind kind, std::string taxonomy_id, std::string node_id,
                std::size_t line = 0);

  TaxonomyErrorKind kind() const noexcept { return kind_; }
  const std::string& taxonomy_id() const noexcept { return taxonomy_id_; }
  const std::string& node_id() const noexcept { return node_id_; }
  /// 1-based input line, 0 when not tied to a file.
  std::size_t line() const noexcept { return line_; }

 private:
  TaxonomyErrorKind kind_;
  std::string taxonomy_id_;
  std::string node_id_;
  std::size_t line_;
};

enum class ProbeFormatErrorKind { MalformedRecord, PropertyMismatch, DuplicateTernary };

class ProbeFormatError : public Error {
 public:
  ProbeFormatError(ProbeFormatErrorKind kind, std::size_t line, const std::string& detail);

  ProbeFormatErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ProbeFormatErrorKind kind_;
  std::size_t line_;
};

/// Generation parameters that cannot be satisfied (bad ratios, too few taxonomies).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InsufficientTaxonomies : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

enum class EmbeddingErrorKind {
  MalformedHeader,
  MalformedRow,
  DimensionMismatch,
  NonFiniteValue,
  DuplicateKey,
  EmptyTable,
};

class EmbeddingError : public Error {
 public:
  EmbeddingError(EmbeddingErrorKind kind, std::string key, std::size_t line = 0);

  EmbeddingErrorKind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  EmbeddingErrorKind kind_;
  std::string key_;
  std::size_t line_;
};

/// Raised by distance computations on invalid vectors.
class DistanceError : public Error {
 public:
  enum class Kind { ZeroVector, DimensionMismatch };
  DistanceError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class MissingKeyError : public Error {
 public:
  explicit MissingKeyError(std::string key);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

class InsufficientRunsError : public Error {
 public:
  using Error::Error;
};

/// Malformed persisted report, or reports that cannot be merged.
class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace hierprobe
