#include "hierprobe/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace hierprobe {

std::string_view to_string(DistanceMethod method) {
  return method == DistanceMethod::Cosine ? "cos" : "l2";
}

std::optional<DistanceMethod> parse_distance_method(std::string_view text) {
  if (text == "cos") return DistanceMethod::Cosine;
  if (text == "l2") return DistanceMethod::Euclidean;
  return std::nullopt;
}

double distance(std::span<const double> u, std::span<const double> v, DistanceMethod method) {
  if (u.size() != v.size()) {
    throw DistanceError(DistanceError::Kind::DimensionMismatch,
                        "DimensionMismatch: " + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()));
  }
  if (method == DistanceMethod::Euclidean) {
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = u[i] - v[i];
      sum += d * d;
    }
    return std::sqrt(sum);
  }

  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) {
    throw DistanceError(DistanceError::Kind::ZeroVector, "ZeroVector: cosine distance undefined");
  }
  if (std::equal(u.begin(), u.end(), v.begin())) return 0.0;
  return std::clamp(1.0 - dot / std::sqrt(uu * vv), 0.0, 2.0);
}

EmbeddingTable::EmbeddingTable(std::size_t dimension, std::string provenance)
    : dimension_(dimension), provenance_(std::move(provenance)) {
  if (dimension_ == 0) throw EmbeddingError(EmbeddingErrorKind::MalformedHeader, "");
}

void EmbeddingTable::insert(std::string key, std::span<const double> values) {
  const auto slash = key.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == key.size()) {
    throw EmbeddingError(EmbeddingErrorKind::MalformedRow, key);
  }
  if (values.size() != dimension_) throw EmbeddingError(EmbeddingErrorKind::DimensionMismatch, key);
  for (double x : values) {
    if (!std::isfinite(x)) throw EmbeddingError(EmbeddingErrorKind::NonFiniteValue, key);
  }
  if (index_.contains(key)) throw EmbeddingError(EmbeddingErrorKind::DuplicateKey, key);
  index_.emplace(std::move(key), data_.size() / dimension_);
  data_.insert(data_.end(), values.begin(), values.end());
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_).subspan(it->second * dimension_, dimension_);
}

std::vector<std::string> EmbeddingTable::keys() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [key, row] : index_) out.push_back(key);
  return out;
}

EmbeddingTable EmbeddingTable::scaled(double factor) const {
  EmbeddingTable copy = *this;
  for (auto& x : copy.data_) x *= factor;
  return copy;
}

namespace {

std::string_view trim_cr(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  return s;
}

}  // namespace

EmbeddingTable load_embeddings(std::istream& in, std::string provenance) {
  std::string text;
  std::size_t line = 0;

  // Header.
  std::size_t dimension = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto s = trim_cr(text);
    if (s.empty()) continue;
    const auto tab = s.find('\t');
    if (tab == std::string_view::npos || s.substr(0, tab) != "dim") {
      throw EmbeddingError(EmbeddingErrorKind::MalformedHeader, "", line);
    }
    const auto num = s.substr(tab + 1);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), dimension);
    if (ec != std::errc{} || ptr != num.data() + num.size() || dimension == 0) {
      throw EmbeddingError(EmbeddingErrorKind::MalformedHeader, "", line);
    }
    break;
  }
  if (dimension == 0) throw EmbeddingError(EmbeddingErrorKind::EmptyTable, "", line);

  EmbeddingTable table(dimension, std::move(provenance));
  std::vector<double> values;
  while (std::getline(in, text)) {
    ++line;
    const auto s = trim_cr(text);
    if (s.empty()) continue;
    const auto tab = s.find('\t');
    if (tab == std::string_view::npos) throw EmbeddingError(EmbeddingErrorKind::MalformedRow, "", line);
    std::string key(s.substr(0, tab));

    values.clear();
    const char* p = s.data() + tab + 1;
    const char* end = s.data() + s.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double x = 0.0;
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec == std::errc::result_out_of_range) {
        throw EmbeddingError(EmbeddingErrorKind::NonFiniteValue, key, line);
      }
      if (ec != std::errc{} || (next != end && *next != ' ')) {
        throw EmbeddingError(EmbeddingErrorKind::MalformedRow, key, line);
      }
      values.push_back(x);
      p = next;
    }
    try {
      table.insert(std::move(key), values);
    } catch (const EmbeddingError& e) {
      throw EmbeddingError(e.kind(), e.key(), line);
    }
  }
  if (table.empty()) throw EmbeddingError(EmbeddingErrorKind::EmptyTable, "", line);
  return table;
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << "dim\t" << table.dimension() << '\n';
  char buf[64];
  for (const auto& key : table.keys()) {
    out << key << '\t';
    const auto row = *table.find(key);
    for (std::size_t i = 0; i < row.size(); ++i) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), row[i],
                                     std::chars_format::scientific, 16);
      if (i) out << ' ';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace hierprobe
