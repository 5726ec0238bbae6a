#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "hierprobe/embeddings.hpp"
#include "hierprobe/probes.hpp"
#include "hierprobe/report.hpp"

namespace hierprobe {

enum class Verdict { Correct, Incorrect, MissingKey };

struct Judgment {
  Verdict verdict = Verdict::Incorrect;
  /// Set for Verdict::MissingKey.
  std::string missing_key;
};

/// Correct iff d(n, l) < d(n, r) strictly; a tie is Incorrect. The first absent
/// key (in n, l, r order) yields MissingKey. DistanceError propagates.
Judgment judge_ternary(const EmbeddingTable& table, const Ternary& ternary,
                       DistanceMethod method);

enum class MissingPolicy { Error, Skip };

struct EvalOptions {
  DistanceMethod method = DistanceMethod::Cosine;
  MissingPolicy missing = MissingPolicy::Error;
  /// Worker threads; results do not depend on this.
  std::size_t threads = 1;
};

/// Per-property accuracy over all datasets (datasets sharing a property are
/// pooled), plus group and All aggregates where defined.
///
/// Throws EmptyDatasetError when no datasets are given, a dataset has no
/// ternaries, or a property ends up with nothing judged; MissingKeyError under
/// MissingPolicy::Error (for the first missing key in input order).
PropertyReport evaluate(std::span<const ProbeDataset> datasets, const EmbeddingTable& table,
                        const EvalOptions& options = {});

struct BaselineOptions {
  std::size_t runs = 10;
  std::uint64_t seed = 42;
  std::size_t threads = 1;
};

/// Random symmetric distances: each run draws an independent uniform (0, 1)
/// distance for every unordered pair of concept keys and judges every ternary
/// against it. Accuracy per property is the mean over runs; `runs` summarizes
/// the All score across runs (t-test against chance when runs >= 2).
PropertyReport random_baseline(std::span<const ProbeDataset> datasets,
                               const BaselineOptions& options = {});

}  // namespace hierprobe
