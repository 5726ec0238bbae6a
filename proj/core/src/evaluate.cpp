#include "hierprobe/evaluate.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "hierprobe/stats.hpp"
#include "rng.hpp"

namespace hierprobe {

Judgment judge_ternary(const EmbeddingTable& table, const Ternary& ternary,
                       DistanceMethod method) {
  const auto kn = concept_key(ternary.taxonomy_id, ternary.n.id);
  const auto kl = concept_key(ternary.taxonomy_id, ternary.l.id);
  const auto kr = concept_key(ternary.taxonomy_id, ternary.r.id);
  const auto vn = table.find(kn);
  if (!vn) return {Verdict::MissingKey, kn};
  const auto vl = table.find(kl);
  if (!vl) return {Verdict::MissingKey, kl};
  const auto vr = table.find(kr);
  if (!vr) return {Verdict::MissingKey, kr};
  const bool correct = distance(*vn, *vl, method) < distance(*vn, *vr, method);
  return {correct ? Verdict::Correct : Verdict::Incorrect, {}};
}

namespace {

constexpr std::size_t kNoFailure = std::numeric_limits<std::size_t>::max();

struct Counts {
  std::uint64_t correct = 0;
  std::uint64_t judged = 0;
  std::uint64_t skipped = 0;
};

using PropertyCounts = std::array<Counts, kAllProperties.size()>;

std::size_t slot(Property p) { return static_cast<std::size_t>(p); }

struct WorkerResult {
  PropertyCounts counts{};
  std::size_t failure_index = kNoFailure;
  std::exception_ptr failure;
};

/// Splits [0, size) into contiguous chunks, one per worker, and returns the
/// per-worker results in chunk order. A worker stops at its first failure.
std::vector<WorkerResult> run_partitioned(
    std::size_t size, std::size_t threads,
    const std::function<void(std::size_t, PropertyCounts&)>& body) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(size, 1));
  std::vector<WorkerResult> results(threads);
  auto work = [&](std::size_t w) {
    const std::size_t begin = size * w / threads;
    const std::size_t end = size * (w + 1) / threads;
    for (std::size_t i = begin; i < end; ++i) {
      try {
        body(i, results[w].counts);
      } catch (...) {
        results[w].failure_index = i;
        results[w].failure = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    work(0);
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
  pool.clear();
  return results;
}

/// Merges worker counts, rethrowing the failure with the lowest input index.
PropertyCounts merge(const std::vector<WorkerResult>& results) {
  const WorkerResult* first_failure = nullptr;
  for (const auto& r : results) {
    if (r.failure && (!first_failure || r.failure_index < first_failure->failure_index)) {
      first_failure = &r;
    }
  }
  if (first_failure) std::rethrow_exception(first_failure->failure);
  PropertyCounts total{};
  for (const auto& r : results) {
    for (std::size_t k = 0; k < total.size(); ++k) {
      total[k].correct += r.counts[k].correct;
      total[k].judged += r.counts[k].judged;
      total[k].skipped += r.counts[k].skipped;
    }
  }
  return total;
}

std::vector<const Ternary*> flatten(std::span<const ProbeDataset> datasets) {
  if (datasets.empty()) throw EmptyDatasetError("EmptyDataset: no probe datasets given");
  std::vector<const Ternary*> items;
  for (const auto& ds : datasets) {
    if (ds.ternaries.empty()) {
      throw EmptyDatasetError("EmptyDataset: " + std::string(to_string(ds.property)) + "." +
                              std::string(to_string(ds.split)) + " has no ternaries");
    }
    for (const auto& t : ds.ternaries) items.push_back(&t);
  }
  return items;
}

PropertyReport to_report(const PropertyCounts& counts, std::span<const ProbeDataset> datasets) {
  PropertyReport report;
  for (const auto& ds : datasets) {
    const auto& c = counts[slot(ds.property)];
    if (c.judged == 0) {
      throw EmptyDatasetError("EmptyDataset: nothing judged for " +
                              std::string(to_string(ds.property)));
    }
    report.per_property[ds.property] = PropertyScore::from_counts(c.correct, c.judged, c.skipped);
  }
  report.recompute_aggregates();
  return report;
}

/// Uniform (0, 1) distance for an unordered key pair, fixed within a run.
double random_pair_distance(std::uint64_t run_seed, std::string_view a, std::string_view b) {
  auto ha = detail::fnv1a(a);
  auto hb = detail::fnv1a(b);
  if (hb < ha) std::swap(ha, hb);
  return detail::unit_open(detail::SeedBuilder(run_seed).add(ha).add(hb).value());
}

}  // namespace

PropertyReport evaluate(std::span<const ProbeDataset> datasets, const EmbeddingTable& table,
                        const EvalOptions& options) {
  const auto items = flatten(datasets);
  auto results = run_partitioned(items.size(), options.threads,
                                 [&](std::size_t i, PropertyCounts& counts) {
                                   const Ternary& t = *items[i];
                                   auto& c = counts[slot(t.property)];
                                   const auto j = judge_ternary(table, t, options.method);
                                   if (j.verdict == Verdict::MissingKey) {
                                     if (options.missing == MissingPolicy::Error) {
                                       throw MissingKeyError(j.missing_key);
                                     }
                                     ++c.skipped;
                                     return;
                                   }
                                   ++c.judged;
                                   if (j.verdict == Verdict::Correct) ++c.correct;
                                 });
  auto report = to_report(merge(results), datasets);
  report.label = table.provenance();
  return report;
}

PropertyReport random_baseline(std::span<const ProbeDataset> datasets,
                               const BaselineOptions& options) {
  if (options.runs == 0) throw ConfigError("random baseline needs at least one run");
  const auto items = flatten(datasets);

  PropertyCounts total{};
  std::vector<double> run_all;
  for (std::size_t run = 0; run < options.runs; ++run) {
    const auto run_seed = detail::SeedBuilder(options.seed).add("random-baseline").add(run).value();
    auto results = run_partitioned(items.size(), options.threads,
                                   [&](std::size_t i, PropertyCounts& counts) {
                                     const Ternary& t = *items[i];
                                     const auto kn = concept_key(t.taxonomy_id, t.n.id);
                                     const auto kl = concept_key(t.taxonomy_id, t.l.id);
                                     const auto kr = concept_key(t.taxonomy_id, t.r.id);
                                     auto& c = counts[slot(t.property)];
                                     ++c.judged;
                                     if (random_pair_distance(run_seed, kn, kl) <
                                         random_pair_distance(run_seed, kn, kr)) {
                                       ++c.correct;
                                     }
                                   });
    const auto counts = merge(results);
    const auto run_report = to_report(counts, datasets);
    if (run_report.all) run_all.push_back(*run_report.all);
    for (std::size_t k = 0; k < total.size(); ++k) {
      total[k].correct += counts[k].correct;
      total[k].judged += counts[k].judged;
    }
  }

  auto report = to_report(total, datasets);
  report.label = "Random";
  if (run_all.size() >= 2) report.runs = summarize_sample(run_all, 0.5);
  return report;
}

}  // namespace hierprobe
