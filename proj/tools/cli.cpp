#include "cli.hpp"

#include <glob.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "hierprobe/hierprobe.hpp"

namespace hierprobe::cli {

namespace fs = std::filesystem;

namespace {

/// Reported to the user and mapped to an exit code.
struct CommandFailure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandFailure{kDataError, "cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw CommandFailure{kDataError, "sha256 digest failed"};
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return "sha256:" + hex.str();
}

/// Sorted, de-duplicated matches of every pattern; a pattern without
/// wildcards must name an existing file.
std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<std::string> files;
  for (const auto& pattern : patterns) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) files.emplace_back(g.gl_pathv[i]);
    }
    ::globfree(&g);
    if (rc != 0) throw CommandFailure{kDataError, "no files match '" + pattern + "'"};
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

void write_atomically(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CommandFailure{kDataError, "cannot write '" + tmp.string() + "'"};
    out << contents;
    if (!out.flush()) throw CommandFailure{kDataError, "write failed for '" + tmp.string() + "'"};
  }
  fs::rename(tmp, path);
}

std::vector<ProbeDataset> load_probe_files(const std::vector<std::string>& patterns,
                                           spdlog::logger& log) {
  std::vector<ProbeDataset> datasets;
  for (const auto& file : expand_globs(patterns)) {
    std::ifstream in(file);
    if (!in) throw CommandFailure{kDataError, "cannot open '" + file + "'"};
    try {
      datasets.push_back(read_probes(in));
    } catch (const ProbeFormatError& e) {
      throw CommandFailure{kDataError, file + ": " + e.what()};
    }
    log.debug("loaded {} ({} ternaries)", file, datasets.back().ternaries.size());
  }
  return datasets;
}

std::vector<double> parse_ratios(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CommandFailure{kUsage, "invalid --split-ratios '" + text + "'"};
    }
  }
  if (values.size() != 3) throw CommandFailure{kUsage, "--split-ratios needs three values"};
  return values;
}

void emit(std::ostream& out, const std::string& text) { out << text << std::flush; }

void save_if_requested(const std::string& path, const PropertyReport& report) {
  if (path.empty()) return;
  std::ostringstream buf;
  save_report(buf, report);
  write_atomically(path, buf.str());
}

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::string log_level;
};

struct GenerateOptions {
  std::string taxonomies;
  std::string property = "all";
  std::string out_dir;
  std::optional<std::size_t> max_per_node;
  std::string split_ratios = "0.7,0.15,0.15";
};

struct EvaluateOptions {
  std::vector<std::string> probes;
  std::string embeddings;
  std::string distance = "cos";
  std::string missing = "error";
  std::string format = "markdown";
  std::string label;
  std::string save;
  std::size_t threads = 0;
};

struct BaselineCliOptions {
  std::vector<std::string> probes;
  std::size_t runs = 10;
  std::string format = "markdown";
  std::string save;
  std::size_t threads = 0;
};

struct ReportOptions {
  std::vector<std::string> inputs;
  std::optional<double> reference;
  std::string format = "markdown";
};

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_generate(const GlobalOptions& global, const GenerateOptions& opt, std::ostream& out,
                 spdlog::logger& log) {
  const auto ratios = parse_ratios(opt.split_ratios);
  GenConfig config;
  config.seed = global.seed;
  config.max_per_node = opt.max_per_node;
  config.ratios = SplitRatios{ratios[0], ratios[1], ratios[2]};
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw CommandFailure{kUsage, e.what()};
  }

  std::vector<Property> properties;
  if (opt.property == "all") {
    properties.assign(kAllProperties.begin(), kAllProperties.end());
  } else if (auto p = parse_property(opt.property)) {
    properties.push_back(*p);
  } else {
    throw CommandFailure{kUsage, "unknown --property '" + opt.property + "'"};
  }

  log.info("config: command=generate taxonomies={} property={} out={} seed={} max_per_node={} "
           "split_ratios={}",
           opt.taxonomies, opt.property, opt.out_dir, config.seed,
           opt.max_per_node ? std::to_string(*opt.max_per_node) : "none", opt.split_ratios);

  const auto bytes = read_file(opt.taxonomies);
  const auto digest = sha256_hex(bytes);
  std::vector<Taxonomy> taxonomies;
  try {
    std::istringstream in(bytes);
    ParseOptions parse_options;
    parse_options.on_warning = [&](std::string_view msg) { log.warn("{}", msg); };
    taxonomies = parse_taxonomies(in, parse_options);
  } catch (const TaxonomyError& e) {
    throw CommandFailure{kDataError, opt.taxonomies + ": " + e.what()};
  }
  log.info("parsed {} taxonomies ({})", taxonomies.size(), digest);

  fs::create_directories(opt.out_dir);
  for (auto property : properties) {
    std::array<ProbeDataset, 3> splits;
    try {
      splits = build_splits(taxonomies, property, config, digest);
    } catch (const InsufficientTaxonomies& e) {
      throw CommandFailure{kInfeasible, e.what()};
    }
    out << to_string(property);
    for (const auto& ds : splits) {
      std::ostringstream buf;
      write_probes(buf, ds);
      const auto name =
          std::string(to_string(property)) + "." + std::string(to_string(ds.split)) + ".probes";
      write_atomically(fs::path(opt.out_dir) / name, buf.str());
      out << '\t' << to_string(ds.split) << '=' << ds.ternaries.size();
    }
    out << '\n';
  }
  return kOk;
}

int cmd_evaluate(const GlobalOptions&, const EvaluateOptions& opt, std::ostream& out,
                 spdlog::logger& log) {
  EvalOptions eval;
  eval.method = *parse_distance_method(opt.distance);
  eval.missing = opt.missing == "skip" ? MissingPolicy::Skip : MissingPolicy::Error;
  eval.threads = resolve_threads(opt.threads);
  const auto format = *parse_report_format(opt.format);

  const auto label = opt.label.empty() ? fs::path(opt.embeddings).stem().string() : opt.label;
  log.info("config: command=evaluate probes={} embeddings={} distance={} missing={} format={} "
           "threads={} label={}",
           fmt::join(opt.probes, ","), opt.embeddings, opt.distance, opt.missing, opt.format,
           eval.threads, label);

  const auto datasets = load_probe_files(opt.probes, log);
  std::ifstream in(opt.embeddings);
  if (!in) throw CommandFailure{kDataError, "cannot open '" + opt.embeddings + "'"};
  std::optional<EmbeddingTable> table;
  try {
    table.emplace(load_embeddings(in, label));
  } catch (const EmbeddingError& e) {
    throw CommandFailure{kDataError, opt.embeddings + ": " + e.what()};
  }
  log.info("loaded {} vectors of dimension {}", table->size(), table->dimension());

  PropertyReport report;
  try {
    report = evaluate(datasets, *table, eval);
  } catch (const MissingKeyError& e) {
    throw CommandFailure{kMissingKey, e.what()};
  } catch (const DistanceError& e) {
    throw CommandFailure{kDataError, e.what()};
  } catch (const EmptyDatasetError& e) {
    throw CommandFailure{kDataError, e.what()};
  }
  for (const auto& [p, score] : report.per_property) {
    if (score.skipped > 0) log.warn("{}: skipped {} ternaries with missing keys", to_string(p), score.skipped);
  }
  emit(out, render_report(report, format));
  save_if_requested(opt.save, report);
  return kOk;
}

int cmd_baseline(const GlobalOptions& global, const BaselineCliOptions& opt, std::ostream& out,
                 spdlog::logger& log) {
  BaselineOptions base;
  base.runs = opt.runs;
  base.seed = global.seed;
  base.threads = resolve_threads(opt.threads);
  const auto format = *parse_report_format(opt.format);
  log.info("config: command=baseline probes={} runs={} seed={} threads={} format={}",
           fmt::join(opt.probes, ","), base.runs, base.seed, base.threads, opt.format);

  const auto datasets = load_probe_files(opt.probes, log);
  PropertyReport report;
  try {
    report = random_baseline(datasets, base);
  } catch (const EmptyDatasetError& e) {
    throw CommandFailure{kDataError, e.what()};
  }
  emit(out, render_report(report, format));
  save_if_requested(opt.save, report);
  return kOk;
}

int cmd_report(const GlobalOptions&, const ReportOptions& opt, std::ostream& out,
               spdlog::logger& log) {
  const auto format = *parse_report_format(opt.format);
  log.info("config: command=report inputs={} reference={} format={}", fmt::join(opt.inputs, ","),
           opt.reference ? std::to_string(*opt.reference) : "none", opt.format);

  std::vector<PropertyReport> reports;
  for (const auto& file : expand_globs(opt.inputs)) {
    std::ifstream in(file);
    if (!in) throw CommandFailure{kDataError, "cannot open '" + file + "'"};
    try {
      reports.push_back(load_report(in));
    } catch (const ReportError& e) {
      throw CommandFailure{kDataError, file + ": " + e.what()};
    }
    if (reports.back().label.empty()) reports.back().label = fs::path(file).stem().string();
  }

  if (reports.size() == 1) {
    if (opt.reference) log.warn("a t-test needs at least two reports; showing the single report");
    emit(out, render_report(reports.front(), format));
    return kOk;
  }
  std::optional<double> reference;
  if (opt.reference) reference = *opt.reference / 100.0;
  try {
    const auto aggregate = aggregate_runs(reports, reference);
    emit(out, render_run_table(reports, aggregate, format));
  } catch (const ReportError& e) {
    throw CommandFailure{kDataError, e.what()};
  }
  return kOk;
}

std::optional<spdlog::level::level_enum> parse_level(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto level = spdlog::level::from_str(text);
  if (level == spdlog::level::off && text != "off") return std::nullopt;
  return level;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  spdlog::logger log("hierprobe", sink);
  log.set_pattern("[%l] %v");
  log.set_level(spdlog::level::info);

  CLI::App app{"Hierarchy-property probes: generate, evaluate, baseline, report", "hierprobe"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for sampling, splits and baselines")
      ->capture_default_str();
  app.add_option("--log-level", global.log_level,
                 "trace|debug|info|warn|error|off (overrides HIERPROBE_LOG)");

  const std::vector<std::string> property_names{"P-A", "P-S", "P-F", "A-S", "A-F", "S-F", "all"};
  const std::vector<std::string> formats{"markdown", "csv"};

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate probe datasets from taxonomies");
  generate->add_option("--taxonomies", gen.taxonomies, "Taxonomy file")->required();
  generate->add_option("--property", gen.property, "Property or 'all'")
      ->check(CLI::IsMember(property_names))
      ->capture_default_str();
  generate->add_option("--out", gen.out_dir, "Output directory")->required();
  generate->add_option("--max-per-node", gen.max_per_node, "Cap per (node, property)")
      ->check(CLI::PositiveNumber);
  generate->add_option("--split-ratios", gen.split_ratios, "train,dev,test ratios")
      ->capture_default_str();

  EvaluateOptions ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score an embedding table against probes");
  evaluate_cmd->add_option("--probes", ev.probes, "Probe file glob(s)")->required();
  evaluate_cmd->add_option("--embeddings", ev.embeddings, "Embedding table")->required();
  evaluate_cmd->add_option("--distance", ev.distance, "cos|l2")
      ->check(CLI::IsMember({"cos", "l2"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--missing", ev.missing, "error|skip")
      ->check(CLI::IsMember({"error", "skip"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--format", ev.format, "markdown|csv")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  evaluate_cmd->add_option("--label", ev.label, "Row label (default: embedding file stem)");
  evaluate_cmd->add_option("--save", ev.save, "Also write the report as JSON");
  evaluate_cmd->add_option("--threads", ev.threads, "Worker threads (0 = all cores)");

  BaselineCliOptions bl;
  auto* baseline_cmd = app.add_subcommand("baseline", "Random symmetric-distance baseline");
  baseline_cmd->add_option("--probes", bl.probes, "Probe file glob(s)")->required();
  baseline_cmd->add_option("--runs", bl.runs, "Number of random runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  baseline_cmd->add_option("--format", bl.format, "markdown|csv")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  baseline_cmd->add_option("--save", bl.save, "Also write the report as JSON");
  baseline_cmd->add_option("--threads", bl.threads, "Worker threads (0 = all cores)");

  ReportOptions rp;
  auto* report_cmd = app.add_subcommand("report", "Merge saved reports across runs");
  report_cmd->add_option("--inputs", rp.inputs, "Saved report glob(s)")->required();
  report_cmd->add_option("--reference", rp.reference, "Reference accuracy in percent for the t-test");
  report_cmd->add_option("--format", rp.format, "markdown|csv")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  std::string level_text = global.log_level;
  if (level_text.empty()) {
    if (const char* env = std::getenv("HIERPROBE_LOG")) level_text = env;
  }
  if (!level_text.empty()) {
    const auto level = parse_level(level_text);
    if (!level) {
      err << "error: unknown log level '" << level_text << "'\n";
      return kUsage;
    }
    log.set_level(*level);
  }

  try {
    if (generate->parsed()) return cmd_generate(global, gen, out, log);
    if (evaluate_cmd->parsed()) return cmd_evaluate(global, ev, out, log);
    if (baseline_cmd->parsed()) return cmd_baseline(global, bl, out, log);
    if (report_cmd->parsed()) return cmd_report(global, rp, out, log);
  } catch (const CommandFailure& f) {
    log.error("{}", f.message);
    return f.code;
  } catch (const fs::filesystem_error& e) {
    log.error("{}", e.what());
    return kDataError;
  } catch (const Error& e) {
    log.error("{}", e.what());
    return kDataError;
  }
  return kUsage;
}

}  // namespace hierprobe::cli
