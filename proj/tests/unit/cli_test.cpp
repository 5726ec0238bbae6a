#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

namespace hierprobe {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("hierprobe-cli-") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_taxonomies_file(const std::vector<Taxonomy>& taxes, const std::string& name) {
    std::ofstream out(path(name));
    hierprobe::write_taxonomies(out, taxes);
    return path(name);
  }

  std::string write_table(const EmbeddingTable& table, const std::string& name) {
    std::ofstream out(path(name));
    write_embeddings(out, table);
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"evaluate", "--probes", "x", "--embeddings", "y", "--distance", "manhattan"}).code,
            cli::kUsage);
  EXPECT_EQ(run_cli({"generate", "--taxonomies", "x", "--out", "y", "--property", "Q-Q"}).code,
            cli::kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, GenerateWritesAllFilesAndIsReproducible) {
  const auto taxes = testing::random_taxonomies(3, 20);
  const auto tax_file = write_taxonomies_file(taxes, "tax.jsonl");
  const auto r1 = run_cli({"generate", "--taxonomies", tax_file, "--out", path("a"), "--max-per-node", "5"});
  ASSERT_EQ(r1.code, cli::kOk) << r1.err;
  const auto r2 = run_cli({"generate", "--taxonomies", tax_file, "--out", path("b"), "--max-per-node", "5"});
  ASSERT_EQ(r2.code, cli::kOk) << r2.err;
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_NE(r1.err.find("config: command=generate"), std::string::npos);

  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(path("a"))) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(fs::path(path("b")) / entry.path().filename()));
  }
  EXPECT_EQ(files, 18u);
  EXPECT_EQ(std::count(r1.out.begin(), r1.out.end(), '\n'), 6);
  EXPECT_EQ(r1.out.rfind("P-A\ttrain=", 0), 0u);

  const auto r3 = run_cli({"--seed", "7", "generate", "--taxonomies", tax_file, "--out", path("c"),
                           "--max-per-node", "5"});
  ASSERT_EQ(r3.code, cli::kOk);
  EXPECT_NE(slurp(fs::path(path("a")) / "P-F.train.probes"), slurp(fs::path(path("c")) / "P-F.train.probes"));
}

TEST_F(CliTest, GenerateDataErrors) {
  {
    std::ofstream bad(path("bad.jsonl"));
    bad << "{\"taxonomy_id\": \"x\", \"nodes\": [}\n";
  }
  EXPECT_EQ(run_cli({"generate", "--taxonomies", path("bad.jsonl"), "--out", path("o")}).code,
            cli::kDataError);
  EXPECT_EQ(run_cli({"generate", "--taxonomies", path("missing.jsonl"), "--out", path("o")}).code,
            cli::kDataError);

  const auto two = write_taxonomies_file(testing::random_taxonomies(4, 2), "two.jsonl");
  EXPECT_EQ(run_cli({"generate", "--taxonomies", two, "--out", path("o")}).code, cli::kInfeasible);
  EXPECT_EQ(run_cli({"generate", "--taxonomies", two, "--out", path("o"), "--split-ratios", "0.5,0.5"}).code,
            cli::kUsage);
}

TEST_F(CliTest, EvaluateAndMissingKeys) {
  const auto taxes = testing::random_taxonomies(5, 10);
  const auto tax_file = write_taxonomies_file(taxes, "tax.jsonl");
  ASSERT_EQ(run_cli({"generate", "--taxonomies", tax_file, "--out", path("p")}).code, cli::kOk);
  const auto table = write_table(testing::path_indicator_table(taxes), "paths.tsv");

  const auto r = run_cli({"evaluate", "--probes", path("p") + "/P-*.test.probes", "--embeddings", table,
                          "--distance", "l2", "--format", "csv", "--save", path("paths.json")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, "model,P-A,P-S,P-F,A-S,A-F,S-F,P-*,A-*,S-*,All\n"
                   "paths,100.0,100.0,100.0,-,-,-,100.0,-,-,-\n");
  EXPECT_TRUE(fs::exists(path("paths.json")));

  EmbeddingTable partial(4, "partial");
  const auto full = testing::gaussian_table(taxes, 4, 1);
  const auto keys = full.keys();
  for (std::size_t i = 1; i < keys.size(); ++i) partial.insert(keys[i], *full.find(keys[i]));
  const auto partial_file = write_table(partial, "partial.tsv");
  const std::vector<std::string> base{"evaluate", "--probes", path("p") + "/*.probes", "--embeddings",
                                      partial_file};
  EXPECT_EQ(run_cli(base).code, cli::kMissingKey);
  auto skip = base;
  skip.insert(skip.end(), {"--missing", "skip"});
  const auto skipped = run_cli(skip);
  EXPECT_EQ(skipped.code, cli::kOk) << skipped.err;

  EXPECT_EQ(run_cli({"evaluate", "--probes", path("nothing-*.probes"), "--embeddings", table}).code,
            cli::kDataError);
}

TEST_F(CliTest, BaselineAndReport) {
  const auto taxes = testing::random_taxonomies(6, 20);
  const auto tax_file = write_taxonomies_file(taxes, "tax.jsonl");
  ASSERT_EQ(run_cli({"generate", "--taxonomies", tax_file, "--out", path("p")}).code, cli::kOk);

  const auto b1 = run_cli({"baseline", "--probes", path("p") + "/*.probes", "--save", path("base.json")});
  ASSERT_EQ(b1.code, cli::kOk) << b1.err;
  const auto b2 = run_cli({"baseline", "--probes", path("p") + "/*.probes", "--threads", "4"});
  EXPECT_EQ(b1.out, b2.out);
  EXPECT_NE(b1.out.find("| Random |"), std::string::npos);

  // Single input passes through, even with a reference.
  const auto single = run_cli({"report", "--inputs", path("base.json"), "--reference", "50"});
  ASSERT_EQ(single.code, cli::kOk);
  EXPECT_EQ(single.out, b1.out);

  for (int seed = 1; seed <= 5; ++seed) {
    const auto table = write_table(testing::hierarchical_table(taxes, 16, 0.5, seed),
                                   "enc" + std::to_string(seed) + ".tsv");
    const auto r = run_cli({"evaluate", "--probes", path("p") + "/*.test.probes", "--embeddings", table,
                            "--save", path("run" + std::to_string(seed) + ".json")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
  }
  const auto merged = run_cli({"report", "--inputs", path("run*.json"), "--reference", "54.2"});
  ASSERT_EQ(merged.code, cli::kOk) << merged.err;
  EXPECT_NE(merged.out.find("| t-test |"), std::string::npos);
  EXPECT_NE(merged.out.find("| mean |"), std::string::npos);
  EXPECT_NE(merged.out.find("| stdev |"), std::string::npos);
  EXPECT_NE(merged.out.find("| enc5 |"), std::string::npos);

  // Mixed property sets cannot be aggregated.
  const auto table = write_table(testing::gaussian_table(taxes, 4, 9), "g.tsv");
  ASSERT_EQ(run_cli({"evaluate", "--probes", path("p") + "/P-A.test.probes", "--embeddings", table,
                     "--save", path("run_pa.json")}).code,
            cli::kOk);
  EXPECT_EQ(run_cli({"report", "--inputs", path("run*.json")}).code, cli::kDataError);
}

}  // namespace
}  // namespace hierprobe
