// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "silca/common/error.h"
#include "silca/workbench/bench.h"
#include "silca/workbench/dataset.h"

namespace silca::workbench {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("silca_wb_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path File(const std::string& name, const std::string& body) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << body;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(CsvTest, EmptyFile) {
  TempDir dir;
  auto col = LoadCsvColumn(dir.File("e.csv", ""), "0", ValueType::kInteger, false);
  EXPECT_TRUE(col.values.empty());
  EXPECT_TRUE(col.skipped_rows.empty());
}

TEST(CsvTest, SingleValue) {
  TempDir dir;
  auto col = LoadCsvColumn(dir.File("one.csv", "42\n"), "0", ValueType::kInteger, false);
  EXPECT_EQ(col.values, std::vector<double>{42});
}

TEST(CsvTest, MalformedRowIsSkippedAndReported) {
  TempDir dir;
  auto p = dir.File("m.csv", "id,price\n1,901.00\n2,abc\n3,\"1,499.49\"\n4,2098.99\n");
  auto col = LoadCsvColumn(p, "price", ValueType::kReal);
  EXPECT_EQ(col.values, (std::vector<double>{901.00, 2098.99}));
  EXPECT_EQ(col.skipped_rows, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(col.rows, 4u);
  auto three = LoadCsvColumn(dir.File("t.csv", "v\n5\nx\n7\n"), "v", ValueType::kInteger);
  EXPECT_EQ(three.values.size(), 2u);
  EXPECT_EQ(three.skipped_rows, std::vector<std::size_t>{2});
}

TEST(CsvTest, IntegerColumnsRejectFractions) {
  TempDir dir;
  auto col = LoadCsvColumn(dir.File("i.csv", "a,b\n1,2.5\n3,4\n"), "b", ValueType::kInteger);
  EXPECT_EQ(col.values, std::vector<double>{4});
  EXPECT_EQ(col.skipped_rows, std::vector<std::size_t>{1});
}

TEST(CsvTest, MissingFileOrColumn) {
  TempDir dir;
  EXPECT_THROW(LoadCsvColumn(dir.path() / "nope.csv", "a", ValueType::kReal), UsageError);
  EXPECT_THROW(LoadCsvColumn(dir.File("h.csv", "a,b\n1,2\n"), "c", ValueType::kReal),
               UsageError);
}

TEST(StatsTest, ConstantAndViolations) {
  auto s = ComputeStats({3, 3, 3, 3});
  EXPECT_EQ(s.stddev, 0);
  EXPECT_EQ(s.mean, 3);
  DatasetSpec spec{"x", 3, ValueType::kInteger, 1, 10, 5, 1, 0};
  auto v = VerifyDatasetStats({5, 4, 11, 5}, spec);
  EXPECT_FALSE(v.pass);
  ASSERT_TRUE(v.violating_index.has_value());
  EXPECT_EQ(*v.violating_index, 2u);
  EXPECT_TRUE(VerifyDatasetStats({4, 5, 6}, spec).pass);
}

TEST(SynthTest, ConstantSpec) {
  DatasetSpec spec{"c", 50, ValueType::kReal, 7.5, 7.5, 7.5, 0, 2};
  auto v = SynthDataset(spec, 1);
  EXPECT_EQ(v, std::vector<double>(50, 7.5));
}

TEST(SynthTest, DeterministicPerSeed) {
  const auto& spec = FindDataset("hg38");
  EXPECT_EQ(SynthDataset(spec, 5, 1000), SynthDataset(spec, 5, 1000));
  EXPECT_NE(SynthDataset(spec, 5, 1000), SynthDataset(spec, 6, 1000));
}

TEST(SynthTest, InfeasibleSpecRejected) {
  DatasetSpec spec{"bad", 5, ValueType::kReal, 0, 1, 2, 0.1, 2};
  EXPECT_THROW(SynthDataset(spec, 1), ParameterError);
}

TEST(SynthTest, Covid19MeanWithinFivePercent) {
  const auto& spec = FindDataset("Covid19");
  auto v = SynthDataset(spec, 11);
  ASSERT_EQ(v.size(), 341u);
  auto verdict = VerifyDatasetStats(v, spec, {0.05, std::nullopt, true});
  EXPECT_TRUE(verdict.pass) << (verdict.failures.empty() ? "" : verdict.failures[0]);
  for (double x : v) EXPECT_EQ(x, std::floor(x));
}

TEST(SynthTest, PSizeMeanWithinTwoPercent) {
  const auto& spec = FindDataset("p_size");
  auto v = SynthDataset(spec, 12);
  EXPECT_TRUE(VerifyDatasetStats(v, spec, {0.02}).pass);
}

TEST(SynthTest, BitcoinMeanWithinFivePercent) {
  const auto& spec = FindDataset("bitcoin");
  EXPECT_TRUE(VerifyDatasetStats(SynthDataset(spec, 13), spec, {0.05}).pass);
}

TEST(SynthTest, AllStandardSpecsMatchMeanAndRange) {
  for (const auto& spec : StandardDatasets()) {
    auto v = SynthDataset(spec, 21, std::min<std::uint64_t>(spec.n, 200000));
    auto verdict = VerifyDatasetStats(v, spec, {0.02});
    EXPECT_TRUE(verdict.pass) << spec.name << ": "
                              << (verdict.failures.empty() ? "" : verdict.failures[0]);
  }
}

BenchOptions MockOptions() {
  BenchOptions o;
  o.backend = BackendKind::kMock;
  o.warmup = 2;
  o.phi_iterations = 100;
  o.buffer_len = 4;
  return o;
}

TEST(BenchTest, SingleValueMockAllSchemesExact) {
  auto recs = RunBenchmark("one", {1234}, ValueType::kInteger, MockOptions());
  ASSERT_EQ(recs.size(), 4u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.status, "ok") << r.scheme;
    EXPECT_EQ(r.n, 1u);
    EXPECT_TRUE(r.exact) << r.scheme;
    EXPECT_EQ(r.max_abs_error, 0.0);
    EXPECT_EQ(r.backend, "mock");
  }
}

TEST(BenchTest, RealDatasetSkipsSilcaz) {
  const auto& spec = FindDataset("p_retailprice");
  auto recs = RunBenchmark(spec.name, SynthDataset(spec, 3, 300), spec.type, MockOptions());
  for (const auto& r : recs) {
    if (r.scheme == "silcaz") {
      EXPECT_EQ(r.status.rfind("skipped", 0), 0u);
    } else {
      EXPECT_EQ(r.status, "ok") << r.scheme << " " << r.status;
      EXPECT_EQ(r.n, 300u);
      // Rache+ rounds to 2^-10; the others are exact rationals on the mock.
      if (r.scheme != "rache") {
        EXPECT_TRUE(r.exact) << r.scheme;
      }
      EXPECT_GT(r.offline_seconds + (r.scheme == "vanilla" ? 1 : 0), 0.0);
    }
  }
}

TEST(BenchTest, OfflineTimeIsSeparatedFromOnline) {
  auto opts = MockOptions();
  opts.schemes = {"silcaz"};
  opts.buffer_len = 2;
  const auto& spec = FindDataset("hg38");
  auto recs = RunBenchmark(spec.name, SynthDataset(spec, 3, 500), spec.type, opts);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].status, "ok");
  EXPECT_EQ(recs[0].buffer_len, 2u);
  EXPECT_GT(recs[0].offline_seconds, 0.0);
  EXPECT_GT(recs[0].total_online_seconds, 0.0);
  EXPECT_LE(recs[0].median_online_seconds, recs[0].total_online_seconds);
}

TEST(BenchTest, LatticeIntegersAreExact) {
  BenchOptions o;
  o.schemes = {"silcaz", "rache", "vanilla"};
  o.warmup = 2;
  o.slice = 200;
  o.integer_params = he::DefaultBgvParams(65537, 1024);
  const auto& spec = FindDataset("hg38");
  auto recs = RunBenchmark(spec.name, SynthDataset(spec, 4, 2000), spec.type, o);
  for (const auto& r : recs) {
    EXPECT_EQ(r.status, "ok") << r.scheme;
    EXPECT_TRUE(r.exact) << r.scheme;
    EXPECT_EQ(r.n, 200u);
    EXPECT_EQ(r.backend, "bgv");
  }
}

TEST(BenchTest, UnknownSchemeIsUsageError) {
  auto o = MockOptions();
  o.schemes = {"paillier"};
  EXPECT_THROW(RunBenchmark("x", {1}, ValueType::kInteger, o), UsageError);
}

BenchRecord Sample() {
  BenchRecord r;
  r.scheme = "silca";
  r.dataset = "p_retailprice";
  r.backend = "ckks";
  r.n = 10000;
  r.total_online_seconds = 0.123456789012345;
  r.median_online_seconds = 1.25e-5;
  r.offline_seconds = 3.5;
  r.fallbacks = 2;
  r.max_abs_error = 1e-7;
  r.max_rel_error = 3.3e-11;
  r.exact = false;
  r.workers = 8;
  r.buffer_len = 77;
  r.phi = 123.456;
  r.status = "ok";
  return r;
}

TEST(ReportTest, CsvHasStableHeaderAndOneRowPerRecord) {
  std::ostringstream a, b;
  WriteReportCsv(a, {Sample()});
  WriteReportCsv(b, {Sample()});
  EXPECT_EQ(a.str(), b.str());
  const std::string text = a.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), ReportCsvHeader());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(ReportCsvHeader(),
            "scheme,dataset,backend,n,total_online_s,median_online_s,offline_s,"
            "fallbacks,max_abs_error,max_rel_error,exact,workers,buffer_len,phi,status");
}

TEST(ReportTest, JsonRoundtrips) {
  BenchRecord other = Sample();
  other.scheme = "rache";
  other.status = "correctness-failure: expected 1, got \"2\"";
  const std::vector<BenchRecord> recs = {Sample(), other};
  EXPECT_EQ(ParseReportJson(ReportJson(recs)), recs);
}

TEST(ReportTest, EmitWritesFiles) {
  TempDir dir;
  EmitReport({Sample()}, dir.path() / "r.json", "json");
  std::ifstream in(dir.path() / "r.json");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ParseReportJson(ss.str()), std::vector<BenchRecord>{Sample()});
  EXPECT_THROW(EmitReport({}, dir.path() / "x.csv", "csv"), UsageError);
  EXPECT_THROW(EmitReport({Sample()}, dir.path() / "x.txt", "xml"), UsageError);
  EXPECT_THROW(EmitReport({Sample()}, dir.path() / "no" / "such" / "x.csv", "csv"), Error);
}

}  // namespace
}  // namespace silca::workbench
