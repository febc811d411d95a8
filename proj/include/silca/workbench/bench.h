// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_WORKBENCH_BENCH_H_
#define SILCA_WORKBENCH_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "silca/he/params.h"
#include "silca/workbench/dataset.h"

namespace silca::workbench {

enum class BackendKind { kLattice, kMock };

struct BenchOptions {
  std::vector<std::string> schemes = {"vanilla", "rache", "silca", "silcaz"};
  BackendKind backend = BackendKind::kLattice;
  std::size_t slice = 10000;  // 0 = every value
  unsigned workers = 1;       // cache fill and refill threads
  int frac_digits = 10;       // Rache+ binary fraction digits
  std::size_t warmup = 16;
  int phi_iterations = 100;
  // Cache banks are sized by the planner and then capped to this footprint;
  // values are processed in rounds that fit the cap, refilling in between.
  std::uint64_t bank_budget_bytes = 512ULL << 20;
  std::optional<std::size_t> buffer_len;  // skip the planner
  std::optional<he::SchemeParams> integer_params;
  std::optional<he::SchemeParams> real_params;
};

struct BenchRecord {
  std::string scheme;
  std::string dataset;
  std::string backend;
  std::uint64_t n = 0;
  double total_online_seconds = 0;
  double median_online_seconds = 0;
  double offline_seconds = 0;
  std::uint64_t fallbacks = 0;
  double max_abs_error = 0;
  double max_rel_error = 0;
  bool exact = false;
  unsigned workers = 1;
  std::uint64_t buffer_len = 0;
  double phi = 0;
  std::string status = "ok";

  bool operator==(const BenchRecord&) const = default;
};

// Runs each requested scheme over the values (one scheme at a time) and
// verifies every ciphertext by decryption. Online latency covers only the
// encrypt calls; cache fills, refill drains and zero-pool top-ups are
// accounted as offline time.
std::vector<BenchRecord> RunBenchmark(const std::string& dataset,
                                      const std::vector<double>& values,
                                      ValueType type, const BenchOptions& options);

// Fixed column order; one header line.
std::string ReportCsvHeader();
void WriteReportCsv(std::ostream& out, const std::vector<BenchRecord>& records);
std::string ReportJson(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> ParseReportJson(const std::string& text);
// format: "csv" or "json".
void EmitReport(const std::vector<BenchRecord>& records,
                const std::filesystem::path& path, const std::string& format);

}  // namespace silca::workbench

#endif  // SILCA_WORKBENCH_BENCH_H_
