// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_WORKBENCH_DATASET_H_
#define SILCA_WORKBENCH_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace silca::workbench {

enum class ValueType { kInteger, kReal };

struct DatasetSpec {
  std::string name;
  std::uint64_t n = 0;
  ValueType type = ValueType::kInteger;
  double min = 0;
  double max = 0;
  double mean = 0;
  double stddev = 0;
  int decimals = 0;  // rounding applied to synthesized reals
};

// The seven columns used throughout the evaluation (cardinality, range and
// first two moments as published).
const std::vector<DatasetSpec>& StandardDatasets();
// Case-insensitive lookup; throws UsageError for unknown names.
const DatasetSpec& FindDataset(const std::string& name);

// Truncated normal on [min, max] whose location and scale are solved so the
// truncated mean matches spec.mean and the standard deviation approaches
// spec.stddev (capped where the bounds make it unreachable). Jittered
// stratified sampling, shuffled; deterministic per seed.
std::vector<double> SynthDataset(const DatasetSpec& spec, std::uint64_t seed,
                                 std::optional<std::uint64_t> count = {});

struct CsvColumn {
  std::vector<double> values;
  std::vector<std::size_t> skipped_rows;  // 1-based data row numbers
  std::size_t rows = 0;                   // data rows seen
};

// `column` is a header name, or a 0-based index when has_header is false
// (an index is also accepted with a header). Malformed or non-integral
// (for kInteger) cells are skipped and reported.
CsvColumn LoadCsvColumn(const std::filesystem::path& path, const std::string& column,
                        ValueType type, bool has_header = true);

struct DatasetStats {
  std::size_t n = 0;
  double min = 0;
  double max = 0;
  double mean = 0;
  double stddev = 0;  // sample standard deviation (n - 1)
};

DatasetStats ComputeStats(const std::vector<double>& values);

struct StatsTolerance {
  double mean_rel = 0.05;
  std::optional<double> stddev_rel;  // not enforced unless set
  bool check_count = false;
};

struct StatsVerdict {
  bool pass = false;
  DatasetStats measured;
  std::optional<std::size_t> violating_index;  // first value outside [min, max]
  std::vector<std::string> failures;
};

StatsVerdict VerifyDatasetStats(const std::vector<double>& values,
                                const DatasetSpec& spec,
                                const StatsTolerance& tol = {});

}  // namespace silca::workbench

#endif  // SILCA_WORKBENCH_DATASET_H_
