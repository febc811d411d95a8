// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/workbench/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "silca/common/error.h"
#include "silca/common/random.h"

namespace silca::workbench {
namespace {

struct Moments {
  double mean;
  double sd;
};

// The sampled distribution: a normal density restricted to a support grid.
// Integer specs with a modest range use the integers themselves (so the
// rounding is part of the model); otherwise a fine uniform grid over
// [min, max] with trapezoid weights.
struct Grid {
  std::vector<double> x;
  std::vector<double> w;
  bool discrete = false;
};

Grid MakeGrid(const DatasetSpec& spec) {
  Grid g;
  const double a = spec.min;
  const double b = spec.max;
  if (spec.type == ValueType::kInteger && b - a <= 100000) {
    g.discrete = true;
    for (double k = std::ceil(a); k <= b; k += 1) {
      g.x.push_back(k);
      g.w.push_back(1.0);
    }
    return g;
  }
  constexpr int kCells = 4000;
  const double h = (b - a) / kCells;
  for (int i = 0; i <= kCells; ++i) {
    g.x.push_back(i == kCells ? b : a + i * h);
    g.w.push_back(i == 0 || i == kCells ? h / 2 : h);
  }
  return g;
}

// Unnormalized masses, scaled so the largest log-density is zero; stable
// for locations far outside the support.
std::vector<double> Masses(const Grid& g, double mu, double sigma) {
  std::vector<double> m(g.x.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double z = (g.x[i] - mu) / sigma;
    m[i] = -0.5 * z * z;
    top = std::max(top, m[i]);
  }
  for (std::size_t i = 0; i < g.x.size(); ++i) m[i] = g.w[i] * std::exp(m[i] - top);
  return m;
}

Moments GridMoments(const Grid& g, double mu, double sigma) {
  const std::vector<double> m = Masses(g, mu, sigma);
  double total = 0, first = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    total += m[i];
    first += m[i] * g.x[i];
  }
  const double mean = first / total;
  double second = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    second += m[i] * (g.x[i] - mean) * (g.x[i] - mean);
  }
  return {mean, std::sqrt(second / total)};
}

// Location giving the target mean at this sigma (mean is increasing in mu).
double SolveLocation(const Grid& g, double target, double sigma, double a, double b) {
  const double reach = 50 * (b - a) + 50 * sigma + 1;
  double lo = a - reach;
  double hi = b + reach;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (GridMoments(g, mid, sigma).mean < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> ParseCell(const std::string& raw, ValueType type) {
  const std::string s = Trim(raw);
  if (s.empty()) return std::nullopt;
  double v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  if (type == ValueType::kInteger && v != std::floor(v)) return std::nullopt;
  return v;
}

}  // namespace

const std::vector<DatasetSpec>& StandardDatasets() {
  static const std::vector<DatasetSpec> specs = {
      {"covid19", 341, ValueType::kInteger, 123021, 2309884, 1063465.029, 570009.089, 0},
      {"bitcoin", 1086, ValueType::kReal, 274252.698, 9999999.999, 7412197.895,
       3472109.034, 3},
      {"hg38", 34424, ValueType::kInteger, 1, 360, 10.915, 9.891, 0},
      {"p_size", 200000, ValueType::kInteger, 1, 50, 25.427, 14.441, 0},
      {"p_retailprice", 200000, ValueType::kReal, 901.00, 2098.99, 1499.49, 294.673, 2},
      {"o_totalprice", 1500000, ValueType::kReal, 857.71, 555285.16, 151219.537,
       88621.401, 2},
      {"l_extendedprice", 6001215, ValueType::kReal, 901.00, 104949.50, 38255.138,
       23300.436, 2},
  };
  return specs;
}

const DatasetSpec& FindDataset(const std::string& name) {
  const std::string key = Lower(name);
  for (const auto& s : StandardDatasets()) {
    if (s.name == key) return s;
  }
  throw UsageError("unknown dataset '" + name + "'");
}

std::vector<double> SynthDataset(const DatasetSpec& spec, std::uint64_t seed,
                                 std::optional<std::uint64_t> count) {
  if (!(spec.min <= spec.mean && spec.mean <= spec.max)) {
    throw ParameterError("dataset spec " + spec.name + ": mean outside [min, max]");
  }
  if (spec.stddev < 0) throw ParameterError("dataset spec: negative stddev");
  const std::uint64_t n = count.value_or(spec.n);
  std::vector<double> out(n, spec.min);
  if (n == 0) return out;
  if (spec.min == spec.max || spec.stddev == 0) {
    std::fill(out.begin(), out.end(), spec.mean);
    return out;
  }
  const double a = spec.min;
  const double b = spec.max;
  const Grid grid = MakeGrid(spec);
  // Truncation shrinks the spread; widen sigma until the truncated sd hits
  // the target, or stop at a cap when the bounds make it unreachable.
  auto sd_at = [&](double sigma) {
    return GridMoments(grid, SolveLocation(grid, spec.mean, sigma, a, b), sigma).sd;
  };
  const double cap = 20 * (b - a);
  double s_lo = std::min(spec.stddev, cap) * 1e-3;
  double s_hi = cap;
  if (sd_at(cap) > spec.stddev) {
    for (int i = 0; i < 50; ++i) {
      const double mid = 0.5 * (s_lo + s_hi);
      if (sd_at(mid) < spec.stddev) {
        s_lo = mid;
      } else {
        s_hi = mid;
      }
    }
  }
  const double sigma = 0.5 * (s_lo + s_hi);
  const double mu = SolveLocation(grid, spec.mean, sigma, a, b);

  // Cumulative masses; for the continuous grid, cell i spans x[i]..x[i+1]
  // and is sampled uniformly inside.
  const std::vector<double> mass = Masses(grid, mu, sigma);
  std::vector<double> cdf;
  if (grid.discrete) {
    cdf.resize(mass.size());
    std::partial_sum(mass.begin(), mass.end(), cdf.begin());
  } else {
    const double h = grid.x[1] - grid.x[0];
    double acc = 0;
    for (std::size_t i = 0; i + 1 < mass.size(); ++i) {
      acc += 0.5 * (mass[i] / grid.w[i] + mass[i + 1] / grid.w[i + 1]) * h;
      cdf.push_back(acc);
    }
  }
  ChaChaStream stream(SeedFromU64(seed), 0xda7a);
  auto unit = [&] { return (stream.NextU64() >> 11) * 0x1p-53; };
  const double scale = std::pow(10.0, spec.decimals);
  for (std::uint64_t i = 0; i < n; ++i) {
    // Jittered stratification keeps the sample moments close to the model.
    const double u = (static_cast<double>(i) + unit()) / static_cast<double>(n) * cdf.back();
    const std::size_t k =
        std::min<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(),
                              cdf.size() - 1);
    double x;
    if (grid.discrete) {
      x = grid.x[k];
    } else {
      const double left = k == 0 ? 0.0 : cdf[k - 1];
      const double frac = (u - left) / std::max(cdf[k] - left, 1e-300);
      x = grid.x[k] + std::clamp(frac, 0.0, 1.0) * (grid.x[k + 1] - grid.x[k]);
      x = spec.type == ValueType::kInteger ? std::round(x) : std::round(x * scale) / scale;
    }
    out[i] = std::clamp(x, a, b);
  }
  // Fisher-Yates with the same stream.
  for (std::uint64_t i = n - 1; i > 0; --i) {
    std::swap(out[i], out[stream.UniformBelow(i + 1)]);
  }
  return out;
}

CsvColumn LoadCsvColumn(const std::filesystem::path& path, const std::string& column,
                        ValueType type, bool has_header) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  CsvColumn out;
  std::string line;
  std::optional<std::size_t> index;
  std::size_t parsed_index = 0;
  const auto [p, ec] =
      std::from_chars(column.data(), column.data() + column.size(), parsed_index);
  if (ec == std::errc() && p == column.data() + column.size()) index = parsed_index;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    if (header_pending) {
      if (Trim(line).empty()) continue;
      header_pending = false;
      const auto cells = SplitCsv(line);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (Trim(cells[i]) == column) index = i;
      }
      if (!index) throw UsageError("column '" + column + "' not found in " + path.string());
      continue;
    }
    if (!index) throw UsageError("column must be an index when the file has no header");
    if (Trim(line).empty()) continue;
    ++out.rows;
    const auto cells = SplitCsv(line);
    std::optional<double> v;
    if (*index < cells.size()) v = ParseCell(cells[*index], type);
    if (v) {
      out.values.push_back(*v);
    } else {
      out.skipped_rows.push_back(out.rows);
    }
  }
  return out;
}

DatasetStats ComputeStats(const std::vector<double>& values) {
  DatasetStats s;
  s.n = values.size();
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  // Two-pass for accuracy.
  long double sum = 0;
  for (double v : values) sum += v;
  s.mean = static_cast<double>(sum / values.size());
  long double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = values.size() > 1 ? std::sqrt(static_cast<double>(sq / (values.size() - 1))) : 0.0;
  return s;
}

StatsVerdict VerifyDatasetStats(const std::vector<double>& values,
                                const DatasetSpec& spec, const StatsTolerance& tol) {
  StatsVerdict v;
  v.measured = ComputeStats(values);
  if (values.empty()) {
    v.failures.push_back("empty sample");
    return v;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < spec.min || values[i] > spec.max) {
      v.violating_index = i;
      std::ostringstream msg;
      msg << "value " << values[i] << " at index " << i << " outside [" << spec.min
          << ", " << spec.max << "]";
      v.failures.push_back(msg.str());
      break;
    }
  }
  auto rel = [](double got, double want) {
    return want == 0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
  };
  if (rel(v.measured.mean, spec.mean) > tol.mean_rel) {
    v.failures.push_back("mean " + std::to_string(v.measured.mean) + " vs " +
                         std::to_string(spec.mean));
  }
  if (tol.stddev_rel && rel(v.measured.stddev, spec.stddev) > *tol.stddev_rel) {
    v.failures.push_back("stddev " + std::to_string(v.measured.stddev) + " vs " +
                         std::to_string(spec.stddev));
  }
  if (tol.check_count && v.measured.n != spec.n) {
    v.failures.push_back("count " + std::to_string(v.measured.n) + " vs " +
                         std::to_string(spec.n));
  }
  v.pass = v.failures.empty();
  return v;
}

}  // namespace silca::workbench
