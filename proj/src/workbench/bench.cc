// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/workbench/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "silca/baselines/rache.h"
#include "silca/cache/cache_bank.h"
#include "silca/common/error.h"
#include "silca/he/serialize.h"
#include "silca/planner/planner.h"
#include "silca/ring/modarith.h"
#include "silca/rlwe/factory.h"

namespace silca::workbench {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

double Median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

struct Keyed {
  std::shared_ptr<const he::Backend> backend;
  he::KeyPair keys;
};

Keyed MakeKeyed(const he::SchemeParams& params) {
  auto backend = rlwe::MakeBackend(params);
  auto keys = backend->KeyGen(RandomSource::Global().NextSeed());
  return {std::move(backend), std::move(keys)};
}

// Collects latencies and checks each result as it is produced.
class Recorder {
 public:
  Recorder(BenchRecord& rec, bool integer) : rec_(rec), integer_(integer) {
    rec_.exact = true;
  }

  void Online(Clock::duration d) { latencies_.push_back(Seconds(d)); }

  // Returns false (and marks the record) on a mismatch.
  bool Check(double expected, double got) {
    const double abs_err = std::abs(got - expected);
    const double rel_err = expected == 0 ? abs_err : abs_err / std::abs(expected);
    rec_.max_abs_error = std::max(rec_.max_abs_error, abs_err);
    rec_.max_rel_error = std::max(rec_.max_rel_error, rel_err);
    if (abs_err != 0) rec_.exact = false;
    const bool ok = integer_ ? abs_err == 0 : (rel_err <= 1e-3 || abs_err <= 1e-6);
    if (!ok) {
      std::ostringstream msg;
      msg << std::setprecision(17) << "correctness-failure: expected " << expected
          << " got " << got;
      rec_.status = msg.str();
    }
    return ok;
  }

  void Finish() {
    rec_.n = latencies_.size();
    double total = 0;
    for (double t : latencies_) total += t;
    rec_.total_online_seconds = total;
    rec_.median_online_seconds = Median(latencies_);
    if (rec_.status != "ok") rec_.exact = false;
  }

 private:
  BenchRecord& rec_;
  bool integer_;
  std::vector<double> latencies_;
};

std::uint64_t CiphertextBytes(const he::Backend& backend, const he::PublicKey& pk) {
  return he::SerializeCiphertext(backend.EncryptFactor(pk, 1)).size();
}

std::size_t PlanBufferLen(const BenchOptions& opt, double phi, std::size_t n,
                          std::uint64_t max_value, std::uint64_t ct_bytes) {
  if (opt.buffer_len) return std::max<std::size_t>(1, *opt.buffer_len);
  const mpz_class l_min = planner::PlanMinL(std::max(phi, 1.0), std::max<std::size_t>(n, 1),
                                            max_value);
  const std::uint64_t b = cache::FloorLog2(max_value);
  const std::uint64_t cap = std::max<std::uint64_t>(1, opt.bank_budget_bytes / (b * ct_bytes));
  const std::uint64_t l = l_min.fits_ulong_p() ? l_min.get_ui() : cap;
  return std::clamp<std::uint64_t>(l, 1, cap);
}

class Runner {
 public:
  Runner(std::string dataset, const std::vector<double>& values, ValueType type,
         const BenchOptions& opt)
      : dataset_(std::move(dataset)), values_(values), type_(type), opt_(opt) {
    if (opt_.slice != 0 && values_.size() > opt_.slice) values_.resize(opt_.slice);
    for (double v : values_) {
      max_abs_ = std::max(max_abs_, std::abs(v));
      if (type_ == ValueType::kInteger && (v < 0 || v != std::floor(v))) {
        throw DomainError("integer dataset holds a negative or fractional value");
      }
    }
  }

  std::vector<BenchRecord> Run() {
    std::vector<BenchRecord> out;
    for (const auto& scheme : opt_.schemes) {
      BenchRecord rec;
      rec.scheme = scheme;
      rec.dataset = dataset_;
      rec.workers = opt_.workers;
      try {
        if (scheme == "vanilla") {
          Vanilla(rec);
        } else if (scheme == "rache") {
          Rache(rec);
        } else if (scheme == "silca") {
          Silca(rec);
        } else if (scheme == "silcaz") {
          Silcaz(rec);
        } else {
          throw UsageError("unknown scheme '" + scheme + "'");
        }
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        rec.status = std::string("error: ") + e.what();
        rec.exact = false;
      }
      out.push_back(std::move(rec));
    }
    return out;
  }

 private:
  bool integer() const { return type_ == ValueType::kInteger; }

  std::uint64_t IntegerModulus() const {
    return std::max<std::uint64_t>(65537, ring::NextPrime(static_cast<std::uint64_t>(max_abs_)));
  }

  he::SchemeParams IntegerParams() const {
    if (opt_.integer_params) return *opt_.integer_params;
    const std::uint64_t n = IntegerModulus();
    return opt_.backend == BackendKind::kMock ? he::MockParams(n) : he::DefaultBgvParams(n);
  }

  he::SchemeParams RealParams() const {
    if (opt_.real_params) return *opt_.real_params;
    return opt_.backend == BackendKind::kMock ? he::MockParams() : he::DefaultCkksParams();
  }

  static std::string BackendName(const he::SchemeParams& p) {
    return std::string(he::SchemeName(p.scheme));
  }

  void Warmup(const std::function<void(double)>& enc) {
    for (std::size_t i = 0; i < std::min(opt_.warmup, values_.size()); ++i) enc(values_[i]);
  }

  void Vanilla(BenchRecord& rec) {
    const auto params = integer() ? IntegerParams() : RealParams();
    rec.backend = BackendName(params);
    Keyed k = MakeKeyed(params);
    Recorder r(rec, integer());
    if (integer()) {
      auto ib = he::AsInteger(k.backend);
      Warmup([&](double v) { ib->Encrypt(k.keys.pub, static_cast<std::uint64_t>(v)); });
      for (double v : values_) {
        auto t = baselines::VanillaEncrypt(*ib, k.keys.pub, static_cast<std::uint64_t>(v));
        r.Online(t.latency);
        if (!r.Check(v, static_cast<double>(ib->Decrypt(k.keys.secret, t.ciphertext)))) break;
      }
    } else {
      auto rb = he::AsReal(k.backend);
      Warmup([&](double v) { rb->Encrypt(k.keys.pub, v); });
      for (double v : values_) {
        auto t = baselines::VanillaEncrypt(*rb, k.keys.pub, v);
        r.Online(t.latency);
        if (!r.Check(v, rb->Decrypt(k.keys.secret, t.ciphertext))) break;
      }
    }
    r.Finish();
  }

  void Rache(BenchRecord& rec) {
    const auto params = integer() ? IntegerParams() : RealParams();
    rec.backend = BackendName(params);
    Keyed k = MakeKeyed(params);
    const std::uint64_t unit = 1ULL << opt_.frac_digits;
    const std::uint64_t max_m =
        integer() ? std::max<std::uint64_t>(2, static_cast<std::uint64_t>(max_abs_))
                  : static_cast<std::uint64_t>(std::ceil(max_abs_ * unit)) + 1;
    const std::size_t pool = std::clamp<std::size_t>(values_.size(), 1, 256);
    auto cache = baselines::RadixCache::Init(k.backend, k.keys.pub, max_m, 2, pool);
    rec.offline_seconds += cache->init_seconds();
    Recorder r(rec, integer());
    auto encrypt = [&](double v) {
      return integer() ? cache->EncryptInt(static_cast<std::uint64_t>(v))
                       : cache->EncryptFloat(v, opt_.frac_digits);
    };
    auto decrypt = [&](const he::Ciphertext& c) {
      return integer() ? static_cast<double>(he::AsInteger(k.backend)->Decrypt(k.keys.secret, c))
                       : he::AsReal(k.backend)->Decrypt(k.keys.secret, c);
    };
    auto top_up = [&] {
      const auto t0 = Clock::now();
      cache->TopUpZeros();
      rec.offline_seconds += Seconds(Clock::now() - t0);
    };
    Warmup([&](double v) { encrypt(v); });
    top_up();
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (cache->zero_pool_size() == 0) top_up();
      const auto t0 = Clock::now();
      he::Ciphertext c = encrypt(values_[i]);
      r.Online(Clock::now() - t0);
      if (!r.Check(values_[i], decrypt(c))) break;
    }
    rec.fallbacks = cache->zero_misses();
    r.Finish();
  }

  template <typename Encrypt, typename Decrypt>
  void RunBank(BenchRecord& rec, cache::CacheBank& bank, Encrypt encrypt, Decrypt decrypt) {
    Recorder r(rec, integer() && bank.mode() == cache::Mode::kSilcaZ);
    auto drain = [&] {
      const auto t0 = Clock::now();
      bank.Drain();
      rec.offline_seconds += Seconds(Clock::now() - t0);
    };
    Warmup([&](double v) { encrypt(v); });
    drain();
    const cache::BankStats before = bank.Stats();
    const std::size_t round =
        std::max<std::size_t>(1, bank.buffer_count() * bank.buffer_len() / 2);
    bool ok = true;
    for (std::size_t start = 0; ok && start < values_.size(); start += round) {
      const std::size_t end = std::min(values_.size(), start + round);
      for (std::size_t i = start; i < end; ++i) {
        cache::EncryptOutcome out = encrypt(values_[i]);
        r.Online(out.latency);
        if (!(ok = r.Check(values_[i], decrypt(out.ciphertext)))) break;
      }
      drain();
    }
    rec.fallbacks = bank.Stats().fallbacks - before.fallbacks;
    r.Finish();
  }

  cache::BankConfig BankConfigFor(std::uint64_t max_value, std::size_t l) const {
    cache::BankConfig c;
    c.max_value = max_value;
    c.buffer_len = l;
    c.fill_workers = opt_.workers;
    c.refill_workers = opt_.workers;
    c.refill = cache::RefillPolicy::kBackground;
    return c;
  }

  void Silca(BenchRecord& rec) {
    const auto params = RealParams();
    rec.backend = BackendName(params);
    Keyed k = MakeKeyed(params);
    auto rb = he::AsReal(k.backend);
    const std::uint64_t max_value =
        std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(max_abs_)));
    rec.phi = planner::MeasurePhi(*k.backend, k.keys.pub, opt_.phi_iterations).phi;
    rec.buffer_len = PlanBufferLen(opt_, rec.phi, values_.size(), max_value,
                                   CiphertextBytes(*k.backend, k.keys.pub));
    auto bank = cache::CacheBank::Build(k.backend, k.keys.pub, cache::Mode::kSilca,
                                        BankConfigFor(max_value, rec.buffer_len));
    rec.offline_seconds += bank->fill_seconds();
    RunBank(rec, *bank, [&](double v) { return bank->SilcaEncrypt(v); },
            [&](const he::Ciphertext& c) { return rb->Decrypt(k.keys.secret, c); });
  }

  void Silcaz(BenchRecord& rec) {
    if (!integer()) {
      rec.status = "skipped: silcaz needs an integer dataset";
      return;
    }
    const auto params = IntegerParams();
    rec.backend = BackendName(params);
    Keyed k = MakeKeyed(params);
    auto ib = he::AsInteger(k.backend);
    const std::uint64_t n = ib->plaintext_modulus();
    rec.phi = planner::MeasurePhi(*k.backend, k.keys.pub, opt_.phi_iterations).phi;
    rec.buffer_len = PlanBufferLen(opt_, rec.phi, values_.size(), n,
                                   CiphertextBytes(*k.backend, k.keys.pub));
    auto bank = cache::CacheBank::Build(k.backend, k.keys.pub, cache::Mode::kSilcaZ,
                                        BankConfigFor(n, rec.buffer_len));
    rec.offline_seconds += bank->fill_seconds();
    RunBank(rec, *bank,
            [&](double v) { return bank->SilcazEncrypt(static_cast<std::uint64_t>(v)); },
            [&](const he::Ciphertext& c) {
              return static_cast<double>(ib->Decrypt(k.keys.secret, c));
            });
  }

  std::string dataset_;
  std::vector<double> values_;
  ValueType type_;
  const BenchOptions& opt_;
  double max_abs_ = 0;
};

const char* const kColumns[] = {
    "scheme",         "dataset",       "backend",    "n",
    "total_online_s", "median_online_s", "offline_s", "fallbacks",
    "max_abs_error",  "max_rel_error", "exact",      "workers",
    "buffer_len",     "phi",           "status"};

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::vector<BenchRecord> RunBenchmark(const std::string& dataset,
                                      const std::vector<double>& values,
                                      ValueType type, const BenchOptions& options) {
  if (values.empty()) throw UsageError("benchmark needs at least one value");
  return Runner(dataset, values, type, options).Run();
}

std::string ReportCsvHeader() {
  std::string h;
  for (const char* c : kColumns) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

void WriteReportCsv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << ReportCsvHeader() << '\n';
  for (const auto& r : records) {
    out << Quote(r.scheme) << ',' << Quote(r.dataset) << ',' << Quote(r.backend) << ','
        << r.n << ',' << Num(r.total_online_seconds) << ','
        << Num(r.median_online_seconds) << ',' << Num(r.offline_seconds) << ','
        << r.fallbacks << ',' << Num(r.max_abs_error) << ',' << Num(r.max_rel_error)
        << ',' << (r.exact ? "true" : "false") << ',' << r.workers << ','
        << r.buffer_len << ',' << Num(r.phi) << ',' << Quote(r.status) << '\n';
  }
}

std::string ReportJson(const std::vector<BenchRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["scheme"] = r.scheme;
    j["dataset"] = r.dataset;
    j["backend"] = r.backend;
    j["n"] = r.n;
    j["total_online_s"] = r.total_online_seconds;
    j["median_online_s"] = r.median_online_seconds;
    j["offline_s"] = r.offline_seconds;
    j["fallbacks"] = r.fallbacks;
    j["max_abs_error"] = r.max_abs_error;
    j["max_rel_error"] = r.max_rel_error;
    j["exact"] = r.exact;
    j["workers"] = r.workers;
    j["buffer_len"] = r.buffer_len;
    j["phi"] = r.phi;
    j["status"] = r.status;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::vector<BenchRecord> ParseReportJson(const std::string& text) {
  std::vector<BenchRecord> out;
  for (const auto& j : nlohmann::json::parse(text)) {
    BenchRecord r;
    r.scheme = j.at("scheme");
    r.dataset = j.at("dataset");
    r.backend = j.at("backend");
    r.n = j.at("n");
    r.total_online_seconds = j.at("total_online_s");
    r.median_online_seconds = j.at("median_online_s");
    r.offline_seconds = j.at("offline_s");
    r.fallbacks = j.at("fallbacks");
    r.max_abs_error = j.at("max_abs_error");
    r.max_rel_error = j.at("max_rel_error");
    r.exact = j.at("exact");
    r.workers = j.at("workers");
    r.buffer_len = j.at("buffer_len");
    r.phi = j.at("phi");
    r.status = j.at("status");
    out.push_back(std::move(r));
  }
  return out;
}

void EmitReport(const std::vector<BenchRecord>& records,
                const std::filesystem::path& path, const std::string& format) {
  if (records.empty()) throw UsageError("no records to report");
  if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  if (format == "csv") {
    WriteReportCsv(out, records);
  } else {
    out << ReportJson(records) << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace silca::workbench
