// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_CACHE_CACHE_BANK_H_
#define SILCA_CACHE_CACHE_BANK_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "silca/cache/ring_buffer.h"
#include "silca/common/random.h"
#include "silca/he/backend.h"

namespace silca::cache {

enum class Mode { kSilca, kSilcaZ };

enum class RefillPolicy {
  kBackground,  // worker threads drain the queue
  kManual,      // caller drives RefillStep / Drain
  kDisabled,    // pops are never replaced
};

// kFused applies one plaintext multiply (m/r or m*r^-1 mod N); kTwoStep
// applies the two multiplies separately.
enum class ScalarMode { kFused, kTwoStep };

enum class Path { kCached, kFallback, kZero };
std::string_view PathName(Path path);

struct BankConfig {
  std::uint64_t max_value = 0;  // N
  std::size_t buffer_len = 1;   // L
  unsigned fill_workers = 1;
  unsigned refill_workers = 1;
  RefillPolicy refill = RefillPolicy::kBackground;
  ScalarMode scalar_mode = ScalarMode::kFused;
  // Deterministic factor draw; otherwise the global random source is used.
  std::optional<Seed> factor_seed;
  // Test hook: explicit factors r_1..r_B, bypassing sampling and range checks
  // other than r != 0 (and r invertible mod N for SilcaZ).
  std::vector<std::uint64_t> factors;
};

struct EncryptOutcome {
  he::Ciphertext ciphertext;
  std::size_t salt = 0;          // 1-based buffer index; 0 on the zero path
  std::uint64_t mask_id = 0;     // consumption id of the popped mask
  Path path = Path::kCached;
  std::chrono::nanoseconds latency{0};
};

// Counters move together under one lock, so every snapshot satisfies
//   encrypts = pops + fallbacks + zero_cases
//   pops     = refills + queue_depth + in_flight + dropped
struct BankStats {
  std::uint64_t encrypts = 0;
  std::uint64_t pops = 0;
  std::uint64_t fallbacks = 0;
  std::uint64_t zero_cases = 0;
  std::uint64_t refills = 0;
  std::uint64_t refill_errors = 0;
  std::uint64_t dropped = 0;  // pops never queued (refill disabled)
  std::uint64_t queue_depth = 0;
  std::uint64_t in_flight = 0;
  std::string last_error;
};

class CacheBank {
 public:
  // Draws B = floor(log2 N) factors and fills each buffer with L encryptions
  // of its factor using config.fill_workers threads.
  static std::unique_ptr<CacheBank> Build(
      std::shared_ptr<const he::Backend> backend, he::PublicKey pk, Mode mode,
      BankConfig config);

  // Reads a bank written by Save. Redacted banks load but refuse to encrypt.
  static std::unique_ptr<CacheBank> Load(
      std::istream& in, std::shared_ptr<const he::Backend> backend,
      he::PublicKey pk, BankConfig config);

  ~CacheBank();
  CacheBank(const CacheBank&) = delete;
  CacheBank& operator=(const CacheBank&) = delete;

  Mode mode() const { return mode_; }
  std::uint64_t max_value() const { return config_.max_value; }
  std::size_t buffer_len() const { return config_.buffer_len; }
  std::size_t buffer_count() const { return factors_.size(); }
  // idx in [1, B].
  std::uint64_t factor(std::size_t idx) const;
  bool redacted() const { return redacted_; }
  const he::Backend& backend() const { return *backend_; }
  double fill_seconds() const { return fill_seconds_; }

  EncryptOutcome SilcaEncrypt(double ptxt,
                              std::optional<std::size_t> forced_salt = {});
  EncryptOutcome SilcazEncrypt(std::uint64_t ptxt,
                               std::optional<std::size_t> forced_salt = {});

  // Serves up to max_requests queued refills on the calling thread.
  std::size_t RefillStep(std::size_t max_requests);
  // Returns once the queue is empty and nothing is in flight. Under the
  // background policy this waits for the workers; otherwise it runs
  // RefillStep itself.
  void Drain();

  BankStats Stats() const;
  std::size_t buffer_size(std::size_t idx) const;
  std::vector<he::Ciphertext> Snapshot(std::size_t idx) const;

  // Factors are written only when export_secrets is set.
  void Save(std::ostream& out, bool export_secrets) const;

 private:
  struct Buffer {
    explicit Buffer(std::size_t capacity) : ring(capacity) {}
    mutable std::mutex mu;
    RingBuffer<he::Ciphertext> ring;
  };

  CacheBank(std::shared_ptr<const he::Backend> backend, he::PublicKey pk,
            Mode mode, BankConfig config);

  void CheckUsable(const char* op) const;
  std::size_t DrawSalt(std::optional<std::size_t> forced) const;
  std::optional<he::Ciphertext> Pop(std::size_t salt);
  void RecordOutcome(Path path, std::size_t salt);
  he::Ciphertext Fresh(std::uint64_t value) const;
  bool ServeOne(std::unique_lock<std::mutex>& lock);
  void WorkerLoop(std::stop_token stop);
  void StartWorkers();

  std::shared_ptr<const he::Backend> backend_;
  std::shared_ptr<const he::IntegerBackend> int_backend_;
  std::shared_ptr<const he::RealBackend> real_backend_;
  he::PublicKey pk_;
  Mode mode_;
  BankConfig config_;
  std::vector<std::uint64_t> factors_;
  std::vector<std::uint64_t> inverses_;  // SilcaZ only
  bool redacted_ = false;
  double fill_seconds_ = 0.0;
  std::vector<std::unique_ptr<Buffer>> buffers_;

  mutable std::mutex queue_mu_;
  std::condition_variable_any queue_cv_;
  std::condition_variable quiet_cv_;
  std::deque<std::size_t> queue_;
  BankStats stats_;
  std::vector<std::jthread> workers_;
};

// floor(log2 n) for n >= 1.
std::size_t FloorLog2(std::uint64_t n);

}  // namespace silca::cache

#endif  // SILCA_CACHE_CACHE_BANK_H_
