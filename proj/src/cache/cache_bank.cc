// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/cache/cache_bank.h"

#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <ostream>

#include "silca/common/error.h"
#include "silca/he/serialize.h"
#include "silca/ring/modarith.h"

namespace silca::cache {
namespace {

constexpr std::uint8_t kBankRecord = 0x10;
constexpr std::uint8_t kFlagFactors = 0x01;
constexpr std::uint8_t kFlagSilcaZ = 0x02;

using Clock = std::chrono::steady_clock;

}  // namespace

std::string_view PathName(Path path) {
  switch (path) {
    case Path::kCached:
      return "cached";
    case Path::kFallback:
      return "fallback";
    case Path::kZero:
      return "zero";
  }
  return "?";
}

std::size_t FloorLog2(std::uint64_t n) {
  if (n == 0) throw ParameterError("floor_log2 of zero");
  return 63 - std::countl_zero(n);
}

CacheBank::CacheBank(std::shared_ptr<const he::Backend> backend,
                     he::PublicKey pk, Mode mode, BankConfig config)
    : backend_(std::move(backend)),
      pk_(std::move(pk)),
      mode_(mode),
      config_(std::move(config)) {
  if (!backend_) throw UsageError("cache bank needs a backend");
  if (config_.max_value < 2) throw ParameterError("max value N must be >= 2");
  if (config_.buffer_len < 1) throw ParameterError("buffer length L must be >= 1");
  if (mode_ == Mode::kSilcaZ) {
    int_backend_ = he::AsInteger(backend_);
    const std::uint64_t n = config_.max_value;
    if (!ring::IsPrime(n)) throw ParameterError("SilcaZ needs a prime N");
    if (n < 3) throw ParameterError("SilcaZ needs N >= 3");
    if (int_backend_->plaintext_modulus() != n) {
      throw ParameterError("SilcaZ N must equal the backend plaintext modulus");
    }
  } else {
    real_backend_ = he::AsReal(backend_);
  }
  const std::size_t b = FloorLog2(config_.max_value);
  for (std::size_t i = 0; i < b; ++i) {
    buffers_.push_back(std::make_unique<Buffer>(config_.buffer_len));
  }
}

CacheBank::~CacheBank() {
  for (auto& w : workers_) w.request_stop();
  queue_cv_.notify_all();
}

std::unique_ptr<CacheBank> CacheBank::Build(
    std::shared_ptr<const he::Backend> backend, he::PublicKey pk, Mode mode,
    BankConfig config) {
  std::unique_ptr<CacheBank> bank(
      new CacheBank(std::move(backend), std::move(pk), mode, std::move(config)));
  const std::uint64_t n = bank->config_.max_value;
  const std::size_t b = bank->buffers_.size();
  const std::size_t l = bank->config_.buffer_len;

  // Factor ranges: Silca [1, N], SilcaZ [2, N-1].
  const std::uint64_t lo = mode == Mode::kSilcaZ ? 2 : 1;
  const std::uint64_t hi = mode == Mode::kSilcaZ ? n - 1 : n;
  if (!bank->config_.factors.empty()) {
    if (bank->config_.factors.size() != b) {
      throw ParameterError("explicit factor list must have B entries");
    }
    bank->factors_ = bank->config_.factors;
  } else if (bank->config_.factor_seed) {
    ChaChaStream stream(*bank->config_.factor_seed, 0x5a17);
    for (std::size_t i = 0; i < b; ++i) {
      bank->factors_.push_back(lo + stream.UniformBelow(hi - lo + 1));
    }
  } else {
    for (std::size_t i = 0; i < b; ++i) {
      bank->factors_.push_back(RandomSource::Global().UniformInRange(lo, hi));
    }
  }
  for (std::uint64_t r : bank->factors_) {
    if (r == 0) throw ParameterError("factor must be non-zero");
    if (mode == Mode::kSilcaZ) {
      bank->inverses_.push_back(ring::ModInverse(r % n, n));
    }
  }

  // Offline fill: B*L independent encryptions spread over the workers.
  const auto t0 = Clock::now();
  std::vector<std::optional<he::Ciphertext>> slots(b * l);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < slots.size();
         k = next.fetch_add(1)) {
      try {
        slots[k] = bank->Fresh(bank->factors_[k / l]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(slots.size());
      }
    }
  };
  const unsigned workers = std::max(1u, bank->config_.fill_workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    bank->buffers_[k / l]->ring.PushBack(std::move(*slots[k]));
  }
  bank->fill_seconds_ =
      std::chrono::duration<double>(Clock::now() - t0).count();
  bank->StartWorkers();
  return bank;
}

void CacheBank::StartWorkers() {
  if (config_.refill != RefillPolicy::kBackground || redacted_) return;
  const unsigned count = std::max(1u, config_.refill_workers);
  for (unsigned i = 0; i < count; ++i) {
    workers_.emplace_back([this](std::stop_token st) { WorkerLoop(st); });
  }
}

std::uint64_t CacheBank::factor(std::size_t idx) const {
  if (idx < 1 || idx > factors_.size()) throw UsageError("buffer index out of range");
  return factors_[idx - 1];
}

void CacheBank::CheckUsable(const char* op) const {
  if (redacted_) {
    throw UsageError(std::string(op) +
                     ": cache factors were not exported; rebuild with secrets");
  }
}

std::size_t CacheBank::DrawSalt(std::optional<std::size_t> forced) const {
  if (forced) {
    if (*forced < 1 || *forced > buffers_.size()) {
      throw UsageError("forced salt out of range");
    }
    return *forced;
  }
  return 1 + RandomSource::Global().UniformBelow(buffers_.size());
}

std::optional<he::Ciphertext> CacheBank::Pop(std::size_t salt) {
  Buffer& buf = *buffers_[salt - 1];
  std::lock_guard lock(buf.mu);
  return buf.ring.PopFront();
}

void CacheBank::RecordOutcome(Path path, std::size_t salt) {
  {
    std::lock_guard lock(queue_mu_);
    ++stats_.encrypts;
    switch (path) {
      case Path::kZero:
        ++stats_.zero_cases;
        return;
      case Path::kFallback:
        ++stats_.fallbacks;
        return;
      case Path::kCached:
        ++stats_.pops;
        if (config_.refill == RefillPolicy::kDisabled) {
          ++stats_.dropped;
          return;
        }
        queue_.push_back(salt);
        ++stats_.queue_depth;
        break;
    }
  }
  if (config_.refill == RefillPolicy::kBackground) queue_cv_.notify_one();
}

he::Ciphertext CacheBank::Fresh(std::uint64_t value) const {
  return backend_->EncryptFactor(pk_, value);
}

EncryptOutcome CacheBank::SilcaEncrypt(double ptxt,
                                       std::optional<std::size_t> forced_salt) {
  const auto t0 = Clock::now();
  CheckUsable("silca_encrypt");
  if (mode_ != Mode::kSilca) throw UsageError("bank was built for SilcaZ");
  if (!std::isfinite(ptxt)) throw DomainError("silca_encrypt: non-finite plaintext");
  EncryptOutcome out;
  if (ptxt == 0.0) {
    // A zero scalar would wipe the mask and reveal m = 0.
    out.ciphertext = real_backend_->Encrypt(pk_, 0.0);
    out.path = Path::kZero;
  } else {
    out.salt = DrawSalt(forced_salt);
    std::optional<he::Ciphertext> mask = Pop(out.salt);
    if (!mask) {
      out.ciphertext = real_backend_->Encrypt(pk_, ptxt);
      out.path = Path::kFallback;
    } else {
      const std::uint64_t r = factors_[out.salt - 1];
      out.mask_id = mask->consumption_id;
      if (config_.scalar_mode == ScalarMode::kFused) {
        out.ciphertext =
            real_backend_->EvalMulPlain(std::move(*mask), he::RealScalar{ptxt, r});
      } else {
        he::Ciphertext c =
            real_backend_->EvalMulPlain(std::move(*mask), he::RealScalar{1.0, r});
        out.ciphertext = real_backend_->EvalMulPlain(std::move(c),
                                                     he::RealScalar{ptxt, 1});
      }
      out.path = Path::kCached;
    }
  }
  RecordOutcome(out.path, out.salt);
  out.latency = Clock::now() - t0;
  return out;
}

EncryptOutcome CacheBank::SilcazEncrypt(std::uint64_t ptxt,
                                        std::optional<std::size_t> forced_salt) {
  const auto t0 = Clock::now();
  CheckUsable("silcaz_encrypt");
  if (mode_ != Mode::kSilcaZ) throw UsageError("bank was built for Silca");
  const std::uint64_t n = config_.max_value;
  if (ptxt >= n) {
    throw DomainError("silcaz_encrypt: plaintext " + std::to_string(ptxt) +
                      " outside [0, " + std::to_string(n) + ")");
  }
  EncryptOutcome out;
  if (ptxt == 0) {
    out.ciphertext = int_backend_->Encrypt(pk_, 0);
    out.path = Path::kZero;
  } else {
    out.salt = DrawSalt(forced_salt);
    std::optional<he::Ciphertext> mask = Pop(out.salt);
    if (!mask) {
      out.ciphertext = int_backend_->Encrypt(pk_, ptxt);
      out.path = Path::kFallback;
    } else {
      const std::uint64_t inv = inverses_[out.salt - 1];
      out.mask_id = mask->consumption_id;
      if (config_.scalar_mode == ScalarMode::kFused) {
        out.ciphertext = int_backend_->EvalMulPlain(
            std::move(*mask), ring::MulMod(ptxt, inv, n));
      } else {
        he::Ciphertext c = int_backend_->EvalMulPlain(std::move(*mask), inv);
        out.ciphertext = int_backend_->EvalMulPlain(std::move(c), ptxt);
      }
      out.path = Path::kCached;
    }
  }
  RecordOutcome(out.path, out.salt);
  out.latency = Clock::now() - t0;
  return out;
}

// Called and returns with queue_mu_ held.
bool CacheBank::ServeOne(std::unique_lock<std::mutex>& lock) {
  const std::size_t idx = queue_.front();
  queue_.pop_front();
  --stats_.queue_depth;
  ++stats_.in_flight;
  lock.unlock();
  std::string error;
  try {
    he::Ciphertext c = Fresh(factors_[idx - 1]);
    Buffer& buf = *buffers_[idx - 1];
    std::lock_guard buf_lock(buf.mu);
    buf.ring.PushBack(std::move(c));
  } catch (const std::exception& e) {
    error = e.what();
  }
  lock.lock();
  --stats_.in_flight;
  if (!error.empty()) {
    queue_.push_back(idx);
    ++stats_.queue_depth;
    ++stats_.refill_errors;
    stats_.last_error = std::move(error);
    return false;
  }
  ++stats_.refills;
  if (queue_.empty() && stats_.in_flight == 0) quiet_cv_.notify_all();
  return true;
}

std::size_t CacheBank::RefillStep(std::size_t max_requests) {
  if (redacted_) return 0;
  std::unique_lock lock(queue_mu_);
  std::size_t served = 0;
  while (served < max_requests && !queue_.empty()) {
    if (!ServeOne(lock)) break;
    ++served;
  }
  return served;
}

void CacheBank::WorkerLoop(std::stop_token stop) {
  std::unique_lock lock(queue_mu_);
  while (!stop.stop_requested()) {
    if (!queue_cv_.wait(lock, stop, [this] { return !queue_.empty(); })) break;
    if (!ServeOne(lock)) {
      // Back off so a persistent backend failure does not spin.
      lock.unlock();
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
      lock.lock();
    }
  }
}

void CacheBank::Drain() {
  if (config_.refill == RefillPolicy::kBackground && !workers_.empty()) {
    std::unique_lock lock(queue_mu_);
    quiet_cv_.wait(lock, [this] { return queue_.empty() && stats_.in_flight == 0; });
    return;
  }
  while (true) {
    {
      std::lock_guard lock(queue_mu_);
      if (queue_.empty()) return;
    }
    if (RefillStep(std::numeric_limits<std::size_t>::max()) == 0) {
      throw Error("refill failed: " + Stats().last_error);
    }
  }
}

BankStats CacheBank::Stats() const {
  std::lock_guard lock(queue_mu_);
  return stats_;
}

std::size_t CacheBank::buffer_size(std::size_t idx) const {
  if (idx < 1 || idx > buffers_.size()) throw UsageError("buffer index out of range");
  const Buffer& buf = *buffers_[idx - 1];
  std::lock_guard lock(buf.mu);
  return buf.ring.size();
}

std::vector<he::Ciphertext> CacheBank::Snapshot(std::size_t idx) const {
  if (idx < 1 || idx > buffers_.size()) throw UsageError("buffer index out of range");
  const Buffer& buf = *buffers_[idx - 1];
  std::lock_guard lock(buf.mu);
  return buf.ring.Snapshot();
}

void CacheBank::Save(std::ostream& out, bool export_secrets) const {
  if (export_secrets && redacted_) {
    throw UsageError("cannot export factors of a redacted cache");
  }
  std::vector<std::vector<he::Ciphertext>> contents;
  for (std::size_t idx = 1; idx <= buffers_.size(); ++idx) {
    contents.push_back(Snapshot(idx));
    if (contents.back().size() != config_.buffer_len) {
      throw UsageError("cache must be drained to full buffers before saving");
    }
  }
  out.write(he::kMagic, 4);
  he::PutU8(out, kBankRecord);
  std::uint8_t flags = mode_ == Mode::kSilcaZ ? kFlagSilcaZ : 0;
  if (export_secrets) flags |= kFlagFactors;
  he::PutU8(out, flags);
  he::PutU64(out, config_.max_value);
  he::PutU64(out, config_.buffer_len);
  he::PutU64(out, buffers_.size());
  for (std::uint64_t r : factors_) he::PutU64(out, export_secrets ? r : 0);
  for (const auto& buffer : contents) {
    for (const auto& c : buffer) he::WriteCiphertext(out, c);
  }
  if (!out) throw Error("cache write failed");
}

std::unique_ptr<CacheBank> CacheBank::Load(
    std::istream& in, std::shared_ptr<const he::Backend> backend,
    he::PublicKey pk, BankConfig config) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string_view(magic, 4) != std::string_view(he::kMagic, 4)) {
    throw FormatError("not a cache file (bad magic)");
  }
  if (he::GetU8(in) != kBankRecord) throw FormatError("not a cache bank record");
  const std::uint8_t flags = he::GetU8(in);
  config.max_value = he::GetU64(in);
  config.buffer_len = he::GetU64(in);
  const std::uint64_t b = he::GetU64(in);
  if (config.max_value < 2 || b != FloorLog2(config.max_value)) {
    throw FormatError("cache header is inconsistent");
  }
  if (config.buffer_len == 0 || config.buffer_len > (1ULL << 32)) {
    throw FormatError("cache buffer length out of range");
  }
  const Mode mode = (flags & kFlagSilcaZ) ? Mode::kSilcaZ : Mode::kSilca;
  std::vector<std::uint64_t> factors(b);
  for (auto& r : factors) r = he::GetU64(in);
  config.factors.clear();
  std::unique_ptr<CacheBank> bank(
      new CacheBank(std::move(backend), std::move(pk), mode, std::move(config)));
  bank->factors_ = std::move(factors);
  bank->redacted_ = !(flags & kFlagFactors);
  if (!bank->redacted_ && mode == Mode::kSilcaZ) {
    for (std::uint64_t r : bank->factors_) {
      bank->inverses_.push_back(ring::ModInverse(r % bank->max_value(), bank->max_value()));
    }
  }
  for (auto& buf : bank->buffers_) {
    for (std::size_t j = 0; j < bank->config_.buffer_len; ++j) {
      buf->ring.PushBack(bank->backend_->ReadCiphertext(in));
    }
  }
  bank->StartWorkers();
  return bank;
}

}  // namespace silca::cache
