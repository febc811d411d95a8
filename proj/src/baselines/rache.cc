// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/baselines/rache.h"

#include <cmath>

#include "silca/common/error.h"

namespace silca::baselines {
namespace {

using Clock = std::chrono::steady_clock;

}  // namespace

TimedCiphertext VanillaEncrypt(const he::IntegerBackend& backend,
                               const he::PublicKey& pk, std::uint64_t m) {
  const auto t0 = Clock::now();
  TimedCiphertext out{backend.Encrypt(pk, m), {}};
  out.latency = Clock::now() - t0;
  return out;
}

TimedCiphertext VanillaEncrypt(const he::RealBackend& backend,
                               const he::PublicKey& pk, double v) {
  const auto t0 = Clock::now();
  TimedCiphertext out{backend.Encrypt(pk, v), {}};
  out.latency = Clock::now() - t0;
  return out;
}

RadixCache::RadixCache(std::shared_ptr<const he::Backend> backend,
                       he::PublicKey pk, std::uint64_t max_value,
                       std::uint64_t base, std::size_t zero_pool)
    : backend_(std::move(backend)),
      pk_(std::move(pk)),
      max_value_(max_value),
      base_(base),
      zeros_(std::max<std::size_t>(1, zero_pool)) {}

std::unique_ptr<RadixCache> RadixCache::Init(
    std::shared_ptr<const he::Backend> backend, he::PublicKey pk,
    std::uint64_t max_value, std::uint64_t base, std::size_t zero_pool) {
  if (!backend) throw UsageError("radix cache needs a backend");
  if (base < 2) throw ParameterError("radix base must be >= 2");
  if (max_value < base) throw ParameterError("radix cache needs N >= b (k >= 1)");
  std::unique_ptr<RadixCache> cache(
      new RadixCache(std::move(backend), std::move(pk), max_value, base, zero_pool));
  const auto t0 = Clock::now();
  std::uint64_t power = 1;
  while (true) {
    cache->powers_.push_back(cache->backend_->EncryptFactor(cache->pk_, power));
    if (power > max_value / base) break;
    power *= base;
  }
  cache->TopUpZeros();
  cache->init_seconds_ = std::chrono::duration<double>(Clock::now() - t0).count();
  return cache;
}

he::Ciphertext RadixCache::FreshZero() const {
  return backend_->EncryptFactor(pk_, 0);
}

std::size_t RadixCache::TopUpZeros() {
  std::size_t added = 0;
  while (true) {
    {
      std::lock_guard lock(zero_mu_);
      if (zeros_.full()) break;
    }
    he::Ciphertext z = FreshZero();
    std::lock_guard lock(zero_mu_);
    if (!zeros_.PushBack(std::move(z))) break;
    ++added;
  }
  return added;
}

std::size_t RadixCache::zero_pool_size() const {
  std::lock_guard lock(zero_mu_);
  return zeros_.size();
}

std::uint64_t RadixCache::zero_misses() const {
  std::lock_guard lock(zero_mu_);
  return zero_misses_;
}

he::Ciphertext RadixCache::PopZero() {
  {
    std::lock_guard lock(zero_mu_);
    if (auto z = zeros_.PopFront()) return std::move(*z);
    ++zero_misses_;
  }
  return FreshZero();
}

he::Ciphertext RadixCache::Compose(std::uint64_t m) {
  // The zero encryption seeds the accumulator, so the only homomorphic work
  // is one eval_add per unit of digit mass.
  he::Ciphertext acc = PopZero();
  std::size_t i = 0;
  for (std::uint64_t rest = m; rest != 0; rest /= base_, ++i) {
    const std::uint64_t digit = rest % base_;
    for (std::uint64_t d = 0; d < digit; ++d) acc = backend_->EvalAdd(std::move(acc), powers_[i]);
  }
  return acc;
}

he::Ciphertext RadixCache::EncryptInt(std::uint64_t m) {
  if (m > max_value_) {
    throw DomainError("rache: plaintext " + std::to_string(m) + " exceeds N = " +
                      std::to_string(max_value_));
  }
  return Compose(m);
}

he::Ciphertext RadixCache::EncryptFloat(double v, int frac_digits) {
  auto real = he::AsReal(backend_);
  if (!std::isfinite(v)) throw DomainError("rache+: non-finite plaintext");
  if (frac_digits < 0 || frac_digits > 40) throw ParameterError("rache+: bad digit count");
  const double unit = std::pow(static_cast<double>(base_), frac_digits);
  const double scaled = std::round(std::abs(v) * unit);
  // Any integer with at most k + 1 base-b digits can be composed.
  const double limit = std::pow(static_cast<double>(base_),
                                static_cast<double>(powers_.size()));
  if (scaled >= limit || scaled >= 0x1p63) {
    throw DomainError("rache+: value overflows the radix cache");
  }
  he::Ciphertext c = Compose(static_cast<std::uint64_t>(scaled));
  const auto denom = static_cast<std::uint64_t>(unit);
  return real->EvalMulPlain(std::move(c), he::RealScalar{v < 0 ? -1.0 : 1.0, denom});
}

}  // namespace silca::baselines
