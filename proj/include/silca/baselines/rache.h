// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_BASELINES_RACHE_H_
#define SILCA_BASELINES_RACHE_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "silca/cache/ring_buffer.h"
#include "silca/he/backend.h"

namespace silca::baselines {

struct TimedCiphertext {
  he::Ciphertext ciphertext;
  std::chrono::nanoseconds latency{0};
};

TimedCiphertext VanillaEncrypt(const he::IntegerBackend& backend,
                               const he::PublicKey& pk, std::uint64_t m);
TimedCiphertext VanillaEncrypt(const he::RealBackend& backend,
                               const he::PublicKey& pk, double v);

// Radix cache: encryptions of b^0 .. b^k, k = floor(log_b N), plus a small
// pool of encryptions of zero used to re-randomize each composed result.
class RadixCache {
 public:
  static std::unique_ptr<RadixCache> Init(std::shared_ptr<const he::Backend> backend,
                                          he::PublicKey pk,
                                          std::uint64_t max_value,
                                          std::uint64_t base = 2,
                                          std::size_t zero_pool = 64);

  std::uint64_t base() const { return base_; }
  std::uint64_t max_value() const { return max_value_; }
  std::size_t max_exponent() const { return powers_.size() - 1; }
  const he::Ciphertext& entry(std::size_t i) const { return powers_.at(i); }
  double init_seconds() const { return init_seconds_; }

  // Digit decomposition of m, then sum of cached powers. 0 <= m <= N.
  he::Ciphertext EncryptInt(std::uint64_t m);

  // Scales |v| by b^frac_digits, encrypts the rounded integer as above and
  // divides back with one plaintext multiply (which also applies the sign).
  // Needs a real backend.
  he::Ciphertext EncryptFloat(double v, int frac_digits);

  // Offline: refills the zero pool; returns how many were added.
  std::size_t TopUpZeros();
  std::size_t zero_pool_size() const;
  std::uint64_t zero_misses() const;

 private:
  RadixCache(std::shared_ptr<const he::Backend> backend, he::PublicKey pk,
             std::uint64_t max_value, std::uint64_t base, std::size_t zero_pool);

  he::Ciphertext PopZero();
  he::Ciphertext FreshZero() const;
  he::Ciphertext Compose(std::uint64_t m);

  std::shared_ptr<const he::Backend> backend_;
  he::PublicKey pk_;
  std::uint64_t max_value_;
  std::uint64_t base_;
  std::vector<he::Ciphertext> powers_;
  double init_seconds_ = 0.0;

  mutable std::mutex zero_mu_;
  cache::RingBuffer<he::Ciphertext> zeros_;
  std::uint64_t zero_misses_ = 0;
};

}  // namespace silca::baselines

#endif  // SILCA_BASELINES_RACHE_H_
