// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_COMMON_RANDOM_H_
#define SILCA_COMMON_RANDOM_H_

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace silca {

using Seed = std::array<std::uint8_t, 32>;

// Expands a 32-byte seed into a ChaCha20 keystream. `stream_id` selects an
// independent stream under the same seed.
class ChaChaStream {
 public:
  explicit ChaChaStream(const Seed& seed, std::uint64_t stream_id = 0);

  void Fill(std::span<std::uint8_t> out);
  std::uint64_t NextU64();
  std::uint32_t NextU32();
  // Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t UniformBelow(std::uint64_t bound);

 private:
  void Refill();

  Seed key_;
  std::array<std::uint8_t, 12> nonce_{};
  std::uint32_t block_ = 0;
  std::array<std::uint8_t, 512> buffer_{};
  std::size_t pos_ = buffer_.size();
};

// Process-wide source of seeds and small uniform draws. Draws from the OS
// CSPRNG unless SILCA_SEED is set in the environment (or Reseed is called),
// in which case every draw is a deterministic function of that seed and a
// draw counter. The deterministic mode is for reproducible tests only.
class RandomSource {
 public:
  static RandomSource& Global();

  Seed NextSeed();
  std::uint64_t UniformBelow(std::uint64_t bound);
  // Uniform in [lo, hi], lo <= hi.
  std::uint64_t UniformInRange(std::uint64_t lo, std::uint64_t hi);

  bool deterministic() const { return deterministic_.load(); }
  void Reseed(std::string_view text);
  void UseSystemEntropy();

 private:
  RandomSource();

  std::atomic<bool> deterministic_{false};
  Seed master_{};
  std::atomic<std::uint64_t> counter_{0};
};

Seed SeedFromText(std::string_view text);
Seed SeedFromU64(std::uint64_t value);

}  // namespace silca

#endif  // SILCA_COMMON_RANDOM_H_
