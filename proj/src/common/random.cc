// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/common/random.h"

#include <sodium.h>

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace silca {
namespace {

void EnsureSodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

ChaChaStream::ChaChaStream(const Seed& seed, std::uint64_t stream_id)
    : key_(seed) {
  EnsureSodium();
  std::memcpy(nonce_.data(), &stream_id, sizeof(stream_id));
}

void ChaChaStream::Refill() {
  static const std::array<std::uint8_t, 512> kZeros{};
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), kZeros.data(),
                                     buffer_.size(), nonce_.data(), block_,
                                     key_.data());
  block_ += static_cast<std::uint32_t>(buffer_.size() / 64);
  pos_ = 0;
}

void ChaChaStream::Fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) Refill();
    const std::size_t take = std::min(out.size() - done, buffer_.size() - pos_);
    std::memcpy(out.data() + done, buffer_.data() + pos_, take);
    pos_ += take;
    done += take;
  }
}

std::uint64_t ChaChaStream::NextU64() {
  if (buffer_.size() - pos_ < 8) {
    if (pos_ != buffer_.size()) pos_ = buffer_.size();
    Refill();
  }
  std::uint64_t v;
  std::memcpy(&v, buffer_.data() + pos_, 8);
  pos_ += 8;
  return v;
}

std::uint32_t ChaChaStream::NextU32() {
  return static_cast<std::uint32_t>(NextU64() >> 32);
}

std::uint64_t ChaChaStream::UniformBelow(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformBelow: bound is zero");
  if ((bound & (bound - 1)) == 0) return NextU64() & (bound - 1);
  // Largest multiple of bound representable; reject above it.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  for (;;) {
    const std::uint64_t v = NextU64();
    if (v < limit) return v % bound;
  }
}

RandomSource::RandomSource() {
  EnsureSodium();
  if (const char* env = std::getenv("SILCA_SEED"); env != nullptr && *env) {
    Reseed(env);
  }
}

RandomSource& RandomSource::Global() {
  static RandomSource source;
  return source;
}

void RandomSource::Reseed(std::string_view text) {
  master_ = SeedFromText(text);
  counter_.store(0);
  deterministic_.store(true);
}

void RandomSource::UseSystemEntropy() { deterministic_.store(false); }

Seed RandomSource::NextSeed() {
  Seed out;
  if (deterministic_.load()) {
    ChaChaStream stream(master_, counter_.fetch_add(1) + 1);
    stream.Fill(out);
  } else {
    randombytes_buf(out.data(), out.size());
  }
  return out;
}

std::uint64_t RandomSource::UniformBelow(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformBelow: bound is zero");
  if (deterministic_.load()) {
    ChaChaStream stream(master_, counter_.fetch_add(1) + 1);
    return stream.UniformBelow(bound);
  }
  if (bound <= 0xffffffffULL) {
    return randombytes_uniform(static_cast<std::uint32_t>(bound));
  }
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  for (;;) {
    std::uint64_t v;
    randombytes_buf(&v, sizeof(v));
    if (v < limit) return v % bound;
  }
}

std::uint64_t RandomSource::UniformInRange(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw std::invalid_argument("UniformInRange: empty range");
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) {
    const Seed s = NextSeed();
    std::uint64_t v;
    std::memcpy(&v, s.data(), sizeof(v));
    return v;
  }
  return lo + UniformBelow(span + 1);
}

Seed SeedFromText(std::string_view text) {
  EnsureSodium();
  Seed out;
  crypto_generichash(out.data(), out.size(),
                     reinterpret_cast<const unsigned char*>(text.data()),
                     text.size(), nullptr, 0);
  return out;
}

Seed SeedFromU64(std::uint64_t value) {
  Seed out{};
  std::memcpy(out.data(), &value, sizeof(value));
  return out;
}

}  // namespace silca
