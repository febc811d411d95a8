// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/ring/rns_basis.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "silca/common/error.h"

namespace silca::ring {
namespace {

std::size_t BitReverse(std::size_t x, int bits) {
  std::size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

NttTables BuildTables(u64 q, std::size_t n, int log_n) {
  NttTables t;
  t.prime = q;
  t.psi = MinimalPrimitiveRoot(2 * n, q);
  const u64 psi_inv = ModInverse(t.psi, q);
  t.psi_powers.resize(n);
  t.psi_inv_powers.resize(n);
  u64 p = 1;
  u64 pi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = BitReverse(i, log_n);
    t.psi_powers[r] = ShoupOperand(p, q);
    t.psi_inv_powers[r] = ShoupOperand(pi, q);
    p = MulMod(p, t.psi, q);
    pi = MulMod(pi, psi_inv, q);
  }
  t.n_inverse = ShoupOperand(ModInverse(n % q, q), q);
  return t;
}

}  // namespace

std::shared_ptr<const RnsBasis> RnsBasis::Create(std::size_t ring_dim,
                                                 std::vector<u64> primes) {
  return std::shared_ptr<const RnsBasis>(
      new RnsBasis(ring_dim, std::move(primes)));
}

RnsBasis::RnsBasis(std::size_t ring_dim, std::vector<u64> primes)
    : ring_dim_(ring_dim), log_n_(0), primes_(std::move(primes)), log2_q_(0) {
  if (ring_dim_ < 2 || (ring_dim_ & (ring_dim_ - 1)) != 0) {
    throw ParameterError("ring dimension must be a power of two >= 2, got " +
                         std::to_string(ring_dim_));
  }
  while ((std::size_t{1} << log_n_) < ring_dim_) ++log_n_;
  if (primes_.empty()) throw ParameterError("RNS basis needs at least one prime");
  std::vector<u64> sorted = primes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParameterError("RNS primes must be pairwise distinct");
  }
  for (u64 q : primes_) {
    if (q >> kMaxPrimeBits != 0) {
      throw ParameterError("prime " + std::to_string(q) + " exceeds 62 bits");
    }
    if (!IsPrime(q)) {
      throw ParameterError(std::to_string(q) + " is not prime");
    }
    if ((q - 1) % (2 * ring_dim_) != 0) {
      throw ParameterError("prime " + std::to_string(q) +
                           " is not NTT-friendly for ring dimension " +
                           std::to_string(ring_dim_));
    }
    tables_.push_back(BuildTables(q, ring_dim_, log_n_));
    log2_q_ += std::log2(static_cast<double>(q));
  }
}

}  // namespace silca::ring
