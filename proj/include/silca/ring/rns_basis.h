// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RING_RNS_BASIS_H_
#define SILCA_RING_RNS_BASIS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "silca/ring/modarith.h"

namespace silca::ring {

// Twiddle tables for one prime. Powers of psi (a primitive 2n-th root) are
// stored in bit-reversed order; the transform is the merged psi-twisted
// negacyclic NTT, so evaluation-domain slot i holds a(psi^(2*brv(i)+1)).
struct NttTables {
  u64 prime = 0;
  u64 psi = 0;
  std::vector<ShoupOperand> psi_powers;      // forward, bit-reversed
  std::vector<ShoupOperand> psi_inv_powers;  // inverse, bit-reversed
  ShoupOperand n_inverse;
};

// An ordered set of distinct NTT-friendly primes for a power-of-two ring
// dimension. Immutable after construction; share through shared_ptr.
class RnsBasis {
 public:
  // Throws ParameterError unless ring_dim is a power of two >= 2 and every
  // prime is distinct, prime, at most 62 bits and 1 mod 2*ring_dim.
  static std::shared_ptr<const RnsBasis> Create(std::size_t ring_dim,
                                                std::vector<u64> primes);

  std::size_t ring_dim() const { return ring_dim_; }
  int log_ring_dim() const { return log_n_; }
  std::size_t prime_count() const { return primes_.size(); }
  std::span<const u64> primes() const { return primes_; }
  u64 prime(std::size_t i) const { return primes_[i]; }
  const NttTables& tables(std::size_t i) const { return tables_[i]; }

  // Sum of log2 of the primes.
  double log2_modulus() const { return log2_q_; }

  bool SameAs(const RnsBasis& other) const {
    return this == &other ||
           (ring_dim_ == other.ring_dim_ && primes_ == other.primes_);
  }

 private:
  RnsBasis(std::size_t ring_dim, std::vector<u64> primes);

  std::size_t ring_dim_;
  int log_n_;
  std::vector<u64> primes_;
  std::vector<NttTables> tables_;
  double log2_q_;
};

}  // namespace silca::ring

#endif  // SILCA_RING_RNS_BASIS_H_
