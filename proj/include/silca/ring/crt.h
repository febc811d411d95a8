// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RING_CRT_H_
#define SILCA_RING_CRT_H_

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

#include "silca/ring/rns_basis.h"

namespace silca::ring {

// Reconstructs integers from their residues modulo the basis primes, mapped
// to the centered interval (-q/2, q/2].
class CrtComposer {
 public:
  explicit CrtComposer(const RnsBasis& basis);

  const mpz_class& modulus() const { return modulus_; }

  // residues[i] is the value modulo prime i.
  mpz_class ComposeCentered(std::span<const u64> residues) const;

  // log2 of the largest |centered coefficient| of a coefficient-domain
  // element given as prime-major residues; -infinity for the zero element.
  double MaxLog2Magnitude(std::span<const u64> prime_major,
                          std::size_t ring_dim) const;

 private:
  std::vector<u64> primes_;
  mpz_class modulus_;
  mpz_class half_;
  std::vector<mpz_class> partial_;  // (q / q_i) * ((q / q_i)^-1 mod q_i)
  // Two-prime fast path: q0^-1 mod q1.
  u64 q0_inv_mod_q1_ = 0;
};

}  // namespace silca::ring

#endif  // SILCA_RING_CRT_H_
