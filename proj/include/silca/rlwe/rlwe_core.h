// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RLWE_RLWE_CORE_H_
#define SILCA_RLWE_RLWE_CORE_H_

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "silca/common/random.h"
#include "silca/he/keys.h"
#include "silca/ring/crt.h"
#include "silca/ring/ring_element.h"

namespace silca::rlwe {

// Public-key RLWE machinery shared by the BGV- and CKKS-style backends.
// `noise_factor` is the plaintext modulus t for BGV (errors are scaled by
// t) and 1 for CKKS.
class RlweCore {
 public:
  RlweCore(std::shared_ptr<const ring::RnsBasis> basis, int eta,
           std::uint64_t noise_factor, const he::Digest& digest);

  const std::shared_ptr<const ring::RnsBasis>& basis() const { return basis_; }
  const ring::CrtComposer& crt() const { return crt_; }

  he::KeyPair KeyGen(const Seed& seed) const;

  // (c0, c1) = (b*u + f*e0, a*u + f*e1), coefficient domain.
  std::pair<ring::RingElement, ring::RingElement> EncryptZero(
      const he::PublicKey& pk, const Seed& seed) const;

  // c0 + c1*s over the full ring (coefficient domain).
  ring::RingElement Phase(const he::SecretKey& sk, const ring::RingElement& c0,
                          const ring::RingElement& c1) const;

  // Constant coefficient of c0 + c1*s, one residue per prime, in O(n) using
  // the ternary secret directly.
  std::vector<std::uint64_t> ConstantPhase(const he::SecretKey& sk,
                                           const ring::RingElement& c0,
                                           const ring::RingElement& c1) const;

  // Six-sigma bound (log2) on a fresh phase noise coefficient.
  double FreshNoiseLog2() const { return fresh_noise_log2_; }

 private:
  std::shared_ptr<const ring::RnsBasis> basis_;
  int eta_;
  std::uint64_t noise_factor_;
  he::Digest digest_;
  ring::CrtComposer crt_;
  double fresh_noise_log2_;
};

}  // namespace silca::rlwe

#endif  // SILCA_RLWE_RLWE_CORE_H_
