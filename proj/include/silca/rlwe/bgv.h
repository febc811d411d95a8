// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RLWE_BGV_H_
#define SILCA_RLWE_BGV_H_

#include <memory>

#include "silca/he/backend.h"
#include "silca/rlwe/rlwe_core.h"

namespace silca::rlwe {

// Exact integer scheme in the BGV style. The plaintext m in [0, N) sits in
// the constant coefficient; the phase c0 + c1*s equals m + N*e.
class BgvBackend final : public he::IntegerBackend {
 public:
  explicit BgvBackend(const he::SchemeParams& params);

  std::shared_ptr<const ring::RnsBasis> basis() const override {
    return core_.basis();
  }

  he::KeyPair KeyGen(const Seed& seed) const override;
  he::Ciphertext Encrypt(const he::PublicKey& pk, std::uint64_t m) const override;
  std::uint64_t Decrypt(const he::SecretKey& sk,
                        const he::Ciphertext& c) const override;
  he::Ciphertext EvalAdd(he::Ciphertext a, const he::Ciphertext& b) const override;
  he::Ciphertext EvalAddPlain(he::Ciphertext c, std::uint64_t m) const override;
  he::Ciphertext EvalMulPlain(he::Ciphertext c, std::uint64_t s) const override;
  // log2(q/2) - log2(max |phase coefficient|), clamped at 0.
  double NoiseBudget(const he::SecretKey& sk,
                     const he::Ciphertext& c) const override;
  he::Ciphertext ReadCiphertext(std::istream& in) const override;

 private:
  RlweCore core_;
};

}  // namespace silca::rlwe

#endif  // SILCA_RLWE_BGV_H_
