// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_HE_MOCK_H_
#define SILCA_HE_MOCK_H_

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "silca/he/backend.h"

namespace silca::he {

// Mock ciphertexts carry the plaintext in the clear with a fresh 128-bit
// nonce and a count of homomorphic operations applied. All identities hold
// exactly, so these backends serve as the algorithm-level oracle.

// Integers modulo a plaintext modulus N >= 2.
class MockIntegerBackend final : public IntegerBackend {
 public:
  explicit MockIntegerBackend(std::uint64_t plaintext_modulus);

  KeyPair KeyGen(const Seed& seed) const override;
  Ciphertext Encrypt(const PublicKey& pk, std::uint64_t m) const override;
  std::uint64_t Decrypt(const SecretKey& sk, const Ciphertext& c) const override;
  Ciphertext EvalAdd(Ciphertext a, const Ciphertext& b) const override;
  Ciphertext EvalAddPlain(Ciphertext c, std::uint64_t m) const override;
  Ciphertext EvalMulPlain(Ciphertext c, std::uint64_t s) const override;
  // Synthetic: 128 bits minus two per homomorphic operation.
  double NoiseBudget(const SecretKey& sk, const Ciphertext& c) const override;
  Ciphertext ReadCiphertext(std::istream& in) const override;
};

// Exact rationals.
class MockRealBackend final : public RealBackend {
 public:
  MockRealBackend();

  KeyPair KeyGen(const Seed& seed) const override;
  Ciphertext Encrypt(const PublicKey& pk, double v) const override;
  double Decrypt(const SecretKey& sk, const Ciphertext& c) const override;
  // Exact rational plaintext, for oracle comparisons.
  mpq_class DecryptExact(const SecretKey& sk, const Ciphertext& c) const;
  Ciphertext EvalAdd(Ciphertext a, const Ciphertext& b) const override;
  Ciphertext EvalAddPlain(Ciphertext c, double v) const override;
  Ciphertext EvalMulPlain(Ciphertext c, RealScalar s) const override;
  double Tolerance(double expected) const override;
  Ciphertext ReadCiphertext(std::istream& in) const override;
};

// Word encoding of a mock plaintext used inside the ciphertext container.
std::vector<std::uint64_t> EncodeMockValue(const mpq_class& value);

}  // namespace silca::he

#endif  // SILCA_HE_MOCK_H_
