// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_HE_CIPHERTEXT_H_
#define SILCA_HE_CIPHERTEXT_H_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>

#include "silca/he/params.h"
#include "silca/ring/ring_element.h"

namespace silca::he {

// Process-unique token; never returns the same value twice.
std::uint64_t NextConsumptionId();

// Payload of the mock backend: the plaintext itself plus a fresh nonce.
struct MockPayload {
  mpq_class value;
  std::array<std::uint64_t, 2> nonce{};
  std::uint64_t noise_ops = 0;
};

// Lattice ciphertexts are (c0, c1) in coefficient domain with
// c0 + c1*s = encoded message + noise.
struct Ciphertext {
  SchemeTag tag = SchemeTag::kMock;
  Digest params_digest{};
  ring::RingElement c0;
  ring::RingElement c1;
  std::optional<MockPayload> mock;
  // CKKS: accumulated encoding scale. Unused otherwise.
  double scale = 1.0;
  // BGV and integer mock: plaintext modulus N. Unused otherwise.
  std::uint64_t plaintext_modulus = 0;
  // Informational estimate of log2 of the noise magnitude.
  double noise_log2 = 0.0;
  std::uint64_t consumption_id = 0;
};

}  // namespace silca::he

#endif  // SILCA_HE_CIPHERTEXT_H_
