// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_HE_KEYS_H_
#define SILCA_HE_KEYS_H_

#include <cstdint>
#include <vector>

#include "silca/he/params.h"
#include "silca/ring/ring_element.h"

namespace silca::he {

struct SecretKey {
  Digest params_digest{};
  std::vector<std::int64_t> ternary;  // coefficients in {-1, 0, 1}
  ring::RingElement s_eval;           // NTT of s
};

// RLWE sample (b, a) with b = -(a*s + t*e), both in evaluation domain.
struct PublicKey {
  Digest params_digest{};
  ring::RingElement b_eval;
  ring::RingElement a_eval;
};

struct KeyPair {
  SecretKey secret;
  PublicKey pub;
};

}  // namespace silca::he

#endif  // SILCA_HE_KEYS_H_
