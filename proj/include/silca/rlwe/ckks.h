// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RLWE_CKKS_H_
#define SILCA_RLWE_CKKS_H_

#include <memory>

#include "silca/he/backend.h"
#include "silca/ring/modarith.h"
#include "silca/rlwe/rlwe_core.h"

namespace silca::rlwe {

// A real scalar as round(v * scale).
struct EncodedReal {
  ring::i128 value = 0;
  double scale = 1.0;
};

// Throws ParameterError if |v| * scale does not fit in 126 bits or v is not
// finite.
EncodedReal CkksEncode(double v, double scale);
double CkksDecode(const EncodedReal& e);

// Approximate real scheme in the CKKS style, restricted to scalar
// (constant-coefficient) messages. No rescaling: the ciphertext carries its
// accumulated scale and decryption divides by it.
class CkksBackend final : public he::RealBackend {
 public:
  explicit CkksBackend(const he::SchemeParams& params);

  std::shared_ptr<const ring::RnsBasis> basis() const override {
    return core_.basis();
  }
  double scale() const { return scale_; }
  double relative_tolerance() const { return 1e-3; }

  he::KeyPair KeyGen(const Seed& seed) const override;
  he::Ciphertext Encrypt(const he::PublicKey& pk, double v) const override;
  double Decrypt(const he::SecretKey& sk, const he::Ciphertext& c) const override;
  he::Ciphertext EvalAdd(he::Ciphertext a, const he::Ciphertext& b) const override;
  he::Ciphertext EvalAddPlain(he::Ciphertext c, double v) const override;
  // Multiplies by round(s * scale); the result's scale is c.scale * scale.
  he::Ciphertext EvalMulPlain(he::Ciphertext c, he::RealScalar s) const override;
  double Tolerance(double expected) const override;
  he::Ciphertext ReadCiphertext(std::istream& in) const override;

 private:
  void CheckHeadroom(double magnitude, double scale, const char* op) const;

  RlweCore core_;
  double scale_;
};

}  // namespace silca::rlwe

#endif  // SILCA_RLWE_CKKS_H_
