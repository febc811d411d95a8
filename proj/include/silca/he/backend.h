// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_HE_BACKEND_H_
#define SILCA_HE_BACKEND_H_

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>

#include "silca/common/random.h"
#include "silca/he/ciphertext.h"
#include "silca/he/keys.h"
#include "silca/he/params.h"

namespace silca::he {

struct BackendDescriptor {
  SchemeTag tag = SchemeTag::kMock;
  Digest params_digest{};
  bool exact_integers = false;
  bool approximate_reals = false;
};

// Snapshot of the per-backend operation counters.
struct OpCounts {
  std::uint64_t enc = 0;
  std::uint64_t dec = 0;
  std::uint64_t add = 0;
  std::uint64_t add_plain = 0;
  std::uint64_t mul_plain = 0;
};

// A plaintext real scalar given as numerator / denominator. Approximate
// backends evaluate the quotient in double precision; the mock backend keeps
// it exact.
struct RealScalar {
  double numerator = 1.0;
  std::uint64_t denominator = 1;

  double value() const { return numerator / static_cast<double>(denominator); }
};

// The scheme tuple (KeyGen, Enc, Dec, add, mul, mul-by-plaintext). Instances
// are immutable after construction and safe for concurrent use; the only
// mutable state is the atomic operation counters.
class Backend {
 public:
  explicit Backend(SchemeParams params);
  virtual ~Backend() = default;
  Backend(const Backend&) = delete;
  Backend& operator=(const Backend&) = delete;

  const SchemeParams& params() const { return params_; }
  const BackendDescriptor& descriptor() const { return descriptor_; }
  SchemeTag tag() const { return descriptor_.tag; }
  // Ring the ciphertexts live in; null for the mock backend.
  virtual std::shared_ptr<const ring::RnsBasis> basis() const { return nullptr; }

  // Deterministic in `seed`.
  virtual KeyPair KeyGen(const Seed& seed) const = 0;

  // Encryption of a small positive integer in the backend's plaintext
  // domain. Used to fill cache banks with factor encryptions.
  virtual Ciphertext EncryptFactor(const PublicKey& pk,
                                   std::uint64_t value) const = 0;

  virtual Ciphertext EvalAdd(Ciphertext a, const Ciphertext& b) const = 0;

  // Ciphertext-ciphertext multiplication is reserved in the interface but no
  // backend provides it; always throws UnsupportedError.
  Ciphertext EvalMul(const Ciphertext& a, const Ciphertext& b) const;

  // Remaining noise headroom in bits. Exact schemes only; approximate
  // backends throw UnsupportedError.
  virtual double NoiseBudget(const SecretKey& sk, const Ciphertext& c) const;

  // Reads one container written by WriteCiphertext; validates the scheme tag
  // and parameter digest against this backend.
  virtual Ciphertext ReadCiphertext(std::istream& in) const = 0;

  OpCounts counts() const;
  void ResetCounts() const;

 protected:
  void CheckCiphertext(const Ciphertext& c, const char* op) const;
  void CheckSameParams(const Ciphertext& a, const Ciphertext& b,
                       const char* op) const;
  void CheckKey(const Digest& key_digest, const char* op) const;

  struct Counters {
    std::atomic<std::uint64_t> enc{0};
    std::atomic<std::uint64_t> dec{0};
    std::atomic<std::uint64_t> add{0};
    std::atomic<std::uint64_t> add_plain{0};
    std::atomic<std::uint64_t> mul_plain{0};
  };
  mutable Counters counters_;
  SchemeParams params_;
  BackendDescriptor descriptor_;
};

// Exact arithmetic modulo a plaintext modulus N.
class IntegerBackend : public Backend {
 public:
  using Backend::Backend;

  std::uint64_t plaintext_modulus() const { return params_.plaintext_modulus; }

  // m in [0, N); throws DomainError otherwise.
  virtual Ciphertext Encrypt(const PublicKey& pk, std::uint64_t m) const = 0;
  // Throws DecryptionError when the noise budget is exhausted.
  virtual std::uint64_t Decrypt(const SecretKey& sk,
                                const Ciphertext& c) const = 0;
  virtual Ciphertext EvalAddPlain(Ciphertext c, std::uint64_t m) const = 0;
  // Scalar s in [0, N). Pure coefficient scaling.
  virtual Ciphertext EvalMulPlain(Ciphertext c, std::uint64_t s) const = 0;

  Ciphertext EncryptFactor(const PublicKey& pk,
                           std::uint64_t value) const override {
    return Encrypt(pk, value);
  }
};

// Approximate (or, for the mock, exact rational) real arithmetic.
class RealBackend : public Backend {
 public:
  using Backend::Backend;

  virtual Ciphertext Encrypt(const PublicKey& pk, double v) const = 0;
  virtual double Decrypt(const SecretKey& sk, const Ciphertext& c) const = 0;
  virtual Ciphertext EvalAddPlain(Ciphertext c, double v) const = 0;
  virtual Ciphertext EvalMulPlain(Ciphertext c, RealScalar s) const = 0;

  // Largest acceptable |Decrypt - expected| for a depth <= 2 result.
  virtual double Tolerance(double expected) const = 0;

  Ciphertext EncryptFactor(const PublicKey& pk,
                           std::uint64_t value) const override {
    return Encrypt(pk, static_cast<double>(value));
  }
};

// Downcasts; throw UsageError if the backend has the other capability.
std::shared_ptr<const IntegerBackend> AsInteger(
    std::shared_ptr<const Backend> backend);
std::shared_ptr<const RealBackend> AsReal(
    std::shared_ptr<const Backend> backend);

}  // namespace silca::he

#endif  // SILCA_HE_BACKEND_H_
