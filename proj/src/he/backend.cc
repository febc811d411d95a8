// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/he/backend.h"

#include <atomic>
#include <string>

#include "silca/common/error.h"

namespace silca::he {

std::uint64_t NextConsumptionId() {
  static std::atomic<std::uint64_t> counter{0};
  return counter.fetch_add(1, std::memory_order_relaxed) + 1;
}

Backend::Backend(SchemeParams params) : params_(std::move(params)) {
  descriptor_.tag = params_.scheme;
  descriptor_.params_digest = ParamsDigest(params_);
  switch (params_.scheme) {
    case SchemeTag::kBgv:
      descriptor_.exact_integers = true;
      break;
    case SchemeTag::kCkks:
      descriptor_.approximate_reals = true;
      break;
    case SchemeTag::kMock:
      descriptor_.exact_integers = params_.plaintext_modulus != 0;
      descriptor_.approximate_reals = params_.plaintext_modulus == 0;
      break;
  }
}

Ciphertext Backend::EvalMul(const Ciphertext&, const Ciphertext&) const {
  throw UnsupportedError(
      "ciphertext-ciphertext multiplication is not provided by any backend");
}

double Backend::NoiseBudget(const SecretKey&, const Ciphertext&) const {
  throw UnsupportedError("noise budget is defined for exact schemes only");
}

OpCounts Backend::counts() const {
  OpCounts c;
  c.enc = counters_.enc.load();
  c.dec = counters_.dec.load();
  c.add = counters_.add.load();
  c.add_plain = counters_.add_plain.load();
  c.mul_plain = counters_.mul_plain.load();
  return c;
}

void Backend::ResetCounts() const {
  counters_.enc = 0;
  counters_.dec = 0;
  counters_.add = 0;
  counters_.add_plain = 0;
  counters_.mul_plain = 0;
}

void Backend::CheckCiphertext(const Ciphertext& c, const char* op) const {
  if (c.tag != descriptor_.tag) {
    throw UsageError(std::string(op) + ": ciphertext belongs to scheme " +
                     std::string(SchemeName(c.tag)));
  }
  if (c.params_digest != descriptor_.params_digest) {
    throw UsageError(std::string(op) + ": parameter digest mismatch");
  }
}

void Backend::CheckSameParams(const Ciphertext& a, const Ciphertext& b,
                              const char* op) const {
  CheckCiphertext(a, op);
  CheckCiphertext(b, op);
}

void Backend::CheckKey(const Digest& key_digest, const char* op) const {
  if (key_digest != descriptor_.params_digest) {
    throw UsageError(std::string(op) + ": key was generated for other parameters");
  }
}

std::shared_ptr<const IntegerBackend> AsInteger(
    std::shared_ptr<const Backend> backend) {
  auto out = std::dynamic_pointer_cast<const IntegerBackend>(backend);
  if (!out) throw UsageError("backend does not provide exact integers");
  return out;
}

std::shared_ptr<const RealBackend> AsReal(
    std::shared_ptr<const Backend> backend) {
  auto out = std::dynamic_pointer_cast<const RealBackend>(backend);
  if (!out) throw UsageError("backend does not provide real arithmetic");
  return out;
}

}  // namespace silca::he
