// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/he/mock.h"

#include <cmath>
#include <cstring>
#include <istream>
#include <string>

#include "silca/common/error.h"
#include "silca/he/serialize.h"

namespace silca::he {
namespace {

std::array<std::uint64_t, 2> FreshNonce() {
  const Seed s = RandomSource::Global().NextSeed();
  std::array<std::uint64_t, 2> n{};
  std::memcpy(n.data(), s.data(), sizeof(n));
  return n;
}

Ciphertext MakeMock(const BackendDescriptor& d, mpq_class value,
                    std::uint64_t modulus) {
  Ciphertext c;
  c.tag = SchemeTag::kMock;
  c.params_digest = d.params_digest;
  c.plaintext_modulus = modulus;
  c.mock = MockPayload{std::move(value), FreshNonce(), 0};
  c.consumption_id = NextConsumptionId();
  return c;
}

void Touch(Ciphertext& c) {
  c.mock->noise_ops += 1;
  c.consumption_id = NextConsumptionId();
}

mpq_class ExactDouble(double v) {
  if (!std::isfinite(v)) throw DomainError("plaintext must be finite");
  mpq_class q(v);  // exact: every finite double is a dyadic rational
  q.canonicalize();
  return q;
}

std::vector<std::uint64_t> ExportLimbs(const mpz_class& z) {
  std::size_t count = 0;
  std::vector<std::uint64_t> limbs((mpz_sizeinbase(z.get_mpz_t(), 2) + 63) / 64 + 1);
  mpz_export(limbs.data(), &count, -1, sizeof(std::uint64_t), 0, 0,
             z.get_mpz_t());
  limbs.resize(count);
  return limbs;
}

mpz_class ImportLimbs(const std::uint64_t* words, std::size_t count) {
  mpz_class z;
  if (count == 0) return z;
  mpz_import(z.get_mpz_t(), count, -1, sizeof(std::uint64_t), 0, 0, words);
  return z;
}

Ciphertext ReadMock(std::istream& in, const BackendDescriptor& d) {
  const ContainerHeader h = ReadContainerHeader(in);
  if (h.tag != SchemeTag::kMock) throw FormatError("not a mock ciphertext");
  if (h.digest != d.params_digest) {
    throw UsageError("mock ciphertext: parameter digest mismatch");
  }
  if (h.prime_count != 1 || h.ring_dim < 3) {
    throw FormatError("mock ciphertext: bad payload shape");
  }
  const auto c0 = ReadWords(in, h.ring_dim);
  const auto c1 = ReadWords(in, h.ring_dim);
  std::size_t pos = 0;
  auto take = [&]() {
    if (pos >= c0.size()) throw FormatError("mock ciphertext: truncated value");
    return c0[pos++];
  };
  const std::uint64_t sign = take();
  const std::uint64_t num_len = take();
  if (num_len > c0.size()) throw FormatError("mock ciphertext: bad limb count");
  if (pos + num_len > c0.size()) throw FormatError("mock ciphertext: truncated");
  mpz_class num = ImportLimbs(c0.data() + pos, num_len);
  pos += num_len;
  const std::uint64_t den_len = take();
  if (pos + den_len > c0.size()) throw FormatError("mock ciphertext: truncated");
  mpz_class den = ImportLimbs(c0.data() + pos, den_len);
  if (den == 0) throw FormatError("mock ciphertext: zero denominator");
  if (sign > 1) throw FormatError("mock ciphertext: bad sign word");
  if (sign == 1) num = -num;
  Ciphertext c;
  c.tag = SchemeTag::kMock;
  c.params_digest = h.digest;
  c.plaintext_modulus = h.scalar_bits;
  mpq_class value(num, den);
  value.canonicalize();
  c.mock = MockPayload{std::move(value), {c1[0], c1[1]}, c1[2]};
  c.consumption_id = NextConsumptionId();
  return c;
}

}  // namespace

// Encoded mock value words, used by the serializer.
std::vector<std::uint64_t> EncodeMockValue(const mpq_class& value) {
  std::vector<std::uint64_t> out;
  out.push_back(value < 0 ? 1 : 0);
  mpz_class num = value.get_num();
  if (num < 0) num = -num;
  const auto nl = ExportLimbs(num);
  const auto dl = ExportLimbs(value.get_den());
  out.push_back(nl.size());
  out.insert(out.end(), nl.begin(), nl.end());
  out.push_back(dl.size());
  out.insert(out.end(), dl.begin(), dl.end());
  return out;
}

MockIntegerBackend::MockIntegerBackend(std::uint64_t plaintext_modulus)
    : IntegerBackend(MockParams(plaintext_modulus)) {
  if (plaintext_modulus < 2) {
    throw ParameterError("mock integer backend needs a modulus >= 2");
  }
}

KeyPair MockIntegerBackend::KeyGen(const Seed&) const {
  KeyPair kp;
  kp.secret.params_digest = descriptor_.params_digest;
  kp.pub.params_digest = descriptor_.params_digest;
  return kp;
}

Ciphertext MockIntegerBackend::Encrypt(const PublicKey& pk,
                                       std::uint64_t m) const {
  CheckKey(pk.params_digest, "enc");
  if (m >= plaintext_modulus()) {
    throw DomainError("plaintext " + std::to_string(m) + " outside [0, " +
                      std::to_string(plaintext_modulus()) + ")");
  }
  counters_.enc.fetch_add(1, std::memory_order_relaxed);
  return MakeMock(descriptor_, mpq_class(mpz_class(static_cast<unsigned long>(m))),
                  plaintext_modulus());
}

std::uint64_t MockIntegerBackend::Decrypt(const SecretKey& sk,
                                          const Ciphertext& c) const {
  CheckKey(sk.params_digest, "dec");
  CheckCiphertext(c, "dec");
  counters_.dec.fetch_add(1, std::memory_order_relaxed);
  if (NoiseBudget(sk, c) <= 0.0) {
    throw DecryptionError("mock noise budget exhausted");
  }
  return mpz_get_ui(c.mock->value.get_num_mpz_t());
}

Ciphertext MockIntegerBackend::EvalAdd(Ciphertext a,
                                       const Ciphertext& b) const {
  CheckSameParams(a, b, "eval_add");
  counters_.add.fetch_add(1, std::memory_order_relaxed);
  mpz_class v = a.mock->value.get_num() + b.mock->value.get_num();
  v %= mpz_class(static_cast<unsigned long>(plaintext_modulus()));
  a.mock->value = mpq_class(v);
  a.mock->noise_ops = std::max(a.mock->noise_ops, b.mock->noise_ops);
  Touch(a);
  return a;
}

Ciphertext MockIntegerBackend::EvalAddPlain(Ciphertext c,
                                            std::uint64_t m) const {
  CheckCiphertext(c, "eval_add_plain");
  if (m >= plaintext_modulus()) throw DomainError("eval_add_plain: out of domain");
  counters_.add_plain.fetch_add(1, std::memory_order_relaxed);
  mpz_class v = c.mock->value.get_num() + mpz_class(static_cast<unsigned long>(m));
  v %= mpz_class(static_cast<unsigned long>(plaintext_modulus()));
  c.mock->value = mpq_class(v);
  Touch(c);
  return c;
}

Ciphertext MockIntegerBackend::EvalMulPlain(Ciphertext c,
                                            std::uint64_t s) const {
  CheckCiphertext(c, "eval_mul_plain");
  if (s >= plaintext_modulus()) throw DomainError("eval_mul_plain: scalar out of domain");
  counters_.mul_plain.fetch_add(1, std::memory_order_relaxed);
  mpz_class v = c.mock->value.get_num() * mpz_class(static_cast<unsigned long>(s));
  v %= mpz_class(static_cast<unsigned long>(plaintext_modulus()));
  c.mock->value = mpq_class(v);
  Touch(c);
  return c;
}

double MockIntegerBackend::NoiseBudget(const SecretKey& sk,
                                       const Ciphertext& c) const {
  CheckKey(sk.params_digest, "noise_budget");
  CheckCiphertext(c, "noise_budget");
  const double b = 128.0 - 2.0 * static_cast<double>(c.mock->noise_ops);
  return b > 0 ? b : 0.0;
}

Ciphertext MockIntegerBackend::ReadCiphertext(std::istream& in) const {
  return ReadMock(in, descriptor_);
}

MockRealBackend::MockRealBackend() : RealBackend(MockParams(0)) {}

KeyPair MockRealBackend::KeyGen(const Seed&) const {
  KeyPair kp;
  kp.secret.params_digest = descriptor_.params_digest;
  kp.pub.params_digest = descriptor_.params_digest;
  return kp;
}

Ciphertext MockRealBackend::Encrypt(const PublicKey& pk, double v) const {
  CheckKey(pk.params_digest, "enc");
  mpq_class q = ExactDouble(v);
  counters_.enc.fetch_add(1, std::memory_order_relaxed);
  return MakeMock(descriptor_, std::move(q), 0);
}

mpq_class MockRealBackend::DecryptExact(const SecretKey& sk,
                                        const Ciphertext& c) const {
  CheckKey(sk.params_digest, "dec");
  CheckCiphertext(c, "dec");
  counters_.dec.fetch_add(1, std::memory_order_relaxed);
  return c.mock->value;
}

double MockRealBackend::Decrypt(const SecretKey& sk, const Ciphertext& c) const {
  return DecryptExact(sk, c).get_d();
}

Ciphertext MockRealBackend::EvalAdd(Ciphertext a, const Ciphertext& b) const {
  CheckSameParams(a, b, "eval_add");
  counters_.add.fetch_add(1, std::memory_order_relaxed);
  a.mock->value += b.mock->value;
  a.mock->noise_ops = std::max(a.mock->noise_ops, b.mock->noise_ops);
  Touch(a);
  return a;
}

Ciphertext MockRealBackend::EvalAddPlain(Ciphertext c, double v) const {
  CheckCiphertext(c, "eval_add_plain");
  const mpq_class q = ExactDouble(v);
  counters_.add_plain.fetch_add(1, std::memory_order_relaxed);
  c.mock->value += q;
  Touch(c);
  return c;
}

Ciphertext MockRealBackend::EvalMulPlain(Ciphertext c, RealScalar s) const {
  CheckCiphertext(c, "eval_mul_plain");
  if (s.denominator == 0) throw DomainError("eval_mul_plain: zero denominator");
  mpq_class q = ExactDouble(s.numerator);
  q /= mpq_class(mpz_class(static_cast<unsigned long>(s.denominator)));
  counters_.mul_plain.fetch_add(1, std::memory_order_relaxed);
  c.mock->value *= q;
  Touch(c);
  return c;
}

double MockRealBackend::Tolerance(double) const { return 0.0; }

Ciphertext MockRealBackend::ReadCiphertext(std::istream& in) const {
  return ReadMock(in, descriptor_);
}

}  // namespace silca::he
