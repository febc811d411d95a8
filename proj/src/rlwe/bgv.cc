// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/rlwe/bgv.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "silca/common/error.h"
#include "silca/he/serialize.h"

namespace silca::rlwe {

BgvBackend::BgvBackend(const he::SchemeParams& params)
    : IntegerBackend(params),
      core_(ring::RnsBasis::Create(params.ring_dim, params.primes),
            params.cbd_eta, params.plaintext_modulus,
            he::ParamsDigest(params)) {
  if (params.scheme != he::SchemeTag::kBgv) {
    throw ParameterError("BgvBackend needs bgv parameters");
  }
  he::ValidateParams(params);
}

he::KeyPair BgvBackend::KeyGen(const Seed& seed) const {
  return core_.KeyGen(seed);
}

he::Ciphertext BgvBackend::Encrypt(const he::PublicKey& pk,
                                   std::uint64_t m) const {
  CheckKey(pk.params_digest, "bgv_enc");
  if (m >= plaintext_modulus()) {
    throw DomainError("plaintext " + std::to_string(m) + " outside [0, " +
                      std::to_string(plaintext_modulus()) + ")");
  }
  counters_.enc.fetch_add(1, std::memory_order_relaxed);
  auto [c0, c1] = core_.EncryptZero(pk, RandomSource::Global().NextSeed());
  const auto m_res = ring::ScalarResidues(*core_.basis(), static_cast<std::int64_t>(m));
  ring::AddConstantInPlace(c0, m_res);
  he::Ciphertext c;
  c.tag = he::SchemeTag::kBgv;
  c.params_digest = descriptor_.params_digest;
  c.c0 = std::move(c0);
  c.c1 = std::move(c1);
  c.plaintext_modulus = plaintext_modulus();
  c.noise_log2 = core_.FreshNoiseLog2();
  c.consumption_id = he::NextConsumptionId();
  return c;
}

std::uint64_t BgvBackend::Decrypt(const he::SecretKey& sk,
                                  const he::Ciphertext& c) const {
  CheckKey(sk.params_digest, "bgv_dec");
  CheckCiphertext(c, "bgv_dec");
  counters_.dec.fetch_add(1, std::memory_order_relaxed);
  const ring::RingElement phase = core_.Phase(sk, c.c0, c.c1);
  const double max_log2 =
      core_.crt().MaxLog2Magnitude(phase.words(), phase.ring_dim());
  const double budget = core_.basis()->log2_modulus() - 1.0 - max_log2;
  // Within one bit of q/2 the centered phase can no longer be trusted.
  if (budget < 1.0) {
    throw DecryptionError("noise budget exhausted (" + std::to_string(budget) +
                          " bits left)");
  }
  std::vector<std::uint64_t> column(phase.prime_count());
  for (std::size_t i = 0; i < column.size(); ++i) {
    column[i] = phase.residues(i)[0];
  }
  mpz_class v = core_.crt().ComposeCentered(column);
  const mpz_class t(static_cast<unsigned long>(plaintext_modulus()));
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), t.get_mpz_t());
  return mpz_get_ui(r.get_mpz_t());
}

double BgvBackend::NoiseBudget(const he::SecretKey& sk,
                               const he::Ciphertext& c) const {
  CheckKey(sk.params_digest, "noise_budget");
  CheckCiphertext(c, "noise_budget");
  const ring::RingElement phase = core_.Phase(sk, c.c0, c.c1);
  const double max_log2 =
      core_.crt().MaxLog2Magnitude(phase.words(), phase.ring_dim());
  // The tracked bound only grows, so the estimate is monotone along a chain
  // even when fresh noise happens to cancel.
  const double budget =
      core_.basis()->log2_modulus() - 1.0 - std::max(max_log2, c.noise_log2);
  return budget < 1.0 ? 0.0 : budget;
}

he::Ciphertext BgvBackend::EvalAdd(he::Ciphertext a,
                                   const he::Ciphertext& b) const {
  CheckSameParams(a, b, "eval_add");
  counters_.add.fetch_add(1, std::memory_order_relaxed);
  ring::AddInPlace(a.c0, b.c0);
  ring::AddInPlace(a.c1, b.c1);
  a.noise_log2 = std::max(a.noise_log2, b.noise_log2) + 1.0;
  a.consumption_id = he::NextConsumptionId();
  return a;
}

he::Ciphertext BgvBackend::EvalAddPlain(he::Ciphertext c,
                                        std::uint64_t m) const {
  CheckCiphertext(c, "eval_add_plain");
  if (m >= plaintext_modulus()) throw DomainError("eval_add_plain: out of domain");
  counters_.add_plain.fetch_add(1, std::memory_order_relaxed);
  const auto m_res = ring::ScalarResidues(*core_.basis(), static_cast<std::int64_t>(m));
  ring::AddConstantInPlace(c.c0, m_res);
  c.consumption_id = he::NextConsumptionId();
  return c;
}

he::Ciphertext BgvBackend::EvalMulPlain(he::Ciphertext c,
                                        std::uint64_t s) const {
  CheckCiphertext(c, "eval_mul_plain");
  if (s >= plaintext_modulus()) {
    throw DomainError("eval_mul_plain: scalar " + std::to_string(s) +
                      " outside [0, " + std::to_string(plaintext_modulus()) + ")");
  }
  counters_.mul_plain.fetch_add(1, std::memory_order_relaxed);
  const auto s_res = ring::ScalarResidues(*core_.basis(), static_cast<std::int64_t>(s));
  ring::ScalarMulInPlace(c.c0, s_res);
  ring::ScalarMulInPlace(c.c1, s_res);
  if (s > 1) c.noise_log2 += std::log2(static_cast<double>(s));
  c.consumption_id = he::NextConsumptionId();
  return c;
}

he::Ciphertext BgvBackend::ReadCiphertext(std::istream& in) const {
  return he::ReadLatticeCiphertext(in, *this);
}

}  // namespace silca::rlwe
