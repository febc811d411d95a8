// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/rlwe/ckks.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "silca/common/error.h"
#include "silca/he/serialize.h"

namespace silca::rlwe {
namespace {

constexpr double kAbsoluteTolerance = 1e-6;

// Exact conversion of an integral long double with |x| < 2^126.
ring::i128 ToI128(long double x) {
  const bool neg = x < 0;
  if (neg) x = -x;
  const long double two64 = 18446744073709551616.0L;
  const long double hi = std::floor(x / two64);
  const long double lo = x - hi * two64;
  ring::u128 v = (static_cast<ring::u128>(static_cast<std::uint64_t>(hi)) << 64) |
                 static_cast<std::uint64_t>(lo);
  const ring::i128 s = static_cast<ring::i128>(v);
  return neg ? -s : s;
}

long double FromI128(ring::i128 v) {
  const bool neg = v < 0;
  ring::u128 m = neg ? static_cast<ring::u128>(-(v + 1)) + 1 : static_cast<ring::u128>(v);
  const long double x = static_cast<long double>(static_cast<std::uint64_t>(m >> 64)) *
                            18446744073709551616.0L +
                        static_cast<long double>(static_cast<std::uint64_t>(m));
  return neg ? -x : x;
}

}  // namespace

EncodedReal CkksEncode(double v, double scale) {
  if (!std::isfinite(v)) throw ParameterError("ckks_encode: value is not finite");
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw ParameterError("ckks_encode: scale must be positive");
  }
  const long double x = std::round(static_cast<long double>(v) * scale);
  if (std::fabs(x) >= std::ldexp(1.0L, 126)) {
    throw ParameterError("ckks_encode: |v| * scale overflows the encoding");
  }
  return EncodedReal{ToI128(x), scale};
}

double CkksDecode(const EncodedReal& e) {
  return static_cast<double>(FromI128(e.value) / e.scale);
}

CkksBackend::CkksBackend(const he::SchemeParams& params)
    : RealBackend(params),
      core_(ring::RnsBasis::Create(params.ring_dim, params.primes),
            params.cbd_eta, 1, he::ParamsDigest(params)),
      scale_(std::ldexp(1.0, params.scale_log2)) {
  if (params.scheme != he::SchemeTag::kCkks) {
    throw ParameterError("CkksBackend needs ckks parameters");
  }
  he::ValidateParams(params);
}

void CkksBackend::CheckHeadroom(double magnitude, double scale,
                                const char* op) const {
  // Keep the encoded message two bits below q/2.
  if (magnitude == 0) return;
  const double bits = std::log2(magnitude) + std::log2(scale);
  if (bits >= core_.basis()->log2_modulus() - 3.0) {
    throw ParameterError(std::string(op) + ": scale overflow (message needs " +
                         std::to_string(bits) + " bits)");
  }
}

he::KeyPair CkksBackend::KeyGen(const Seed& seed) const {
  return core_.KeyGen(seed);
}

he::Ciphertext CkksBackend::Encrypt(const he::PublicKey& pk, double v) const {
  CheckKey(pk.params_digest, "ckks_enc");
  if (!std::isfinite(v)) throw DomainError("ckks_enc: value is not finite");
  CheckHeadroom(std::fabs(v), scale_, "ckks_enc");
  const EncodedReal e = CkksEncode(v, scale_);
  counters_.enc.fetch_add(1, std::memory_order_relaxed);
  auto [c0, c1] = core_.EncryptZero(pk, RandomSource::Global().NextSeed());
  ring::AddConstantInPlace(c0, ring::ScalarResiduesWide(*core_.basis(), e.value));
  he::Ciphertext c;
  c.tag = he::SchemeTag::kCkks;
  c.params_digest = descriptor_.params_digest;
  c.c0 = std::move(c0);
  c.c1 = std::move(c1);
  c.scale = scale_;
  c.noise_log2 = core_.FreshNoiseLog2();
  c.consumption_id = he::NextConsumptionId();
  return c;
}

double CkksBackend::Decrypt(const he::SecretKey& sk,
                            const he::Ciphertext& c) const {
  CheckKey(sk.params_digest, "ckks_dec");
  CheckCiphertext(c, "ckks_dec");
  counters_.dec.fetch_add(1, std::memory_order_relaxed);
  const auto column = core_.ConstantPhase(sk, c.c0, c.c1);
  const mpz_class v = core_.crt().ComposeCentered(column);
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(exp)) / c.scale;
}

he::Ciphertext CkksBackend::EvalAdd(he::Ciphertext a,
                                    const he::Ciphertext& b) const {
  CheckSameParams(a, b, "eval_add");
  if (std::fabs(a.scale / b.scale - 1.0) > 1e-12) {
    throw ParameterError("eval_add: operand scales differ");
  }
  counters_.add.fetch_add(1, std::memory_order_relaxed);
  ring::AddInPlace(a.c0, b.c0);
  ring::AddInPlace(a.c1, b.c1);
  a.noise_log2 = std::max(a.noise_log2, b.noise_log2) + 1.0;
  a.consumption_id = he::NextConsumptionId();
  return a;
}

he::Ciphertext CkksBackend::EvalAddPlain(he::Ciphertext c, double v) const {
  CheckCiphertext(c, "eval_add_plain");
  if (!std::isfinite(v)) throw DomainError("eval_add_plain: value is not finite");
  CheckHeadroom(std::fabs(v), c.scale, "eval_add_plain");
  const EncodedReal e = CkksEncode(v, c.scale);
  counters_.add_plain.fetch_add(1, std::memory_order_relaxed);
  ring::AddConstantInPlace(c.c0, ring::ScalarResiduesWide(*core_.basis(), e.value));
  c.consumption_id = he::NextConsumptionId();
  return c;
}

he::Ciphertext CkksBackend::EvalMulPlain(he::Ciphertext c,
                                         he::RealScalar s) const {
  CheckCiphertext(c, "eval_mul_plain");
  if (s.denominator == 0) throw DomainError("eval_mul_plain: zero denominator");
  const double value = s.value();
  if (!std::isfinite(value)) throw DomainError("eval_mul_plain: scalar not finite");
  const double new_scale = c.scale * scale_;
  CheckHeadroom(1.0, new_scale, "eval_mul_plain");
  const EncodedReal e = CkksEncode(value, scale_);
  counters_.mul_plain.fetch_add(1, std::memory_order_relaxed);
  const auto residues = ring::ScalarResiduesWide(*core_.basis(), e.value);
  ring::ScalarMulInPlace(c.c0, residues);
  ring::ScalarMulInPlace(c.c1, residues);
  c.scale = new_scale;
  if (e.value != 0) {
    c.noise_log2 += std::log2(std::fabs(static_cast<double>(FromI128(e.value))));
  }
  c.consumption_id = he::NextConsumptionId();
  return c;
}

double CkksBackend::Tolerance(double expected) const {
  return std::max(relative_tolerance() * std::fabs(expected), kAbsoluteTolerance);
}

he::Ciphertext CkksBackend::ReadCiphertext(std::istream& in) const {
  he::Ciphertext c = he::ReadLatticeCiphertext(in, *this);
  if (!(c.scale > 0) || !std::isfinite(c.scale)) {
    throw FormatError("ckks container carries an invalid scale");
  }
  return c;
}

}  // namespace silca::rlwe
