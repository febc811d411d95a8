// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/rlwe/rlwe_core.h"

#include <cmath>

#include "silca/common/error.h"
#include "silca/ring/sampling.h"

namespace silca::rlwe {
namespace {

enum StreamId : std::uint64_t {
  kSecret = 1,
  kPublicA = 2,
  kPublicE = 3,
  kEphemeral = 4,
  kError0 = 5,
  kError1 = 6,
};

ring::RingElement ScaledError(const std::shared_ptr<const ring::RnsBasis>& basis,
                              ChaChaStream& stream, int eta,
                              std::uint64_t factor) {
  auto coeffs = ring::SampleCbdCoefficients(basis->ring_dim(), eta, stream);
  if (factor != 1) {
    for (auto& c : coeffs) c *= static_cast<std::int64_t>(factor);
  }
  return ring::RingElement::FromSigned(basis, coeffs);
}

}  // namespace

RlweCore::RlweCore(std::shared_ptr<const ring::RnsBasis> basis, int eta,
                   std::uint64_t noise_factor, const he::Digest& digest)
    : basis_(std::move(basis)),
      eta_(eta),
      noise_factor_(noise_factor),
      digest_(digest),
      crt_(*basis_) {
  const double n = static_cast<double>(basis_->ring_dim());
  const double sigma = static_cast<double>(noise_factor_) *
                       std::sqrt(2.0 * n * eta_ / 3.0 + eta_ / 2.0);
  fresh_noise_log2_ = std::log2(6.0 * sigma);
}

he::KeyPair RlweCore::KeyGen(const Seed& seed) const {
  he::KeyPair kp;
  ChaChaStream s_stream(seed, kSecret);
  ChaChaStream a_stream(seed, kPublicA);
  ChaChaStream e_stream(seed, kPublicE);

  kp.secret.params_digest = digest_;
  kp.secret.ternary = ring::SampleTernaryCoefficients(basis_->ring_dim(), s_stream);
  kp.secret.s_eval = ring::NttForward(
      ring::RingElement::FromSigned(basis_, kp.secret.ternary));

  ring::RingElement a = ring::SampleUniform(basis_, a_stream, ring::Domain::kEvaluation);
  ring::RingElement e = ring::NttForward(ScaledError(basis_, e_stream, eta_, noise_factor_));
  ring::RingElement b = a;
  ring::PointwiseMulInPlace(b, kp.secret.s_eval);
  ring::AddInPlace(b, e);
  ring::NegateInPlace(b);

  kp.pub.params_digest = digest_;
  kp.pub.b_eval = std::move(b);
  kp.pub.a_eval = std::move(a);
  return kp;
}

std::pair<ring::RingElement, ring::RingElement> RlweCore::EncryptZero(
    const he::PublicKey& pk, const Seed& seed) const {
  ChaChaStream u_stream(seed, kEphemeral);
  ChaChaStream e0_stream(seed, kError0);
  ChaChaStream e1_stream(seed, kError1);
  const auto u_coeffs = ring::SampleTernaryCoefficients(basis_->ring_dim(), u_stream);
  const ring::RingElement u =
      ring::NttForward(ring::RingElement::FromSigned(basis_, u_coeffs));

  ring::RingElement c0 = pk.b_eval;
  ring::PointwiseMulInPlace(c0, u);
  ring::NttInverseInPlace(c0);
  ring::AddInPlace(c0, ScaledError(basis_, e0_stream, eta_, noise_factor_));

  ring::RingElement c1 = pk.a_eval;
  ring::PointwiseMulInPlace(c1, u);
  ring::NttInverseInPlace(c1);
  ring::AddInPlace(c1, ScaledError(basis_, e1_stream, eta_, noise_factor_));
  return {std::move(c0), std::move(c1)};
}

ring::RingElement RlweCore::Phase(const he::SecretKey& sk,
                                  const ring::RingElement& c0,
                                  const ring::RingElement& c1) const {
  ring::RingElement t = ring::NttForward(c1);
  ring::PointwiseMulInPlace(t, sk.s_eval);
  ring::NttInverseInPlace(t);
  ring::AddInPlace(t, c0);
  return t;
}

std::vector<std::uint64_t> RlweCore::ConstantPhase(
    const he::SecretKey& sk, const ring::RingElement& c0,
    const ring::RingElement& c1) const {
  const std::size_t n = basis_->ring_dim();
  if (sk.ternary.size() != n) throw UsageError("secret key shape mismatch");
  std::vector<std::uint64_t> out(basis_->prime_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t q = basis_->prime(i);
    const auto a = c1.residues(i);
    // Constant term of a*s mod X^n+1: a0*s0 - sum_{j>=1} a_j * s_{n-j}.
    std::uint64_t acc = c0.residues(i)[0];
    auto apply = [&](std::uint64_t coeff, std::int64_t sign) {
      if (sign > 0) acc = ring::AddMod(acc, coeff, q);
      if (sign < 0) acc = ring::SubMod(acc, coeff, q);
    };
    apply(a[0], sk.ternary[0]);
    for (std::size_t j = 1; j < n; ++j) apply(a[j], -sk.ternary[n - j]);
    out[i] = acc;
  }
  return out;
}

}  // namespace silca::rlwe
