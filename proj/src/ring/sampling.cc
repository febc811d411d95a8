// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/ring/sampling.h"

#include <bit>
#include <stdexcept>

#include "silca/common/error.h"

namespace silca::ring {

RingElement SampleUniform(std::shared_ptr<const RnsBasis> basis,
                          ChaChaStream& stream, Domain domain) {
  RingElement r = RingElement::Zero(basis, domain);
  std::vector<u64> words(r.ring_dim() * r.prime_count());
  for (std::size_t i = 0; i < r.prime_count(); ++i) {
    const u64 q = basis->prime(i);
    const int bits = std::bit_width(q);
    const u64 mask = bits >= 64 ? ~u64{0} : (u64{1} << bits) - 1;
    for (std::size_t j = 0; j < r.ring_dim(); ++j) {
      u64 v;
      do {
        v = stream.NextU64() & mask;
      } while (v >= q);
      words[i * r.ring_dim() + j] = v;
    }
  }
  return RingElement::FromResidues(std::move(basis), std::move(words), domain);
}

RingElement SampleUniform(std::shared_ptr<const RnsBasis> basis,
                          const Seed& seed) {
  ChaChaStream stream(seed, /*stream_id=*/0x756e69);
  return SampleUniform(std::move(basis), stream);
}

std::vector<std::int64_t> SampleCbdCoefficients(std::size_t n, int eta,
                                                ChaChaStream& stream) {
  if (eta < 1 || eta > 32) {
    throw ParameterError("centered binomial parameter must lie in [1, 32]");
  }
  const u64 mask = (u64{1} << eta) - 1;
  std::vector<std::int64_t> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const u64 bits = stream.NextU64();
    out[j] = std::popcount(bits & mask) - std::popcount((bits >> 32) & mask);
  }
  return out;
}

RingElement SampleError(std::shared_ptr<const RnsBasis> basis,
                        ChaChaStream& stream, int eta) {
  const auto coeffs = SampleCbdCoefficients(basis->ring_dim(), eta, stream);
  return RingElement::FromSigned(std::move(basis), coeffs);
}

RingElement SampleError(std::shared_ptr<const RnsBasis> basis,
                        const Seed& seed, int eta) {
  ChaChaStream stream(seed, /*stream_id=*/0x657272);
  return SampleError(std::move(basis), stream, eta);
}

std::vector<std::int64_t> SampleTernaryCoefficients(std::size_t n,
                                                    ChaChaStream& stream) {
  std::vector<std::int64_t> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = static_cast<std::int64_t>(stream.UniformBelow(3)) - 1;
  }
  return out;
}

}  // namespace silca::ring
