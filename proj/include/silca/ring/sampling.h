// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RING_SAMPLING_H_
#define SILCA_RING_SAMPLING_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "silca/common/random.h"
#include "silca/ring/ring_element.h"

namespace silca::ring {

inline constexpr int kDefaultCbdEta = 8;

// Uniform residues modulo every prime. The result is marked with `domain`
// (uniform in one domain is uniform in the other).
RingElement SampleUniform(std::shared_ptr<const RnsBasis> basis,
                          ChaChaStream& stream,
                          Domain domain = Domain::kCoefficient);
RingElement SampleUniform(std::shared_ptr<const RnsBasis> basis,
                          const Seed& seed);

// Centered binomial coefficients: popcount(eta bits) - popcount(eta bits),
// supported on [-eta, eta] with variance eta/2.
std::vector<std::int64_t> SampleCbdCoefficients(std::size_t n, int eta,
                                                ChaChaStream& stream);
RingElement SampleError(std::shared_ptr<const RnsBasis> basis,
                        ChaChaStream& stream, int eta = kDefaultCbdEta);
RingElement SampleError(std::shared_ptr<const RnsBasis> basis,
                        const Seed& seed, int eta = kDefaultCbdEta);

// Uniform ternary coefficients in {-1, 0, 1}.
std::vector<std::int64_t> SampleTernaryCoefficients(std::size_t n,
                                                    ChaChaStream& stream);

}  // namespace silca::ring

#endif  // SILCA_RING_SAMPLING_H_
