// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RING_RING_ELEMENT_H_
#define SILCA_RING_RING_ELEMENT_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "silca/ring/rns_basis.h"

namespace silca::ring {

enum class Domain : std::uint8_t { kCoefficient, kEvaluation };

// An element of Z_q[X]/(X^n + 1) in RNS form. Residues are stored
// prime-major: residues(i)[j] is coefficient (or slot) j modulo prime i.
class RingElement {
 public:
  RingElement() = default;

  static RingElement Zero(std::shared_ptr<const RnsBasis> basis,
                          Domain domain = Domain::kCoefficient);
  // Constant polynomial with the given signed value.
  static RingElement Constant(std::shared_ptr<const RnsBasis> basis,
                              std::int64_t value);
  // Builds from signed coefficients (length ring_dim).
  static RingElement FromSigned(std::shared_ptr<const RnsBasis> basis,
                                std::span<const std::int64_t> coeffs);
  // Builds from raw prime-major residues; validates ranges.
  static RingElement FromResidues(std::shared_ptr<const RnsBasis> basis,
                                  std::vector<u64> residues, Domain domain);

  bool empty() const { return basis_ == nullptr; }
  const std::shared_ptr<const RnsBasis>& basis() const { return basis_; }
  Domain domain() const { return domain_; }
  std::size_t ring_dim() const { return basis_ ? basis_->ring_dim() : 0; }
  std::size_t prime_count() const { return basis_ ? basis_->prime_count() : 0; }

  std::span<u64> residues(std::size_t prime_index) {
    return {data_.data() + prime_index * ring_dim(), ring_dim()};
  }
  std::span<const u64> residues(std::size_t prime_index) const {
    return {data_.data() + prime_index * ring_dim(), ring_dim()};
  }
  std::span<const u64> words() const { return data_; }

  bool operator==(const RingElement& other) const;

 private:
  RingElement(std::shared_ptr<const RnsBasis> basis, Domain domain)
      : basis_(std::move(basis)),
        domain_(domain),
        data_(basis_->ring_dim() * basis_->prime_count(), 0) {}

  friend void NttForwardInPlace(RingElement& x);
  friend void NttInverseInPlace(RingElement& x);
  friend void AddInPlace(RingElement& a, const RingElement& b);
  friend void SubInPlace(RingElement& a, const RingElement& b);
  friend void NegateInPlace(RingElement& a);
  friend void PointwiseMulInPlace(RingElement& a, const RingElement& b);
  friend void ScalarMulInPlace(RingElement& a, std::span<const u64> scalar);
  friend void AddConstantInPlace(RingElement& a, std::span<const u64> value);

  std::shared_ptr<const RnsBasis> basis_;
  Domain domain_ = Domain::kCoefficient;
  std::vector<u64> data_;
};

// Transforms. Throw UsageError if the element is already in the target
// domain.
void NttForwardInPlace(RingElement& x);
void NttInverseInPlace(RingElement& x);
RingElement NttForward(RingElement x);
RingElement NttInverse(RingElement x);

// Arithmetic. Binary operations throw UsageError on basis or domain
// mismatch.
void AddInPlace(RingElement& a, const RingElement& b);
void SubInPlace(RingElement& a, const RingElement& b);
void NegateInPlace(RingElement& a);
void PointwiseMulInPlace(RingElement& a, const RingElement& b);
// Multiplies every coefficient by a scalar given as one residue per prime.
// No transform is performed; valid in either domain.
void ScalarMulInPlace(RingElement& a, std::span<const u64> scalar);
// Adds a constant (one residue per prime) to the constant coefficient.
// Requires coefficient domain.
void AddConstantInPlace(RingElement& a, std::span<const u64> value);

RingElement PolyAdd(RingElement a, const RingElement& b);
RingElement PolySub(RingElement a, const RingElement& b);
RingElement Negate(RingElement a);
// Negacyclic product. Inputs may be in either domain (they are transformed as
// needed); the result is in the domain of `a`.
RingElement PolyMul(const RingElement& a, const RingElement& b);
RingElement ScalarMul(RingElement a, std::int64_t s);
RingElement ScalarMul(RingElement a, std::span<const u64> scalar_residues);

// Per-prime residues of a signed scalar.
std::vector<u64> ScalarResidues(const RnsBasis& basis, std::int64_t s);
std::vector<u64> ScalarResiduesWide(const RnsBasis& basis, i128 s);

}  // namespace silca::ring

#endif  // SILCA_RING_RING_ELEMENT_H_
