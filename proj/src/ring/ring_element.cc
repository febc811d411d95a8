// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/ring/ring_element.h"

#include <string>

#include "silca/common/error.h"

namespace silca::ring {
namespace {

void RequireCompatible(const RingElement& a, const RingElement& b,
                       const char* op) {
  if (a.empty() || b.empty()) {
    throw UsageError(std::string(op) + ": empty ring element");
  }
  if (!a.basis()->SameAs(*b.basis())) {
    throw UsageError(std::string(op) + ": RNS basis mismatch");
  }
  if (a.domain() != b.domain()) {
    throw UsageError(std::string(op) + ": domain mismatch");
  }
}

void ForwardOne(std::span<u64> a, const NttTables& t) {
  const u64 q = t.prime;
  const std::size_t n = a.size();
  std::size_t gap = n;
  for (std::size_t m = 1; m < n; m <<= 1) {
    gap >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      const ShoupOperand& w = t.psi_powers[m + i];
      u64* lo = a.data() + 2 * i * gap;
      u64* hi = lo + gap;
      for (std::size_t j = 0; j < gap; ++j) {
        const u64 u = lo[j];
        const u64 v = MulShoup(hi[j], w, q);
        lo[j] = AddMod(u, v, q);
        hi[j] = SubMod(u, v, q);
      }
    }
  }
}

void InverseOne(std::span<u64> a, const NttTables& t) {
  const u64 q = t.prime;
  const std::size_t n = a.size();
  std::size_t gap = 1;
  for (std::size_t m = n; m > 1; m >>= 1) {
    const std::size_t half = m >> 1;
    for (std::size_t i = 0; i < half; ++i) {
      const ShoupOperand& w = t.psi_inv_powers[half + i];
      u64* lo = a.data() + 2 * i * gap;
      u64* hi = lo + gap;
      for (std::size_t j = 0; j < gap; ++j) {
        const u64 u = lo[j];
        const u64 v = hi[j];
        lo[j] = AddMod(u, v, q);
        hi[j] = MulShoup(SubMod(u, v, q), w, q);
      }
    }
    gap <<= 1;
  }
  for (u64& x : a) x = MulShoup(x, t.n_inverse, q);
}

}  // namespace

RingElement RingElement::Zero(std::shared_ptr<const RnsBasis> basis,
                              Domain domain) {
  if (!basis) throw UsageError("RingElement::Zero: null basis");
  return RingElement(std::move(basis), domain);
}

RingElement RingElement::Constant(std::shared_ptr<const RnsBasis> basis,
                                  std::int64_t value) {
  RingElement r = Zero(std::move(basis));
  for (std::size_t i = 0; i < r.prime_count(); ++i) {
    r.residues(i)[0] = ReduceSigned(value, r.basis_->prime(i));
  }
  return r;
}

RingElement RingElement::FromSigned(std::shared_ptr<const RnsBasis> basis,
                                    std::span<const std::int64_t> coeffs) {
  RingElement r = Zero(std::move(basis));
  if (coeffs.size() != r.ring_dim()) {
    throw UsageError("RingElement::FromSigned: length mismatch");
  }
  for (std::size_t i = 0; i < r.prime_count(); ++i) {
    const u64 q = r.basis_->prime(i);
    auto dst = r.residues(i);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      dst[j] = ReduceSigned(coeffs[j], q);
    }
  }
  return r;
}

RingElement RingElement::FromResidues(std::shared_ptr<const RnsBasis> basis,
                                      std::vector<u64> residues,
                                      Domain domain) {
  RingElement r = Zero(std::move(basis), domain);
  if (residues.size() != r.data_.size()) {
    throw UsageError("RingElement::FromResidues: length mismatch");
  }
  for (std::size_t i = 0; i < r.prime_count(); ++i) {
    const u64 q = r.basis_->prime(i);
    for (std::size_t j = 0; j < r.ring_dim(); ++j) {
      if (residues[i * r.ring_dim() + j] >= q) {
        throw UsageError("RingElement::FromResidues: residue out of range");
      }
    }
  }
  r.data_ = std::move(residues);
  return r;
}

bool RingElement::operator==(const RingElement& other) const {
  if (empty() || other.empty()) return empty() == other.empty();
  return basis_->SameAs(*other.basis_) && domain_ == other.domain_ &&
         data_ == other.data_;
}

void NttForwardInPlace(RingElement& x) {
  if (x.empty()) throw UsageError("ntt_forward: empty element");
  if (x.domain_ != Domain::kCoefficient) {
    throw UsageError("ntt_forward: element already in evaluation domain");
  }
  for (std::size_t i = 0; i < x.prime_count(); ++i) {
    ForwardOne(x.residues(i), x.basis_->tables(i));
  }
  x.domain_ = Domain::kEvaluation;
}

void NttInverseInPlace(RingElement& x) {
  if (x.empty()) throw UsageError("ntt_inverse: empty element");
  if (x.domain_ != Domain::kEvaluation) {
    throw UsageError("ntt_inverse: element already in coefficient domain");
  }
  for (std::size_t i = 0; i < x.prime_count(); ++i) {
    InverseOne(x.residues(i), x.basis_->tables(i));
  }
  x.domain_ = Domain::kCoefficient;
}

RingElement NttForward(RingElement x) {
  NttForwardInPlace(x);
  return x;
}

RingElement NttInverse(RingElement x) {
  NttInverseInPlace(x);
  return x;
}

void AddInPlace(RingElement& a, const RingElement& b) {
  RequireCompatible(a, b, "poly_add");
  for (std::size_t i = 0; i < a.prime_count(); ++i) {
    const u64 q = a.basis_->prime(i);
    auto x = a.residues(i);
    auto y = b.residues(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = AddMod(x[j], y[j], q);
  }
}

void SubInPlace(RingElement& a, const RingElement& b) {
  RequireCompatible(a, b, "poly_sub");
  for (std::size_t i = 0; i < a.prime_count(); ++i) {
    const u64 q = a.basis_->prime(i);
    auto x = a.residues(i);
    auto y = b.residues(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = SubMod(x[j], y[j], q);
  }
}

void NegateInPlace(RingElement& a) {
  if (a.empty()) throw UsageError("negate: empty element");
  for (std::size_t i = 0; i < a.prime_count(); ++i) {
    const u64 q = a.basis_->prime(i);
    for (u64& x : a.residues(i)) x = NegMod(x, q);
  }
}

void PointwiseMulInPlace(RingElement& a, const RingElement& b) {
  RequireCompatible(a, b, "pointwise_mul");
  if (a.domain_ != Domain::kEvaluation) {
    throw UsageError("pointwise_mul: operands must be in evaluation domain");
  }
  for (std::size_t i = 0; i < a.prime_count(); ++i) {
    const u64 q = a.basis_->prime(i);
    auto x = a.residues(i);
    auto y = b.residues(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = MulMod(x[j], y[j], q);
  }
}

void ScalarMulInPlace(RingElement& a, std::span<const u64> scalar) {
  if (a.empty()) throw UsageError("scalar_mul: empty element");
  if (scalar.size() != a.prime_count()) {
    throw UsageError("scalar_mul: need one residue per prime");
  }
  for (std::size_t i = 0; i < a.prime_count(); ++i) {
    const u64 q = a.basis_->prime(i);
    if (scalar[i] >= q) throw UsageError("scalar_mul: scalar not reduced");
    const ShoupOperand w(scalar[i], q);
    for (u64& x : a.residues(i)) x = MulShoup(x, w, q);
  }
}

void AddConstantInPlace(RingElement& a, std::span<const u64> value) {
  if (a.empty()) throw UsageError("add_constant: empty element");
  if (a.domain_ != Domain::kCoefficient) {
    throw UsageError("add_constant: element must be in coefficient domain");
  }
  if (value.size() != a.prime_count()) {
    throw UsageError("add_constant: need one residue per prime");
  }
  for (std::size_t i = 0; i < a.prime_count(); ++i) {
    const u64 q = a.basis_->prime(i);
    a.residues(i)[0] = AddMod(a.residues(i)[0], value[i] % q, q);
  }
}

RingElement PolyAdd(RingElement a, const RingElement& b) {
  AddInPlace(a, b);
  return a;
}

RingElement PolySub(RingElement a, const RingElement& b) {
  SubInPlace(a, b);
  return a;
}

RingElement Negate(RingElement a) {
  NegateInPlace(a);
  return a;
}

RingElement PolyMul(const RingElement& a, const RingElement& b) {
  if (a.empty() || b.empty()) throw UsageError("poly_mul: empty element");
  if (!a.basis()->SameAs(*b.basis())) {
    throw UsageError("poly_mul: RNS basis mismatch");
  }
  RingElement x = a.domain() == Domain::kEvaluation ? a : NttForward(a);
  const RingElement y = b.domain() == Domain::kEvaluation ? b : NttForward(b);
  PointwiseMulInPlace(x, y);
  if (a.domain() == Domain::kCoefficient) NttInverseInPlace(x);
  return x;
}

std::vector<u64> ScalarResidues(const RnsBasis& basis, std::int64_t s) {
  std::vector<u64> out(basis.prime_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ReduceSigned(s, basis.prime(i));
  }
  return out;
}

std::vector<u64> ScalarResiduesWide(const RnsBasis& basis, i128 s) {
  std::vector<u64> out(basis.prime_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ReduceI128(s, basis.prime(i));
  }
  return out;
}

RingElement ScalarMul(RingElement a, std::int64_t s) {
  if (a.empty()) throw UsageError("scalar_mul: empty element");
  const auto residues = ScalarResidues(*a.basis(), s);
  ScalarMulInPlace(a, residues);
  return a;
}

RingElement ScalarMul(RingElement a, std::span<const u64> scalar_residues) {
  ScalarMulInPlace(a, scalar_residues);
  return a;
}

}  // namespace silca::ring
