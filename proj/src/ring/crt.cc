// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/ring/crt.h"

#include <cmath>
#include <limits>

#include "silca/ring/modarith.h"

namespace silca::ring {
namespace {

mpz_class FromU64(u64 v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

u64 ModOf(const mpz_class& x, u64 q) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), FromU64(q).get_mpz_t());
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

double Log2Abs(const mpz_class& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

}  // namespace

CrtComposer::CrtComposer(const RnsBasis& basis)
    : primes_(basis.primes().begin(), basis.primes().end()), modulus_(1) {
  for (u64 q : primes_) modulus_ *= FromU64(q);
  half_ = modulus_ / 2;
  for (u64 q : primes_) {
    const mpz_class cofactor = modulus_ / FromU64(q);
    const u64 inv = ModInverse(ModOf(cofactor, q), q);
    partial_.push_back(cofactor * FromU64(inv));
  }
  if (primes_.size() == 2) {
    q0_inv_mod_q1_ = ModInverse(primes_[0] % primes_[1], primes_[1]);
  }
}

mpz_class CrtComposer::ComposeCentered(std::span<const u64> residues) const {
  mpz_class acc = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    acc += partial_[i] * FromU64(residues[i]);
  }
  acc %= modulus_;
  if (acc > half_) acc -= modulus_;
  return acc;
}

double CrtComposer::MaxLog2Magnitude(std::span<const u64> prime_major,
                                     std::size_t ring_dim) const {
  double best = -std::numeric_limits<double>::infinity();
  if (primes_.size() == 1) {
    const u64 q = primes_[0];
    for (std::size_t j = 0; j < ring_dim; ++j) {
      const u64 v = prime_major[j];
      const u64 mag = v > q / 2 ? q - v : v;
      if (mag != 0) best = std::max(best, std::log2(static_cast<double>(mag)));
    }
    return best;
  }
  if (primes_.size() == 2) {
    // Garner: x = a0 + q0 * ((a1 - a0) * q0^-1 mod q1), x < q0*q1 < 2^124.
    const u64 q0 = primes_[0];
    const u64 q1 = primes_[1];
    const u128 q = static_cast<u128>(q0) * q1;
    const u128 half = q / 2;
    const ShoupOperand inv(q0_inv_mod_q1_, q1);
    u128 max_mag = 0;
    for (std::size_t j = 0; j < ring_dim; ++j) {
      const u64 a0 = prime_major[j];
      const u64 a1 = prime_major[ring_dim + j];
      const u64 t = MulShoup(SubMod(a1, a0 % q1, q1), inv, q1);
      const u128 x = static_cast<u128>(a0) + static_cast<u128>(q0) * t;
      const u128 mag = x > half ? q - x : x;
      if (mag > max_mag) max_mag = mag;
    }
    if (max_mag == 0) return best;
    return std::log2(static_cast<double>(max_mag));
  }
  std::vector<u64> column(primes_.size());
  mpz_class max_mag = 0;
  for (std::size_t j = 0; j < ring_dim; ++j) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      column[i] = prime_major[i * ring_dim + j];
    }
    mpz_class v = ComposeCentered(column);
    if (v < 0) v = -v;
    if (v > max_mag) max_mag = v;
  }
  return Log2Abs(max_mag);
}

}  // namespace silca::ring
