// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RING_MODARITH_H_
#define SILCA_RING_MODARITH_H_

#include <cstdint>
#include <vector>

namespace silca::ring {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Largest supported modulus width. Shoup multiplication needs q < 2^63.
inline constexpr int kMaxPrimeBits = 62;

inline u64 AddMod(u64 a, u64 b, u64 q) {
  const u64 s = a + b;
  return s >= q ? s - q : s;
}

inline u64 SubMod(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + q - b; }

inline u64 NegMod(u64 a, u64 q) { return a == 0 ? 0 : q - a; }

inline u64 MulMod(u64 a, u64 b, u64 q) {
  return static_cast<u64>((static_cast<u128>(a) * b) % q);
}

// Precomputed operand for repeated multiplication by a fixed w modulo q.
struct ShoupOperand {
  u64 value = 0;
  u64 quotient = 0;  // floor(value * 2^64 / q)

  ShoupOperand() = default;
  ShoupOperand(u64 w, u64 q)
      : value(w), quotient(static_cast<u64>((static_cast<u128>(w) << 64) / q)) {}
};

// a * w mod q for a < q (result in [0, q)).
inline u64 MulShoup(u64 a, const ShoupOperand& w, u64 q) {
  const u64 hi = static_cast<u64>((static_cast<u128>(a) * w.quotient) >> 64);
  const u64 r = a * w.value - hi * q;
  return r >= q ? r - q : r;
}

// a * w mod q in [0, 2q) (lazy variant for NTT butterflies).
inline u64 MulShoupLazy(u64 a, const ShoupOperand& w, u64 q) {
  const u64 hi = static_cast<u64>((static_cast<u128>(a) * w.quotient) >> 64);
  return a * w.value - hi * q;
}

u64 PowMod(u64 base, u64 exp, u64 q);

// Inverse of r modulo p by the extended Euclidean algorithm. Throws
// ParameterError when gcd(r, p) != 1 (in particular r == 0 mod p).
u64 ModInverse(u64 r, u64 p);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool IsPrime(u64 n);

// Smallest prime strictly greater than n (n < 2^63).
u64 NextPrime(u64 n);

// `count` distinct primes of exactly `bits` bits with p = 1 (mod 2*ring_dim),
// searched downward from 2^bits.
std::vector<u64> GenerateNttPrimes(int bits, std::size_t count, u64 ring_dim);

// A primitive 2*ring_dim-th root of unity modulo q: the smallest x^((q-1)/2n)
// over x = 2, 3, ... whose n-th power is -1, then minimised over its odd
// powers so the choice is canonical.
u64 MinimalPrimitiveRoot(u64 two_n, u64 q);

// Reduce a signed value into [0, q).
inline u64 ReduceSigned(std::int64_t v, u64 q) {
  if (v >= 0) return static_cast<u64>(v) % q;
  const u64 m = static_cast<u64>(-(v + 1)) % q;  // avoids overflow at INT64_MIN
  return q - 1 - m;
}

inline u64 ReduceI128(i128 v, u64 q) {
  if (v >= 0) return static_cast<u64>(static_cast<u128>(v) % q);
  const u64 m = static_cast<u64>(static_cast<u128>(-(v + 1)) % q);
  return q - 1 - m;
}

}  // namespace silca::ring

#endif  // SILCA_RING_MODARITH_H_
