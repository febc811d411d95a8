// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/ring/modarith.h"

#include <algorithm>
#include <string>

#include "silca/common/error.h"

namespace silca::ring {

u64 PowMod(u64 base, u64 exp, u64 q) {
  u64 result = 1 % q;
  base %= q;
  while (exp != 0) {
    if (exp & 1) result = MulMod(result, base, q);
    base = MulMod(base, base, q);
    exp >>= 1;
  }
  return result;
}

u64 ModInverse(u64 r, u64 p) {
  if (p < 2) throw ParameterError("ModInverse: modulus must be at least 2");
  i128 old_r = static_cast<i128>(p);
  i128 cur_r = static_cast<i128>(r % p);
  i128 old_s = 0;
  i128 cur_s = 1;
  while (cur_r != 0) {
    const i128 q = old_r / cur_r;
    const i128 next_r = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = next_r;
    const i128 next_s = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = next_s;
  }
  // old_r = gcd(p, r); old_s is the coefficient of r.
  if (old_r != 1) {
    throw ParameterError("ModInverse: " + std::to_string(r) +
                         " has no inverse modulo " + std::to_string(p));
  }
  i128 v = old_s % static_cast<i128>(p);
  if (v < 0) v += p;
  return static_cast<u64>(v);
}

bool IsPrime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                    29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for n < 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 NextPrime(u64 n) {
  u64 c = n + 1;
  while (!IsPrime(c)) ++c;
  return c;
}

std::vector<u64> GenerateNttPrimes(int bits, std::size_t count, u64 ring_dim) {
  if (bits < 2 || bits > kMaxPrimeBits) {
    throw ParameterError("GenerateNttPrimes: unsupported prime width " +
                         std::to_string(bits));
  }
  const u64 step = 2 * ring_dim;
  const u64 top = u64{1} << bits;
  const u64 floor_value = u64{1} << (bits - 1);
  std::vector<u64> out;
  // Largest candidate below 2^bits congruent to 1 mod 2n.
  u64 c = top - (top % step) + 1;
  if (c >= top) c -= step;
  while (out.size() < count) {
    if (c <= floor_value) {
      throw ParameterError("GenerateNttPrimes: not enough NTT-friendly primes");
    }
    if (IsPrime(c)) out.push_back(c);
    c -= step;
  }
  return out;
}

u64 MinimalPrimitiveRoot(u64 two_n, u64 q) {
  if ((q - 1) % two_n != 0) {
    throw ParameterError("prime " + std::to_string(q) +
                         " is not 1 mod " + std::to_string(two_n));
  }
  const u64 n = two_n / 2;
  const u64 cofactor = (q - 1) / two_n;
  for (u64 x = 2; x < q; ++x) {
    const u64 psi = PowMod(x, cofactor, q);
    if (PowMod(psi, n, q) != q - 1) continue;
    u64 best = psi;
    const u64 psi_sq = MulMod(psi, psi, q);
    u64 cur = psi;
    for (u64 i = 1; i < n; ++i) {
      cur = MulMod(cur, psi_sq, q);
      best = std::min(best, cur);
    }
    return best;
  }
  throw ParameterError("no primitive root of order " + std::to_string(two_n));
}

}  // namespace silca::ring
