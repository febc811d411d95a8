// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_HE_PARAMS_H_
#define SILCA_HE_PARAMS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace silca::he {

enum class SchemeTag : std::uint8_t { kMock = 0, kBgv = 1, kCkks = 2 };

using Digest = std::array<std::uint8_t, 32>;

std::string_view SchemeName(SchemeTag tag);
// Accepts "mock", "bgv", "ckks" (case-insensitive). Throws ParameterError.
SchemeTag ParseSchemeTag(std::string_view name);

// Parameter set of one backend instance.
//
// Text form (one `key = value` per line, `#` comments allowed):
//   scheme = bgv | ckks | mock
//   ring_dim = 4096
//   primes = 0x..., 0x...
//   plaintext_modulus = 65537      (bgv; optional for mock)
//   scale_log2 = 40                (ckks)
//   cbd_eta = 8
// The digest is SHA-256 over CanonicalText().
struct SchemeParams {
  SchemeTag scheme = SchemeTag::kBgv;
  std::uint32_t ring_dim = 0;
  std::vector<std::uint64_t> primes;
  std::uint64_t plaintext_modulus = 0;
  int scale_log2 = 0;
  int cbd_eta = 8;

  bool operator==(const SchemeParams&) const = default;
};

std::string CanonicalText(const SchemeParams& params);
SchemeParams ParseParams(std::string_view text);
SchemeParams LoadParamsFile(const std::filesystem::path& path);
void SaveParamsFile(const SchemeParams& params,
                    const std::filesystem::path& path);
Digest ParamsDigest(const SchemeParams& params);
std::string DigestHex(const Digest& digest);

// Throws ParameterError when the set violates the scheme's invariants
// (NTT-friendliness, prime plaintext modulus, modulus headroom).
void ValidateParams(const SchemeParams& params);

// Exact integer scheme: two 60-bit primes, prime plaintext modulus.
SchemeParams DefaultBgvParams(std::uint64_t plaintext_modulus = 65537,
                              std::uint32_t ring_dim = 4096);
// Approximate real scheme: one 60-bit and two 45-bit primes, scale 2^40.
SchemeParams DefaultCkksParams(std::uint32_t ring_dim = 8192,
                               int scale_log2 = 40);
// plaintext_modulus == 0 selects exact rational arithmetic.
SchemeParams MockParams(std::uint64_t plaintext_modulus = 0);

}  // namespace silca::he

#endif  // SILCA_HE_PARAMS_H_
