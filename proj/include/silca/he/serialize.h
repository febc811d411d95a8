// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_HE_SERIALIZE_H_
#define SILCA_HE_SERIALIZE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "silca/he/backend.h"
#include "silca/he/ciphertext.h"
#include "silca/he/keys.h"

namespace silca::he {

inline constexpr char kMagic[4] = {'S', 'I', 'L', 'C'};
inline constexpr std::uint16_t kContainerVersion = 1;

// Ciphertext container, all integers little-endian:
//   "SILC" | u16 version=1 | u8 scheme tag | 32-byte params digest |
//   u32 ring_dim | u8 prime count | f64 scale (ckks) or u64 modulus |
//   c0 words | c1 words   (u64 each, prime-major)
// Mock ciphertexts reuse the layout with prime count 1: c0 carries the
// rational value as [sign, #num limbs, limbs..., #den limbs, limbs...] and
// c1 carries [nonce lo, nonce hi, noise ops]; ring_dim is the word count.
void WriteCiphertext(std::ostream& out, const Ciphertext& c);
std::string SerializeCiphertext(const Ciphertext& c);
Ciphertext DeserializeCiphertext(const Backend& backend,
                                 const std::string& bytes);

// Reader for BGV/CKKS containers (used by the lattice backends).
Ciphertext ReadLatticeCiphertext(std::istream& in, const Backend& backend);

// Header fields shared by every container.
struct ContainerHeader {
  SchemeTag tag = SchemeTag::kMock;
  Digest digest{};
  std::uint32_t ring_dim = 0;
  std::uint8_t prime_count = 0;
  std::uint64_t scalar_bits = 0;  // f64 bit pattern or u64 modulus
};
ContainerHeader ReadContainerHeader(std::istream& in);
std::vector<std::uint64_t> ReadWords(std::istream& in, std::size_t count);

// Key files: "SILC" | u8 record type (0x20 public, 0x21 secret) | digest |
// u32 ring_dim | u8 prime count | payload words.
void WritePublicKey(std::ostream& out, const PublicKey& pk);
void WriteSecretKey(std::ostream& out, const SecretKey& sk);
PublicKey ReadPublicKey(std::istream& in, const Backend& backend);
SecretKey ReadSecretKey(std::istream& in, const Backend& backend);

// Little-endian primitives shared by the file formats.
void PutU8(std::ostream& out, std::uint8_t v);
void PutU16(std::ostream& out, std::uint16_t v);
void PutU32(std::ostream& out, std::uint32_t v);
void PutU64(std::ostream& out, std::uint64_t v);
std::uint8_t GetU8(std::istream& in);
std::uint16_t GetU16(std::istream& in);
std::uint32_t GetU32(std::istream& in);
std::uint64_t GetU64(std::istream& in);

}  // namespace silca::he

#endif  // SILCA_HE_SERIALIZE_H_
