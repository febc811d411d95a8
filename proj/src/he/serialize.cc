// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/he/serialize.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "silca/common/error.h"
#include "silca/he/mock.h"

namespace silca::he {
namespace {

static_assert(std::endian::native == std::endian::little,
              "container I/O assumes a little-endian host");

template <typename T>
void PutRaw(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T GetRaw(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw FormatError("unexpected end of input");
  return v;
}

void PutWords(std::ostream& out, std::span<const std::uint64_t> words) {
  out.write(reinterpret_cast<const char*>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
}

void ExpectMagic(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("bad magic: not a SILC container");
  }
}

void WriteElementWords(std::ostream& out, const ring::RingElement& e) {
  if (e.domain() != ring::Domain::kCoefficient) {
    // Serialized data is always coefficient domain.
    const ring::RingElement c = ring::NttInverse(e);
    PutWords(out, c.words());
  } else {
    PutWords(out, e.words());
  }
}

ring::RingElement ReadElement(std::istream& in,
                              const std::shared_ptr<const ring::RnsBasis>& basis,
                              ring::Domain domain) {
  auto words = ReadWords(in, basis->ring_dim() * basis->prime_count());
  try {
    return ring::RingElement::FromResidues(basis, std::move(words), domain);
  } catch (const UsageError& e) {
    throw FormatError(std::string("ring element: ") + e.what());
  }
}

void CheckBasisShape(std::uint32_t ring_dim, std::uint8_t prime_count,
                     const ring::RnsBasis& basis) {
  if (ring_dim != basis.ring_dim() || prime_count != basis.prime_count()) {
    throw FormatError("container shape does not match the parameter set");
  }
}

}  // namespace

void PutU8(std::ostream& out, std::uint8_t v) { PutRaw(out, v); }
void PutU16(std::ostream& out, std::uint16_t v) { PutRaw(out, v); }
void PutU32(std::ostream& out, std::uint32_t v) { PutRaw(out, v); }
void PutU64(std::ostream& out, std::uint64_t v) { PutRaw(out, v); }
std::uint8_t GetU8(std::istream& in) { return GetRaw<std::uint8_t>(in); }
std::uint16_t GetU16(std::istream& in) { return GetRaw<std::uint16_t>(in); }
std::uint32_t GetU32(std::istream& in) { return GetRaw<std::uint32_t>(in); }
std::uint64_t GetU64(std::istream& in) { return GetRaw<std::uint64_t>(in); }

std::vector<std::uint64_t> ReadWords(std::istream& in, std::size_t count) {
  std::vector<std::uint64_t> words(count);
  in.read(reinterpret_cast<char*>(words.data()),
          static_cast<std::streamsize>(count * sizeof(std::uint64_t)));
  if (!in) throw FormatError("unexpected end of input in word array");
  return words;
}

void WriteCiphertext(std::ostream& out, const Ciphertext& c) {
  out.write(kMagic, 4);
  PutU16(out, kContainerVersion);
  PutU8(out, static_cast<std::uint8_t>(c.tag));
  out.write(reinterpret_cast<const char*>(c.params_digest.data()),
            c.params_digest.size());
  if (c.tag == SchemeTag::kMock) {
    if (!c.mock) throw UsageError("mock ciphertext without payload");
    std::vector<std::uint64_t> c0 = EncodeMockValue(c.mock->value);
    std::vector<std::uint64_t> c1 = {c.mock->nonce[0], c.mock->nonce[1],
                                     c.mock->noise_ops};
    const std::size_t width = std::max(c0.size(), c1.size());
    c0.resize(width, 0);
    c1.resize(width, 0);
    PutU32(out, static_cast<std::uint32_t>(width));
    PutU8(out, 1);
    PutU64(out, c.plaintext_modulus);
    PutWords(out, c0);
    PutWords(out, c1);
    return;
  }
  if (c.c0.empty() || c.c1.empty()) {
    throw UsageError("lattice ciphertext without ring elements");
  }
  PutU32(out, static_cast<std::uint32_t>(c.c0.ring_dim()));
  PutU8(out, static_cast<std::uint8_t>(c.c0.prime_count()));
  if (c.tag == SchemeTag::kCkks) {
    PutU64(out, std::bit_cast<std::uint64_t>(c.scale));
  } else {
    PutU64(out, c.plaintext_modulus);
  }
  WriteElementWords(out, c.c0);
  WriteElementWords(out, c.c1);
}

std::string SerializeCiphertext(const Ciphertext& c) {
  std::ostringstream os(std::ios::binary);
  WriteCiphertext(os, c);
  return os.str();
}

Ciphertext DeserializeCiphertext(const Backend& backend,
                                 const std::string& bytes) {
  std::istringstream is(bytes, std::ios::binary);
  return backend.ReadCiphertext(is);
}

ContainerHeader ReadContainerHeader(std::istream& in) {
  ExpectMagic(in);
  const std::uint16_t version = GetU16(in);
  if (version != kContainerVersion) {
    throw FormatError("unsupported container version " + std::to_string(version));
  }
  ContainerHeader h;
  const std::uint8_t tag = GetU8(in);
  if (tag > 2) throw FormatError("unknown scheme tag " + std::to_string(tag));
  h.tag = static_cast<SchemeTag>(tag);
  in.read(reinterpret_cast<char*>(h.digest.data()), h.digest.size());
  if (!in) throw FormatError("truncated digest");
  h.ring_dim = GetU32(in);
  h.prime_count = GetU8(in);
  h.scalar_bits = GetU64(in);
  return h;
}

// Lattice ciphertext reader shared by the RLWE backends.
Ciphertext ReadLatticeCiphertext(std::istream& in, const Backend& backend) {
  const ContainerHeader h = ReadContainerHeader(in);
  if (h.tag != backend.tag()) {
    throw UsageError("container holds a " + std::string(SchemeName(h.tag)) +
                     " ciphertext, backend is " +
                     std::string(SchemeName(backend.tag())));
  }
  if (h.digest != backend.descriptor().params_digest) {
    throw UsageError("container parameter digest mismatch");
  }
  const auto basis = backend.basis();
  CheckBasisShape(h.ring_dim, h.prime_count, *basis);
  Ciphertext c;
  c.tag = h.tag;
  c.params_digest = h.digest;
  if (h.tag == SchemeTag::kCkks) {
    c.scale = std::bit_cast<double>(h.scalar_bits);
  } else {
    c.plaintext_modulus = h.scalar_bits;
  }
  c.c0 = ReadElement(in, basis, ring::Domain::kCoefficient);
  c.c1 = ReadElement(in, basis, ring::Domain::kCoefficient);
  c.consumption_id = NextConsumptionId();
  return c;
}

namespace {

constexpr std::uint8_t kPublicKeyRecord = 0x20;
constexpr std::uint8_t kSecretKeyRecord = 0x21;

void WriteKeyHeader(std::ostream& out, std::uint8_t record,
                    const Digest& digest, const ring::RingElement& shape) {
  out.write(kMagic, 4);
  PutU8(out, record);
  out.write(reinterpret_cast<const char*>(digest.data()), digest.size());
  PutU32(out, static_cast<std::uint32_t>(shape.ring_dim()));
  PutU8(out, static_cast<std::uint8_t>(shape.prime_count()));
}

Digest ReadKeyHeader(std::istream& in, std::uint8_t record,
                     const Backend& backend) {
  ExpectMagic(in);
  if (GetU8(in) != record) throw FormatError("unexpected key record type");
  Digest d{};
  in.read(reinterpret_cast<char*>(d.data()), d.size());
  if (!in) throw FormatError("truncated key digest");
  if (d != backend.descriptor().params_digest) {
    throw UsageError("key file was generated for other parameters");
  }
  const std::uint32_t ring_dim = GetU32(in);
  const std::uint8_t primes = GetU8(in);
  if (backend.basis()) {
    CheckBasisShape(ring_dim, primes, *backend.basis());
  } else if (ring_dim != 0 || primes != 0) {
    throw FormatError("mock key with ring payload");
  }
  return d;
}

}  // namespace

void WritePublicKey(std::ostream& out, const PublicKey& pk) {
  WriteKeyHeader(out, kPublicKeyRecord, pk.params_digest, pk.b_eval);
  if (!pk.b_eval.empty()) {
    PutWords(out, pk.b_eval.words());
    PutWords(out, pk.a_eval.words());
  }
}

void WriteSecretKey(std::ostream& out, const SecretKey& sk) {
  WriteKeyHeader(out, kSecretKeyRecord, sk.params_digest, sk.s_eval);
  for (std::int64_t v : sk.ternary) PutU8(out, static_cast<std::uint8_t>(v + 1));
}

PublicKey ReadPublicKey(std::istream& in, const Backend& backend) {
  PublicKey pk;
  pk.params_digest = ReadKeyHeader(in, kPublicKeyRecord, backend);
  if (auto basis = backend.basis()) {
    pk.b_eval = ReadElement(in, basis, ring::Domain::kEvaluation);
    pk.a_eval = ReadElement(in, basis, ring::Domain::kEvaluation);
  }
  return pk;
}

SecretKey ReadSecretKey(std::istream& in, const Backend& backend) {
  SecretKey sk;
  sk.params_digest = ReadKeyHeader(in, kSecretKeyRecord, backend);
  if (auto basis = backend.basis()) {
    sk.ternary.resize(basis->ring_dim());
    for (auto& v : sk.ternary) {
      const std::uint8_t b = GetU8(in);
      if (b > 2) throw FormatError("secret key coefficient out of range");
      v = static_cast<std::int64_t>(b) - 1;
    }
    sk.s_eval = ring::NttForward(ring::RingElement::FromSigned(basis, sk.ternary));
  }
  return sk;
}

}  // namespace silca::he
