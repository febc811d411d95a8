// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/he/params.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "silca/common/error.h"
#include "silca/ring/modarith.h"
#include "silca/ring/rns_basis.h"

namespace silca::he {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::uint64_t ParseU64(const std::string& text, const std::string& key) {
  std::string t = Lower(Trim(text));
  int base = 10;
  std::string_view digits = t;
  if (t.starts_with("0x")) {
    base = 16;
    digits.remove_prefix(2);
  }
  std::uint64_t v = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
  if (ec != std::errc() || ptr != digits.data() + digits.size() ||
      digits.empty()) {
    throw ParameterError("params: bad integer for '" + key + "': " + text);
  }
  return v;
}

std::string Hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

}  // namespace

std::string_view SchemeName(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::kMock:
      return "mock";
    case SchemeTag::kBgv:
      return "bgv";
    case SchemeTag::kCkks:
      return "ckks";
  }
  return "unknown";
}

SchemeTag ParseSchemeTag(std::string_view name) {
  const std::string n = Lower(Trim(name));
  if (n == "mock") return SchemeTag::kMock;
  if (n == "bgv" || n == "bgv-lite") return SchemeTag::kBgv;
  if (n == "ckks" || n == "ckks-lite") return SchemeTag::kCkks;
  throw ParameterError("unknown scheme '" + std::string(name) + "'");
}

std::string CanonicalText(const SchemeParams& p) {
  std::ostringstream os;
  os << "scheme=" << SchemeName(p.scheme) << "\n";
  os << "ring_dim=" << p.ring_dim << "\n";
  os << "primes=";
  for (std::size_t i = 0; i < p.primes.size(); ++i) {
    os << (i ? "," : "") << Hex(p.primes[i]);
  }
  os << "\n";
  if (p.scheme == SchemeTag::kCkks) {
    os << "scale_log2=" << p.scale_log2 << "\n";
  } else {
    os << "plaintext_modulus=" << p.plaintext_modulus << "\n";
  }
  os << "cbd_eta=" << p.cbd_eta << "\n";
  return os.str();
}

SchemeParams ParseParams(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string t = Trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("params: line " + std::to_string(line_no) +
                           " is not key = value");
    }
    const std::string key = Lower(Trim(t.substr(0, eq)));
    if (!kv.emplace(key, Trim(t.substr(eq + 1))).second) {
      throw ParameterError("params: duplicate key '" + key + "'");
    }
  }
  if (!kv.contains("scheme")) throw ParameterError("params: missing scheme");
  SchemeParams p;
  p.scheme = ParseSchemeTag(kv["scheme"]);
  for (const auto& [key, value] : kv) {
    if (key == "scheme") continue;
    if (key == "ring_dim") {
      p.ring_dim = static_cast<std::uint32_t>(ParseU64(value, key));
    } else if (key == "primes") {
      std::istringstream ps(value);
      std::string item;
      while (std::getline(ps, item, ',')) {
        if (!Trim(item).empty()) p.primes.push_back(ParseU64(item, key));
      }
    } else if (key == "plaintext_modulus") {
      p.plaintext_modulus = ParseU64(value, key);
    } else if (key == "scale_log2") {
      p.scale_log2 = static_cast<int>(ParseU64(value, key));
    } else if (key == "cbd_eta") {
      p.cbd_eta = static_cast<int>(ParseU64(value, key));
    } else {
      throw ParameterError("params: unknown key '" + key + "'");
    }
  }
  return p;
}

SchemeParams LoadParamsFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read params file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseParams(buf.str());
}

void SaveParamsFile(const SchemeParams& params,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write params file " + path.string());
  out << CanonicalText(params);
}

Digest ParamsDigest(const SchemeParams& params) {
  const std::string text = CanonicalText(params);
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size()) {
    throw Error("SHA-256 failed");
  }
  return out;
}

std::string DigestHex(const Digest& digest) {
  static const char* kHex = "0123456789abcdef";
  std::string s;
  for (auto b : digest) {
    s.push_back(kHex[b >> 4]);
    s.push_back(kHex[b & 15]);
  }
  return s;
}

void ValidateParams(const SchemeParams& p) {
  if (p.scheme == SchemeTag::kMock) {
    if (p.plaintext_modulus == 1) {
      throw ParameterError("mock plaintext modulus must be 0 or >= 2");
    }
    return;
  }
  if (p.cbd_eta < 1 || p.cbd_eta > 32) {
    throw ParameterError("cbd_eta must lie in [1, 32]");
  }
  // Throws on any NTT-friendliness violation.
  const auto basis = ring::RnsBasis::Create(p.ring_dim, p.primes);
  const double log2_q = basis->log2_modulus();
  const double n = static_cast<double>(p.ring_dim);
  if (p.scheme == SchemeTag::kBgv) {
    const std::uint64_t t = p.plaintext_modulus;
    if (!ring::IsPrime(t)) {
      throw ParameterError("plaintext modulus " + std::to_string(t) +
                           " is not prime");
    }
    for (auto q : p.primes) {
      if (t >= q) {
        throw ParameterError("plaintext modulus must be below every prime");
      }
    }
    // Six-sigma bound on a fresh noise coefficient t*(e*u + e0 + e1*s),
    // then one fused scalar multiplication by s < t, plus a 10-bit margin.
    const double sigma =
        static_cast<double>(t) * std::sqrt(2.0 * n * p.cbd_eta / 3.0 +
                                           p.cbd_eta / 2.0);
    const double need = std::log2(6.0 * sigma) + std::log2(static_cast<double>(t)) + 10.0;
    if (log2_q - 1.0 < need) {
      throw ParameterError("coefficient modulus too small for fused scalar "
                           "multiplication at this plaintext modulus");
    }
  } else {
    if (p.scale_log2 < 1 || p.scale_log2 > 60) {
      throw ParameterError("scale_log2 must lie in [1, 60]");
    }
    // Depth-1 products carry scale^2; keep ring_dim * scale^2 well below q.
    if (2.0 * p.scale_log2 + std::log2(n) + 10.0 >= log2_q) {
      throw ParameterError("scale too large for the coefficient modulus");
    }
  }
}

SchemeParams DefaultBgvParams(std::uint64_t plaintext_modulus,
                              std::uint32_t ring_dim) {
  SchemeParams p;
  p.scheme = SchemeTag::kBgv;
  p.ring_dim = ring_dim;
  p.primes = ring::GenerateNttPrimes(60, 2, ring_dim);
  p.plaintext_modulus = plaintext_modulus;
  p.cbd_eta = 8;
  return p;
}

SchemeParams DefaultCkksParams(std::uint32_t ring_dim, int scale_log2) {
  SchemeParams p;
  p.scheme = SchemeTag::kCkks;
  p.ring_dim = ring_dim;
  p.primes = ring::GenerateNttPrimes(60, 1, ring_dim);
  for (auto q : ring::GenerateNttPrimes(45, 2, ring_dim)) p.primes.push_back(q);
  p.scale_log2 = scale_log2;
  p.cbd_eta = 8;
  return p;
}

SchemeParams MockParams(std::uint64_t plaintext_modulus) {
  SchemeParams p;
  p.scheme = SchemeTag::kMock;
  p.plaintext_modulus = plaintext_modulus;
  return p;
}

}  // namespace silca::he
