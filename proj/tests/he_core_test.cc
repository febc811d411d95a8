// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "silca/common/error.h"
#include "silca/he/mock.h"
#include "silca/he/params.h"
#include "silca/he/serialize.h"

namespace silca::he {
namespace {

TEST(ParamsTest, CanonicalTextRoundtrips) {
  for (const auto& p : {DefaultBgvParams(), DefaultCkksParams(), MockParams(17),
                        MockParams()}) {
    const std::string text = CanonicalText(p);
    EXPECT_EQ(ParseParams(text), p);
    EXPECT_EQ(CanonicalText(ParseParams(text)), text);
  }
}

TEST(ParamsTest, DigestDistinguishesParameterSets) {
  EXPECT_NE(ParamsDigest(DefaultBgvParams(65537)), ParamsDigest(DefaultBgvParams(13)));
  EXPECT_EQ(ParamsDigest(DefaultBgvParams()), ParamsDigest(DefaultBgvParams()));
  EXPECT_EQ(DigestHex(ParamsDigest(DefaultCkksParams())).size(), 64u);
}

TEST(ParamsTest, ParseToleratesCommentsAndOrdering) {
  auto p = DefaultBgvParams();
  std::string text = "# test set\ncbd_eta=8\nscheme=bgv\n\nring_dim=4096\n" +
                     CanonicalText(p).substr(CanonicalText(p).find("primes="));
  text.erase(text.rfind("cbd_eta=8\n"));
  EXPECT_EQ(ParseParams(text), p);
}

TEST(ParamsTest, ValidationRejectsBadSets) {
  auto p = DefaultBgvParams();
  p.plaintext_modulus = 65536;  // composite
  EXPECT_THROW(ValidateParams(p), ParameterError);
  auto q = DefaultBgvParams();
  q.primes = {97};
  EXPECT_THROW(ValidateParams(q), ParameterError);
  EXPECT_THROW(ParseParams("scheme=bgv\nring_dim=banana\n"), Error);
}

class MockIntegerTest : public ::testing::Test {
 protected:
  MockIntegerBackend backend{13};
  KeyPair keys = backend.KeyGen(SeedFromU64(1));
};

TEST_F(MockIntegerTest, RoundtripAndBoundary) {
  for (std::uint64_t m = 0; m < 13; ++m) {
    EXPECT_EQ(backend.Decrypt(keys.secret, backend.Encrypt(keys.pub, m)), m);
  }
  EXPECT_THROW(backend.Encrypt(keys.pub, 13), DomainError);
}

TEST_F(MockIntegerTest, ModularScalarProduct) {
  auto c = backend.EvalMulPlain(backend.Encrypt(keys.pub, 7), 6);
  EXPECT_EQ(backend.Decrypt(keys.secret, c), 3u);  // 42 mod 13
  EXPECT_EQ(backend.Decrypt(keys.secret,
                            backend.EvalMulPlain(backend.Encrypt(keys.pub, 9), 1)),
            9u);
}

TEST_F(MockIntegerTest, AdditionLaws) {
  auto a = backend.Encrypt(keys.pub, 11);
  auto z = backend.Encrypt(keys.pub, 0);
  EXPECT_EQ(backend.Decrypt(keys.secret, backend.EvalAdd(a, z)), 11u);
  EXPECT_EQ(backend.Decrypt(keys.secret,
                            backend.EvalAdd(a, backend.Encrypt(keys.pub, 5))),
            3u);
  EXPECT_EQ(backend.Decrypt(keys.secret, backend.EvalAddPlain(a, 4)), 2u);
}

TEST_F(MockIntegerTest, NoiseBudgetShrinks) {
  auto c = backend.Encrypt(keys.pub, 3);
  const double fresh = backend.NoiseBudget(keys.secret, c);
  EXPECT_GT(fresh, 0);
  EXPECT_LT(backend.NoiseBudget(keys.secret, backend.EvalMulPlain(c, 12)), fresh);
}

TEST_F(MockIntegerTest, CiphertextMultiplicationIsReserved) {
  auto c = backend.Encrypt(keys.pub, 3);
  EXPECT_THROW(backend.EvalMul(c, c), UnsupportedError);
}

TEST_F(MockIntegerTest, FreshNoncesAndConsumptionIds) {
  auto a = backend.Encrypt(keys.pub, 4);
  auto b = backend.Encrypt(keys.pub, 4);
  EXPECT_NE(a.mock->nonce, b.mock->nonce);
  EXPECT_NE(a.consumption_id, b.consumption_id);
  EXPECT_NE(SerializeCiphertext(a), SerializeCiphertext(b));
}

TEST_F(MockIntegerTest, CountsOperations) {
  backend.ResetCounts();
  auto c = backend.Encrypt(keys.pub, 4);
  c = backend.EvalMulPlain(c, 2);
  c = backend.EvalAdd(c, c);
  backend.Decrypt(keys.secret, c);
  const auto counts = backend.counts();
  EXPECT_EQ(counts.enc, 1u);
  EXPECT_EQ(counts.mul_plain, 1u);
  EXPECT_EQ(counts.add, 1u);
  EXPECT_EQ(counts.dec, 1u);
}

TEST(MockIntegerBackendTest, DigestMismatchRejected) {
  MockIntegerBackend a(13);
  MockIntegerBackend b(17);
  auto ka = a.KeyGen(SeedFromU64(1));
  auto kb = b.KeyGen(SeedFromU64(1));
  auto ca = a.Encrypt(ka.pub, 3);
  auto cb = b.Encrypt(kb.pub, 3);
  EXPECT_THROW(a.EvalAdd(ca, cb), Error);
  EXPECT_THROW(a.Decrypt(ka.secret, cb), Error);
}

TEST(MockRealBackendTest, ExactRationalIdentities) {
  MockRealBackend backend;
  auto keys = backend.KeyGen(SeedFromU64(2));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(rng);
    auto c = backend.Encrypt(keys.pub, v);
    EXPECT_EQ(backend.DecryptExact(keys.secret, c), mpq_class(v));
    // Fused mask scalar: enc(r) * (v / r) is exactly v.
    const std::uint64_t r = 1 + rng() % 1000;
    auto masked = backend.EvalMulPlain(backend.Encrypt(keys.pub, double(r)),
                                       RealScalar{v, r});
    EXPECT_EQ(backend.DecryptExact(keys.secret, masked), mpq_class(v));
  }
  EXPECT_EQ(backend.Tolerance(5.0), 0.0);
}

TEST(SerializeTest, MockRoundtripIsByteIdentical) {
  MockIntegerBackend ib(65537);
  MockRealBackend rb;
  auto ik = ib.KeyGen(SeedFromU64(4));
  auto rk = rb.KeyGen(SeedFromU64(4));
  for (const Ciphertext& c :
       {ib.Encrypt(ik.pub, 65536), rb.Encrypt(rk.pub, -1234.5678),
        rb.EvalMulPlain(rb.Encrypt(rk.pub, 3.0), RealScalar{1.0, 3})}) {
    const Backend& b = c.tag == SchemeTag::kMock && c.plaintext_modulus != 0
                           ? static_cast<const Backend&>(ib)
                           : static_cast<const Backend&>(rb);
    const std::string bytes = SerializeCiphertext(c);
    EXPECT_EQ(bytes.substr(0, 4), "SILC");
    EXPECT_EQ(SerializeCiphertext(DeserializeCiphertext(b, bytes)), bytes);
  }
}

TEST(SerializeTest, RejectsForeignDigestAndGarbage) {
  MockIntegerBackend a(13);
  MockIntegerBackend b(17);
  auto ka = a.KeyGen(SeedFromU64(1));
  const std::string bytes = SerializeCiphertext(a.Encrypt(ka.pub, 2));
  EXPECT_THROW(DeserializeCiphertext(b, bytes), UsageError);
  EXPECT_THROW(DeserializeCiphertext(a, "SILCxx"), FormatError);
  EXPECT_THROW(DeserializeCiphertext(a, bytes.substr(0, bytes.size() - 3)),
               FormatError);
}

TEST(ConsumptionIdTest, MonotoneAndUnique) {
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) EXPECT_TRUE(seen.insert(NextConsumptionId()).second);
}

}  // namespace
}  // namespace silca::he
