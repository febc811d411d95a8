// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "silca/common/error.h"
#include "silca/ring/crt.h"
#include "silca/ring/modarith.h"
#include "silca/ring/ring_element.h"
#include "silca/ring/rns_basis.h"
#include "silca/ring/sampling.h"
#include "test_util.h"

namespace silca::ring {
namespace {

using ::silca::testing::NegacyclicSchoolbook;
using ::silca::testing::RandomResidues;
using ::silca::testing::TrialDivisionPrime;

std::shared_ptr<const RnsBasis> SinglePrime(std::size_t n, u64 q) {
  return RnsBasis::Create(n, {q});
}

RingElement Random(const std::shared_ptr<const RnsBasis>& basis,
                   std::mt19937_64& rng) {
  std::vector<u64> words;
  for (std::size_t i = 0; i < basis->prime_count(); ++i) {
    auto r = RandomResidues(basis->ring_dim(), basis->prime(i), rng);
    words.insert(words.end(), r.begin(), r.end());
  }
  return RingElement::FromResidues(basis, std::move(words), Domain::kCoefficient);
}

TEST(RnsBasisTest, RejectsBadParameters) {
  EXPECT_THROW(RnsBasis::Create(12, {97}), ParameterError);
  EXPECT_THROW(RnsBasis::Create(16, {101}), ParameterError);  // 100 % 32 != 0
  EXPECT_THROW(RnsBasis::Create(16, {97, 97}), ParameterError);
  EXPECT_THROW(RnsBasis::Create(16, {}), ParameterError);
  EXPECT_THROW(RnsBasis::Create(16, {129}), ParameterError);  // not prime
}

TEST(RnsBasisTest, PsiIsPrimitiveRootOfOrderTwoN) {
  for (std::size_t n : {8u, 16u, 1024u}) {
    auto primes = GenerateNttPrimes(60, 2, n);
    auto basis = RnsBasis::Create(n, primes);
    for (std::size_t i = 0; i < basis->prime_count(); ++i) {
      const u64 q = basis->prime(i);
      const u64 psi = basis->tables(i).psi;
      EXPECT_EQ(PowMod(psi, n, q), q - 1);
      EXPECT_EQ(PowMod(psi, 2 * n, q), 1u);
    }
  }
}

TEST(NttTest, ZeroMapsToZero) {
  auto basis = SinglePrime(16, 97);
  RingElement z = RingElement::Zero(basis);
  RingElement f = NttForward(z);
  EXPECT_EQ(f.domain(), Domain::kEvaluation);
  for (u64 v : f.residues(0)) EXPECT_EQ(v, 0u);
  RingElement back = NttInverse(f);
  EXPECT_EQ(back, z);
}

TEST(NttTest, ConstantRoundtrips) {
  auto basis = SinglePrime(16, 97);
  RingElement c = RingElement::Constant(basis, 42);
  RingElement f = NttForward(c);
  // Evaluating a constant at any root gives the constant.
  for (u64 v : f.residues(0)) EXPECT_EQ(v, 42u);
  EXPECT_EQ(NttInverse(f), c);
}

TEST(NttTest, WrongDomainIsUsageError) {
  auto basis = SinglePrime(16, 97);
  RingElement c = RingElement::Constant(basis, 1);
  EXPECT_THROW(NttInverse(c), UsageError);
  RingElement f = NttForward(c);
  EXPECT_THROW(NttForward(f), UsageError);
}

TEST(NttTest, PointwiseProductMatchesSchoolbookAtDim16Prime97) {
  auto basis = SinglePrime(16, 97);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    RingElement a = Random(basis, rng);
    RingElement b = Random(basis, rng);
    const std::vector<u64> av(a.residues(0).begin(), a.residues(0).end());
    const std::vector<u64> bv(b.residues(0).begin(), b.residues(0).end());
    RingElement fa = NttForward(a);
    PointwiseMulInPlace(fa, NttForward(b));
    RingElement prod = NttInverse(fa);
    const auto expected = NegacyclicSchoolbook(av, bv, 97);
    ASSERT_EQ(std::vector<u64>(prod.residues(0).begin(), prod.residues(0).end()),
              expected);
  }
}

TEST(NttTest, RandomRoundtripsAreExact) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {8u, 16u, 32u}) {
    auto basis = RnsBasis::Create(n, GenerateNttPrimes(60, 2, n));
    for (int i = 0; i < 1000; ++i) {
      RingElement x = Random(basis, rng);
      ASSERT_EQ(NttInverse(NttForward(x)), x);
    }
  }
}

TEST(PolyMulTest, MultiplicativeIdentity) {
  auto basis = RnsBasis::Create(64, GenerateNttPrimes(50, 2, 64));
  std::mt19937_64 rng(3);
  RingElement a = Random(basis, rng);
  EXPECT_EQ(PolyMul(a, RingElement::Constant(basis, 1)), a);
}

TEST(PolyMulTest, NegacyclicWraparound) {
  const std::size_t n = 32;
  auto basis = RnsBasis::Create(n, GenerateNttPrimes(40, 2, n));
  std::vector<std::int64_t> x(n, 0);
  x[n / 2] = 1;
  RingElement half = RingElement::FromSigned(basis, x);
  RingElement sq = PolyMul(half, half);
  EXPECT_EQ(sq, RingElement::Constant(basis, -1));
  for (std::size_t i = 0; i < basis->prime_count(); ++i) {
    EXPECT_EQ(sq.residues(i)[0], basis->prime(i) - 1);
  }
}

TEST(PolyMulTest, MatchesSchoolbookOnRandomPairs) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {2u, 4u, 16u, 64u}) {
    auto basis = RnsBasis::Create(n, GenerateNttPrimes(59, 2, n));
    for (int trial = 0; trial < 40; ++trial) {
      RingElement a = Random(basis, rng);
      RingElement b = Random(basis, rng);
      RingElement prod = PolyMul(a, b);
      for (std::size_t i = 0; i < basis->prime_count(); ++i) {
        const u64 q = basis->prime(i);
        const auto expected = NegacyclicSchoolbook(
            {a.residues(i).begin(), a.residues(i).end()},
            {b.residues(i).begin(), b.residues(i).end()}, q);
        ASSERT_EQ(std::vector<u64>(prod.residues(i).begin(), prod.residues(i).end()),
                  expected);
      }
    }
  }
}

TEST(PolyMulTest, BasisMismatchIsError) {
  auto b1 = SinglePrime(16, 97);
  auto b2 = SinglePrime(16, 193);
  EXPECT_THROW(PolyMul(RingElement::Zero(b1), RingElement::Zero(b2)), UsageError);
  EXPECT_THROW(PolyAdd(RingElement::Zero(b1), RingElement::Zero(b2)), UsageError);
}

TEST(ScalarMulTest, ZeroOneAndAdditiveInverse) {
  auto basis = RnsBasis::Create(32, GenerateNttPrimes(60, 3, 32));
  std::mt19937_64 rng(9);
  RingElement a = Random(basis, rng);
  EXPECT_EQ(ScalarMul(a, 0), RingElement::Zero(basis));
  EXPECT_EQ(ScalarMul(a, 1), a);
  EXPECT_EQ(PolyAdd(a, Negate(a)), RingElement::Zero(basis));
  EXPECT_EQ(ScalarMul(a, -1), Negate(a));
}

TEST(ScalarMulTest, DistributesOverAddition) {
  auto basis = RnsBasis::Create(64, GenerateNttPrimes(60, 2, 64));
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> sdist(-(1LL << 40), 1LL << 40);
  for (int trial = 0; trial < 200; ++trial) {
    RingElement a = Random(basis, rng);
    RingElement b = Random(basis, rng);
    const std::int64_t s = sdist(rng);
    EXPECT_EQ(ScalarMul(PolyAdd(a, b), s),
              PolyAdd(ScalarMul(a, s), ScalarMul(b, s)));
  }
}

TEST(SamplingTest, DistinctSeedsGiveDistinctElements) {
  auto basis = RnsBasis::Create(64, GenerateNttPrimes(60, 2, 64));
  for (std::uint64_t i = 0; i < 100; ++i) {
    EXPECT_NE(SampleUniform(basis, SeedFromU64(2 * i)),
              SampleUniform(basis, SeedFromU64(2 * i + 1)));
  }
  EXPECT_EQ(SampleUniform(basis, SeedFromU64(5)), SampleUniform(basis, SeedFromU64(5)));
}

TEST(SamplingTest, UniformResiduesInRange) {
  auto basis = RnsBasis::Create(1024, {GenerateNttPrimes(45, 1, 1024)[0],
                                       GenerateNttPrimes(60, 1, 1024)[0]});
  RingElement u = SampleUniform(basis, SeedFromU64(1));
  for (std::size_t i = 0; i < basis->prime_count(); ++i) {
    for (u64 v : u.residues(i)) ASSERT_LT(v, basis->prime(i));
  }
}

TEST(SamplingTest, CenteredBinomialMeanAndSupport) {
  ChaChaStream stream(SeedFromU64(77));
  const auto coeffs = SampleCbdCoefficients(100000, kDefaultCbdEta, stream);
  double sum = 0;
  double sq = 0;
  for (auto c : coeffs) {
    ASSERT_LE(std::llabs(c), kDefaultCbdEta);
    sum += static_cast<double>(c);
    sq += static_cast<double>(c * c);
  }
  const double mean = sum / coeffs.size();
  EXPECT_GE(mean, -0.1);
  EXPECT_LE(mean, 0.1);
  // Variance eta/2 = 4, std-dev 2.
  EXPECT_NEAR(std::sqrt(sq / coeffs.size() - mean * mean), 2.0, 0.05);
}

TEST(SamplingTest, ErrorElementIsSmallInSignedForm) {
  auto basis = RnsBasis::Create(256, GenerateNttPrimes(60, 2, 256));
  RingElement e = SampleError(basis, SeedFromU64(3));
  for (std::size_t i = 0; i < basis->prime_count(); ++i) {
    const u64 q = basis->prime(i);
    for (u64 v : e.residues(i)) {
      const std::int64_t s = v > q / 2 ? -static_cast<std::int64_t>(q - v)
                                        : static_cast<std::int64_t>(v);
      ASSERT_LE(std::llabs(s), kDefaultCbdEta);
    }
  }
}

TEST(ModInverseTest, SmallCases) {
  EXPECT_EQ(ModInverse(1, 101), 1u);
  // Brute-force oracle over Z_7.
  u64 oracle = 0;
  for (u64 v = 1; v < 7; ++v) {
    if ((3 * v) % 7 == 1) oracle = v;
  }
  EXPECT_EQ(oracle, 5u);
  EXPECT_EQ(ModInverse(3, 7), oracle);
  EXPECT_THROW(ModInverse(0, 7), ParameterError);
  EXPECT_THROW(ModInverse(14, 7), ParameterError);
}

TEST(ModInverseTest, ExhaustiveForEveryPrimeBelowTenThousand) {
  for (u64 p = 2; p <= 10000; ++p) {
    if (!TrialDivisionPrime(p)) continue;
    for (u64 r = 1; r < p; ++r) {
      const u64 v = ModInverse(r, p);
      ASSERT_GT(v, 0u);
      ASSERT_LT(v, p);
      ASSERT_EQ((r * v) % p, 1u) << "r=" << r << " p=" << p;
    }
  }
}

TEST(PrimeTest, MillerRabinAgreesWithTrialDivision) {
  for (u64 n = 0; n < 200000; ++n) {
    ASSERT_EQ(IsPrime(n), TrialDivisionPrime(n)) << n;
  }
  EXPECT_TRUE(IsPrime(2305843009213693951ULL));   // 2^61 - 1
  EXPECT_FALSE(IsPrime(3215031751ULL));           // strong pseudoprime to 2,3,5,7
}

TEST(PrimeTest, SmallestPrimeAboveCovidMaximum) {
  // The integer plaintext modulus used for the Covid19 column.
  const u64 p = NextPrime(2309884);
  EXPECT_EQ(p, 2309891u);
  EXPECT_TRUE(TrialDivisionPrime(p));
  for (u64 c = 2309885; c < p; ++c) EXPECT_FALSE(TrialDivisionPrime(c));
}

TEST(CrtTest, ComposesCenteredValues) {
  auto basis = RnsBasis::Create(8, GenerateNttPrimes(60, 3, 8));
  CrtComposer crt(*basis);
  for (std::int64_t v : {0LL, 1LL, -1LL, 123456789LL, -987654321012LL}) {
    const auto residues = ScalarResidues(*basis, v);
    EXPECT_EQ(crt.ComposeCentered(residues), mpz_class(static_cast<long>(v)));
  }
}

TEST(CrtTest, MaxMagnitudeFastPathMatchesGeneralPath) {
  auto basis2 = RnsBasis::Create(16, GenerateNttPrimes(60, 2, 16));
  std::vector<std::int64_t> coeffs(16);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> d(-(1LL << 50), 1LL << 50);
  for (auto& c : coeffs) c = d(rng);
  coeffs[3] = -(1LL << 55);
  RingElement e = RingElement::FromSigned(basis2, coeffs);
  CrtComposer crt(*basis2);
  EXPECT_NEAR(crt.MaxLog2Magnitude(e.words(), 16), 55.0, 1e-9);
}

}  // namespace
}  // namespace silca::ring
