// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "silca/cache/cache_bank.h"
#include "silca/common/error.h"
#include "silca/he/mock.h"
#include "silca/he/serialize.h"
#include "silca/rlwe/factory.h"

namespace silca::cache {
namespace {

enum class Kind { kMock, kLattice };

void PrintTo(Kind kind, std::ostream* os) {
  *os << (kind == Kind::kMock ? "mock" : "lattice");
}

std::string KindName(const ::testing::TestParamInfo<Kind>& info) {
  return info.param == Kind::kMock ? "Mock" : "Lattice";
}

// SilcaZ runs on the integer backend of the kind, Silca on the real one.
struct Fixture {
  std::shared_ptr<const he::Backend> backend;
  he::KeyPair keys;
};

Fixture IntegerFixture(Kind kind, std::uint64_t n) {
  he::SchemeParams p = kind == Kind::kMock ? he::MockParams(n)
                                           : he::DefaultBgvParams(n, 1024);
  auto backend = rlwe::MakeBackend(p);
  auto keys = backend->KeyGen(SeedFromU64(100));
  return {backend, keys};
}

Fixture RealFixture(Kind kind) {
  he::SchemeParams p = kind == Kind::kMock ? he::MockParams()
                                           : he::DefaultCkksParams(2048);
  auto backend = rlwe::MakeBackend(p);
  auto keys = backend->KeyGen(SeedFromU64(200));
  return {backend, keys};
}

BankConfig Config(std::uint64_t n, std::size_t l,
                  RefillPolicy refill = RefillPolicy::kManual) {
  BankConfig c;
  c.max_value = n;
  c.buffer_len = l;
  c.refill = refill;
  c.factor_seed = SeedFromU64(n * 31 + l);
  return c;
}

double DecryptReal(const Fixture& f, const he::Ciphertext& c) {
  return he::AsReal(f.backend)->Decrypt(f.keys.secret, c);
}

std::uint64_t DecryptInt(const Fixture& f, const he::Ciphertext& c) {
  return he::AsInteger(f.backend)->Decrypt(f.keys.secret, c);
}

class CacheBankTest : public ::testing::TestWithParam<Kind> {};

TEST(FloorLog2Test, Values) {
  EXPECT_EQ(FloorLog2(1), 0u);
  EXPECT_EQ(FloorLog2(16), 4u);
  EXPECT_EQ(FloorLog2(65537), 16u);
  EXPECT_EQ(FloorLog2(104949), 16u);
  EXPECT_THROW(FloorLog2(0), ParameterError);
}

TEST(RingBufferTest, FifoWithWraparound) {
  RingBuffer<int> rb(3);
  EXPECT_TRUE(rb.PushBack(1));
  EXPECT_TRUE(rb.PushBack(2));
  EXPECT_TRUE(rb.PushBack(3));
  EXPECT_FALSE(rb.PushBack(4));
  EXPECT_EQ(*rb.PopFront(), 1);
  EXPECT_TRUE(rb.PushBack(5));
  EXPECT_EQ(rb.Snapshot(), (std::vector<int>{2, 3, 5}));
  rb.PopFront();
  rb.PopFront();
  rb.PopFront();
  EXPECT_FALSE(rb.PopFront().has_value());
}

TEST_P(CacheBankTest, BuildCountsAndFactorRanges) {
  auto f = RealFixture(GetParam());
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilca, Config(16, 3));
  EXPECT_EQ(bank->buffer_count(), 4u);
  std::size_t total = 0;
  for (std::size_t idx = 1; idx <= 4; ++idx) {
    EXPECT_EQ(bank->buffer_size(idx), 3u);
    total += bank->buffer_size(idx);
    EXPECT_GE(bank->factor(idx), 1u);
    EXPECT_LE(bank->factor(idx), 16u);
  }
  EXPECT_EQ(total, 12u);
  const BankStats s = bank->Stats();
  EXPECT_EQ(s.encrypts + s.pops + s.refills + s.fallbacks + s.queue_depth, 0u);
}

TEST_P(CacheBankTest, EntriesDecryptToTheirFactor) {
  auto fi = IntegerFixture(GetParam(), 65537);
  auto zbank = CacheBank::Build(fi.backend, fi.keys.pub, Mode::kSilcaZ,
                                Config(65537, 4));
  for (std::size_t idx = 1; idx <= zbank->buffer_count(); ++idx) {
    const std::uint64_t r = zbank->factor(idx);
    EXPECT_GE(r, 2u);
    EXPECT_LE(r, 65536u);
    for (const auto& c : zbank->Snapshot(idx)) EXPECT_EQ(DecryptInt(fi, c), r);
  }
  auto fr = RealFixture(GetParam());
  auto bank = CacheBank::Build(fr.backend, fr.keys.pub, Mode::kSilca, Config(1000, 2));
  for (std::size_t idx = 1; idx <= bank->buffer_count(); ++idx) {
    const double r = static_cast<double>(bank->factor(idx));
    for (const auto& c : bank->Snapshot(idx)) {
      EXPECT_NEAR(DecryptReal(fr, c), r, fr.backend->params().scheme == he::SchemeTag::kMock
                                             ? 0.0
                                             : he::AsReal(fr.backend)->Tolerance(r));
    }
  }
}

TEST_P(CacheBankTest, SilcaRoundtrips) {
  auto f = RealFixture(GetParam());
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilca, Config(104949, 8));
  auto real = he::AsReal(f.backend);
  auto zero = bank->SilcaEncrypt(0.0);
  EXPECT_EQ(zero.path, Path::kZero);
  EXPECT_LE(std::abs(DecryptReal(f, zero.ciphertext)), real->Tolerance(0.0) + 1e-6);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1e5, 1e5);
  std::vector<double> values = {38255.138, 901.0, 104949.5, 0.01};
  for (int i = 0; i < 60; ++i) values.push_back(dist(rng));
  for (double v : values) {
    auto out = bank->SilcaEncrypt(v);
    EXPECT_EQ(out.path, Path::kCached);
    const double got = DecryptReal(f, out.ciphertext);
    if (GetParam() == Kind::kMock) {
      EXPECT_EQ(he::MockRealBackend().DecryptExact(f.keys.secret, out.ciphertext),
                mpq_class(v));
    } else {
      EXPECT_LE(std::abs(got - v), 1e-3 * std::abs(v)) << v;
    }
    bank->Drain();
  }
}

TEST_P(CacheBankTest, IdentityMaskAppliesPlaintextDirectly) {
  auto f = RealFixture(GetParam());
  BankConfig c = Config(16, 2);
  c.factors = {1, 5, 7, 9};
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilca, c);
  f.backend->ResetCounts();
  auto out = bank->SilcaEncrypt(12.5, 1);
  EXPECT_EQ(out.salt, 1u);
  EXPECT_NEAR(DecryptReal(f, out.ciphertext), 12.5,
              he::AsReal(f.backend)->Tolerance(12.5));
  EXPECT_EQ(f.backend->counts().mul_plain, 1u);
  EXPECT_EQ(f.backend->counts().enc, 0u);
}

TEST_P(CacheBankTest, SilcazExactRoundtrips) {
  auto f = IntegerFixture(GetParam(), 65537);
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(65537, 16));
  auto zero = bank->SilcazEncrypt(0);
  EXPECT_EQ(zero.path, Path::kZero);
  EXPECT_EQ(DecryptInt(f, zero.ciphertext), 0u);
  EXPECT_EQ(DecryptInt(f, bank->SilcazEncrypt(65536).ciphertext), 65536u);
  EXPECT_THROW(bank->SilcazEncrypt(65537), DomainError);
  std::mt19937_64 rng(2);
  const int count = GetParam() == Kind::kMock ? 10000 : 1000;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t m = rng() % 65537;
    auto out = bank->SilcazEncrypt(m);
    ASSERT_EQ(DecryptInt(f, out.ciphertext), m);
    if (i % 8 == 0) bank->Drain();
  }
}

TEST_P(CacheBankTest, TwoStepModeMatchesFused) {
  auto fi = IntegerFixture(GetParam(), 65537);
  BankConfig c = Config(65537, 4);
  c.scalar_mode = ScalarMode::kTwoStep;
  auto zbank = CacheBank::Build(fi.backend, fi.keys.pub, Mode::kSilcaZ, c);
  fi.backend->ResetCounts();
  auto out = zbank->SilcazEncrypt(4321);
  EXPECT_EQ(DecryptInt(fi, out.ciphertext), 4321u);
  EXPECT_EQ(fi.backend->counts().mul_plain, 2u);

  auto fr = RealFixture(GetParam());
  BankConfig cr = Config(1 << 17, 4);
  cr.scalar_mode = ScalarMode::kTwoStep;
  auto bank = CacheBank::Build(fr.backend, fr.keys.pub, Mode::kSilca, cr);
  EXPECT_NEAR(DecryptReal(fr, bank->SilcaEncrypt(1499.49).ciphertext), 1499.49,
              1e-3 * 1499.49);
}

TEST_P(CacheBankTest, RefillRestoresSteadyState) {
  auto f = IntegerFixture(GetParam(), 257);
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(257, 3));
  auto out = bank->SilcazEncrypt(100, 2);
  EXPECT_EQ(bank->buffer_size(2), 2u);
  EXPECT_EQ(bank->Stats().queue_depth, 1u);
  EXPECT_EQ(bank->RefillStep(10), 1u);
  EXPECT_EQ(bank->buffer_size(2), 3u);
  // The refilled entry is at the back.
  EXPECT_EQ(DecryptInt(f, bank->Snapshot(2).back()), bank->factor(2));
}

TEST_P(CacheBankTest, DisabledRefillExhaustsThenFallsBack) {
  auto f = IntegerFixture(GetParam(), 257);
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ,
                               Config(257, 4, RefillPolicy::kDisabled));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(bank->SilcazEncrypt(9, 3).path, Path::kCached);
  f.backend->ResetCounts();
  auto out = bank->SilcazEncrypt(9, 3);
  EXPECT_EQ(out.path, Path::kFallback);
  EXPECT_EQ(f.backend->counts().enc, 1u);
  EXPECT_EQ(DecryptInt(f, out.ciphertext), 9u);
  const BankStats s = bank->Stats();
  EXPECT_EQ(s.pops, 4u);
  EXPECT_EQ(s.fallbacks, 1u);
  EXPECT_EQ(s.dropped, 4u);
}

TEST_P(CacheBankTest, StatsIdentitiesUnderRandomInterleaving) {
  auto f = IntegerFixture(GetParam(), 65537);
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(65537, 6));
  std::mt19937_64 rng(3);
  std::uint64_t cached = 0;
  for (int i = 0; i < 400; ++i) {
    const int action = rng() % 10;
    if (action < 7) {
      const std::uint64_t m = rng() % 4 == 0 ? 0 : rng() % 65537;
      cached += bank->SilcazEncrypt(m).path == Path::kCached;
    } else if (action < 9) {
      bank->RefillStep(rng() % 5);
    } else {
      bank->Drain();
    }
    const BankStats s = bank->Stats();
    ASSERT_EQ(s.encrypts, s.pops + s.fallbacks + s.zero_cases);
    ASSERT_EQ(s.pops, s.refills + s.queue_depth + s.in_flight + s.dropped);
    ASSERT_EQ(s.pops, cached);
  }
  bank->Drain();
  for (std::size_t idx = 1; idx <= bank->buffer_count(); ++idx) {
    EXPECT_EQ(bank->buffer_size(idx), 6u);
  }
}

TEST_P(CacheBankTest, ConcurrentCallersWithBackgroundRefill) {
  auto f = IntegerFixture(GetParam(), 65537);
  BankConfig c = Config(65537, 8, RefillPolicy::kBackground);
  c.refill_workers = 2;
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, c);
  const int per_thread = GetParam() == Kind::kMock ? 2000 : 100;
  std::vector<std::vector<EncryptOutcome>> results(4);
  {
    std::vector<std::jthread> callers;
    for (int t = 0; t < 4; ++t) {
      callers.emplace_back([&, t] {
        for (int i = 0; i < per_thread; ++i) {
          results[t].push_back(bank->SilcazEncrypt(1 + (t * per_thread + i) % 65536));
        }
      });
    }
  }
  bank->Drain();
  std::set<std::uint64_t> ids;
  for (int t = 0; t < 4; ++t) {
    for (int i = 0; i < per_thread; ++i) {
      const auto& out = results[t][i];
      ASSERT_EQ(DecryptInt(f, out.ciphertext),
                static_cast<std::uint64_t>(1 + (t * per_thread + i) % 65536));
      if (out.path == Path::kCached) EXPECT_TRUE(ids.insert(out.mask_id).second);
    }
  }
  for (std::size_t idx = 1; idx <= bank->buffer_count(); ++idx) {
    EXPECT_EQ(bank->buffer_size(idx), 8u);
  }
  const BankStats s = bank->Stats();
  EXPECT_EQ(s.pops, s.refills);
}

TEST_P(CacheBankTest, CachedPathUsesNoEncryption) {
  auto f = RealFixture(GetParam());
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilca, Config(1 << 20, 4));
  f.backend->ResetCounts();
  for (int i = 0; i < 20; ++i) {
    ASSERT_EQ(bank->SilcaEncrypt(3.25 + i).path, Path::kCached);
  }
  EXPECT_EQ(f.backend->counts().enc, 0u);
  EXPECT_EQ(f.backend->counts().mul_plain, 20u);
}

TEST_P(CacheBankTest, SaveLoadRoundtrip) {
  auto f = IntegerFixture(GetParam(), 257);
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(257, 2));
  std::stringstream secret, redacted;
  bank->Save(secret, true);
  bank->Save(redacted, false);
  auto loaded = CacheBank::Load(secret, f.backend, f.keys.pub, Config(0, 1));
  EXPECT_EQ(loaded->mode(), Mode::kSilcaZ);
  EXPECT_EQ(loaded->buffer_len(), 2u);
  for (std::size_t idx = 1; idx <= 8; ++idx) EXPECT_EQ(loaded->factor(idx), bank->factor(idx));
  EXPECT_EQ(DecryptInt(f, loaded->SilcazEncrypt(77).ciphertext), 77u);
  std::stringstream again;
  auto reload_src = std::stringstream(secret.str());
  auto twin = CacheBank::Load(reload_src, f.backend, f.keys.pub, Config(0, 1));
  twin->Save(again, true);
  EXPECT_EQ(again.str(), secret.str());

  auto blind = CacheBank::Load(redacted, f.backend, f.keys.pub, Config(0, 1));
  EXPECT_TRUE(blind->redacted());
  EXPECT_THROW(blind->SilcazEncrypt(5), UsageError);
  EXPECT_EQ(blind->factor(1), 0u);
}

TEST_P(CacheBankTest, RepeatedPlaintextGivesDistinctCiphertexts) {
  auto f = IntegerFixture(GetParam(), 65537);
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(65537, 32));
  std::set<std::string> seen;
  const int count = GetParam() == Kind::kMock ? 10000 : 500;
  for (int i = 0; i < count; ++i) {
    seen.insert(he::SerializeCiphertext(bank->SilcazEncrypt(4242).ciphertext));
    bank->RefillStep(1);
  }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(count));
}

TEST_P(CacheBankTest, RejectsBadConfigurations) {
  auto f = IntegerFixture(GetParam(), 257);
  EXPECT_THROW(CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(256, 2)),
               ParameterError);
  EXPECT_THROW(CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(251, 2)),
               ParameterError);
  EXPECT_THROW(CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(1, 2)),
               ParameterError);
  EXPECT_THROW(CacheBank::Build(f.backend, f.keys.pub, Mode::kSilca, Config(257, 2)),
               Error);
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, Config(257, 2));
  EXPECT_THROW(bank->SilcaEncrypt(1.0), UsageError);
  EXPECT_THROW(bank->SilcazEncrypt(1, 9), UsageError);
}

TEST_P(CacheBankTest, ParallelFillProducesSameFactorsAndFullBuffers) {
  auto f = IntegerFixture(GetParam(), 65537);
  BankConfig c = Config(65537, 8);
  c.fill_workers = 4;
  auto bank = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, c);
  c.fill_workers = 1;
  auto serial = CacheBank::Build(f.backend, f.keys.pub, Mode::kSilcaZ, c);
  for (std::size_t idx = 1; idx <= 16; ++idx) {
    EXPECT_EQ(bank->factor(idx), serial->factor(idx));
    auto entries = bank->Snapshot(idx);
    ASSERT_EQ(entries.size(), 8u);
    for (const auto& e : entries) EXPECT_EQ(DecryptInt(f, e), bank->factor(idx));
  }
  EXPECT_GT(bank->fill_seconds(), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Backends, CacheBankTest,
                         ::testing::Values(Kind::kMock, Kind::kLattice), KindName);

}  // namespace
}  // namespace silca::cache
