// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/planner/planner.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <vector>

#include "silca/cache/cache_bank.h"
#include "silca/common/error.h"

namespace silca::planner {
namespace {

mpq_class ExactPhi(double phi) {
  if (!std::isfinite(phi) || phi <= 0) throw ParameterError("phi must be a positive finite number");
  return mpq_class(phi);
}

std::uint64_t BufferCount(std::uint64_t max_value) {
  if (max_value < 2) throw ParameterError("max value N must be >= 2 (B = 0)");
  return cache::FloorLog2(max_value);
}

mpz_class U(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

mpz_class Ceil(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class Floor(const mpq_class& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpq_class SimpleFactor(double phi, std::uint64_t max_value) {
  const mpq_class p = ExactPhi(phi);
  if (p <= 1) throw ParameterError("n bounds need phi > 1");
  return p * U(BufferCount(max_value)) / (p - 1);
}

nlohmann::json Number(const mpz_class& z) {
  if (z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
  }
  return z.get_str();
}

double Median(std::vector<double> v) {
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

}  // namespace

mpz_class PlanMinL(double phi, const mpz_class& n, std::uint64_t max_value) {
  const mpq_class p = ExactPhi(phi);
  if (n < 1) throw ParameterError("n must be >= 1");
  const std::uint64_t b = BufferCount(max_value);
  const mpq_class bound = (p - 1) * n / (p * U(b));
  if (bound <= 0) return 0;
  return Ceil(bound);
}

mpz_class PlanMaxNSimple(double phi, std::uint64_t buffer_len, std::uint64_t max_value) {
  return Floor(SimpleFactor(phi, max_value) * U(buffer_len));
}

mpz_class PlanMaxNExtended(double phi, std::uint64_t buffer_len,
                           std::uint64_t max_value) {
  const mpq_class factor = SimpleFactor(phi, max_value);
  const mpz_class lb = U(buffer_len) * U(BufferCount(max_value));
  if (lb < 2) throw ParameterError("extended bound needs L * B >= 2");
  mpz_class pairs;
  mpz_bin_ui(pairs.get_mpz_t(), lb.get_mpz_t(), 2);
  return Floor(factor * pairs * U(buffer_len));
}

mpz_class PlanMaxNCubed(std::uint64_t buffer_len, std::uint64_t max_value) {
  const mpz_class bl = U(BufferCount(max_value)) * U(buffer_len);
  return bl * bl * bl;
}

MemoryEstimate EstimateMemory(std::uint64_t buffer_len, std::uint64_t max_value,
                              std::uint64_t ct_size) {
  const mpz_class per_buffer = U(buffer_len) * U(ct_size);
  return {U(BufferCount(max_value)) * per_buffer, U(max_value) * per_buffer};
}

PlanReport MakePlan(const PlanInput& input) {
  PlanReport r;
  r.input = input;
  r.b = BufferCount(input.max_value);
  r.l_min = PlanMinL(input.phi, input.n, input.max_value);
  if (input.buffer_len) {
    r.buffer_len = *input.buffer_len;
  } else {
    if (!r.l_min.fits_ulong_p()) throw ParameterError("l_min does not fit 64 bits; pass L");
    r.buffer_len = r.l_min.get_ui();
  }
  if (input.phi > 1) {
    r.n_max_simple = PlanMaxNSimple(input.phi, r.buffer_len, input.max_value);
    if (mpz_class(U(r.buffer_len) * U(r.b)) >= 2) {
      r.n_max_extended = PlanMaxNExtended(input.phi, r.buffer_len, input.max_value);
    }
  }
  r.n_max_cubed = PlanMaxNCubed(r.buffer_len, input.max_value);
  if (input.ct_size) r.memory = EstimateMemory(r.buffer_len, input.max_value, *input.ct_size);
  return r;
}

std::string PlanToJson(const PlanReport& r) {
  nlohmann::ordered_json j;
  j["b"] = r.b;
  j["l_min"] = Number(r.l_min);
  j["n_max_simple"] = r.n_max_simple ? Number(*r.n_max_simple) : nlohmann::json();
  j["n_max_extended"] = r.n_max_extended ? Number(*r.n_max_extended) : nlohmann::json();
  j["n_max_cubed"] = Number(r.n_max_cubed);
  j["mem_blog"] = r.memory ? Number(r.memory->blog) : nlohmann::json();
  j["mem_nlinear"] = r.memory ? Number(r.memory->nlinear) : nlohmann::json();
  j["phi"] = r.input.phi;
  return j.dump();
}

PhiMeasurement MeasurePhi(const he::Backend& backend, const he::PublicKey& pk,
                          int iterations) {
  if (iterations < 100) throw ParameterError("measure_phi needs >= 100 iterations");
  using Clock = std::chrono::steady_clock;
  const auto* ib = dynamic_cast<const he::IntegerBackend*>(&backend);
  const auto* rb = dynamic_cast<const he::RealBackend*>(&backend);
  if (!ib && !rb) throw UsageError("measure_phi: unknown backend kind");
  auto enc = [&] {
    return ib ? ib->Encrypt(pk, 3) : rb->Encrypt(pk, 3.0);
  };
  auto mul = [&](he::Ciphertext c) {
    return ib ? ib->EvalMulPlain(std::move(c), 5)
              : rb->EvalMulPlain(std::move(c), he::RealScalar{5.0, 7});
  };
  const he::Ciphertext base = enc();
  const int warmup = std::max(10, iterations / 10);
  for (int i = 0; i < warmup; ++i) {
    enc();
    mul(base);
  }
  std::vector<double> te, tm;
  te.reserve(iterations);
  tm.reserve(iterations);
  for (int i = 0; i < iterations; ++i) {
    auto t0 = Clock::now();
    he::Ciphertext e = enc();
    auto t1 = Clock::now();
    te.push_back(std::chrono::duration<double>(t1 - t0).count());
    he::Ciphertext copy = base;  // copy outside the timed region
    auto t2 = Clock::now();
    he::Ciphertext m = mul(std::move(copy));
    auto t3 = Clock::now();
    tm.push_back(std::chrono::duration<double>(t3 - t2).count());
  }
  PhiMeasurement out;
  out.iterations = iterations;
  out.median_enc_seconds = Median(te);
  out.median_mul_plain_seconds = Median(tm);
  out.phi = out.median_mul_plain_seconds > 0
                ? out.median_enc_seconds / out.median_mul_plain_seconds
                : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace silca::planner
