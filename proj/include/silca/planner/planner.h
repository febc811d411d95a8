// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_PLANNER_PLANNER_H_
#define SILCA_PLANNER_PLANNER_H_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "silca/he/backend.h"

namespace silca::planner {

// All bounds are evaluated over exact rationals; phi is taken as the exact
// binary value of the double. B = floor(log2 N).

// Smallest L >= 0 with L >= (phi - 1) n / (phi B).
mpz_class PlanMinL(double phi, const mpz_class& n, std::uint64_t max_value);
// floor(phi B / (phi - 1) * L). phi > 1.
mpz_class PlanMaxNSimple(double phi, std::uint64_t buffer_len, std::uint64_t max_value);
// floor(phi B / (phi - 1) * C(L B, 2) * L). phi > 1, L B >= 2.
mpz_class PlanMaxNExtended(double phi, std::uint64_t buffer_len,
                           std::uint64_t max_value);
// B^3 L^3.
mpz_class PlanMaxNCubed(std::uint64_t buffer_len, std::uint64_t max_value);

struct MemoryEstimate {
  mpz_class blog;     // B * L * ct_size
  mpz_class nlinear;  // N * L * ct_size
};
MemoryEstimate EstimateMemory(std::uint64_t buffer_len, std::uint64_t max_value,
                              std::uint64_t ct_size);

struct PlanInput {
  double phi = 0.0;
  mpz_class n = 0;
  std::uint64_t max_value = 0;
  std::optional<std::uint64_t> buffer_len;  // defaults to l_min
  std::optional<std::uint64_t> ct_size;
};

// Bounds that do not apply to the input (phi <= 1, L B < 2, no ct_size)
// are left empty.
struct PlanReport {
  PlanInput input;
  std::uint64_t b = 0;
  mpz_class l_min;
  std::uint64_t buffer_len = 0;
  std::optional<mpz_class> n_max_simple;
  std::optional<mpz_class> n_max_extended;
  mpz_class n_max_cubed;
  std::optional<MemoryEstimate> memory;
};

PlanReport MakePlan(const PlanInput& input);

// Flat object with keys b, l_min, n_max_simple, n_max_extended, n_max_cubed,
// mem_blog, mem_nlinear, phi. Integers beyond 64 bits are written as strings.
std::string PlanToJson(const PlanReport& report);

struct PhiMeasurement {
  double phi = 0.0;
  double median_enc_seconds = 0.0;
  double median_mul_plain_seconds = 0.0;
  int iterations = 0;
};

// median(enc) / median(eval_mul_plain) after a warmup, on the calling thread.
PhiMeasurement MeasurePhi(const he::Backend& backend, const he::PublicKey& pk,
                          int iterations);

}  // namespace silca::planner

#endif  // SILCA_PLANNER_PLANNER_H_
