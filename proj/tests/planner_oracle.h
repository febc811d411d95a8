// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_TESTS_PLANNER_ORACLE_H_
#define SILCA_TESTS_PLANNER_ORACLE_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace silca::testing {

namespace mp = boost::multiprecision;

// Independent oracle: boost rationals, floor(log2) by repeated halving, and
// the binomial spelled out.
struct PlannerOracle {
  static unsigned B(std::uint64_t n) {
    unsigned b = 0;
    while (n >= 2) {
      n /= 2;
      ++b;
    }
    return b;
  }
  static mp::cpp_int Floor(const mp::cpp_rational& q) {
    mp::cpp_int num = mp::numerator(q), den = mp::denominator(q);
    mp::cpp_int f = num / den;
    if (num < 0 && f * den != num) f -= 1;
    return f;
  }
  static mp::cpp_int Ceil(const mp::cpp_rational& q) { return -Floor(-q); }

  // phi = phi_num / 1024.
  static mp::cpp_int MinL(mp::cpp_int phi_num, mp::cpp_int n, std::uint64_t nmax) {
    mp::cpp_rational phi(phi_num, 1024);
    mp::cpp_rational v = (phi - 1) * n / (phi * B(nmax));
    return v <= 0 ? mp::cpp_int(0) : Ceil(v);
  }
  static mp::cpp_int Simple(mp::cpp_int phi_num, std::uint64_t l, std::uint64_t nmax) {
    mp::cpp_rational phi(phi_num, 1024);
    return Floor(phi * B(nmax) / (phi - 1) * l);
  }
  static mp::cpp_int Extended(mp::cpp_int phi_num, std::uint64_t l, std::uint64_t nmax) {
    mp::cpp_rational phi(phi_num, 1024);
    mp::cpp_int lb = mp::cpp_int(l) * B(nmax);
    mp::cpp_int pairs = lb * (lb - 1) / 2;
    return Floor(phi * B(nmax) / (phi - 1) * pairs * l);
  }
  static mp::cpp_int Cubed(std::uint64_t l, std::uint64_t nmax) {
    mp::cpp_int bl = mp::cpp_int(B(nmax)) * l;
    return bl * bl * bl;
  }
};

}  // namespace silca::testing

#endif  // SILCA_TESTS_PLANNER_ORACLE_H_
