// Copyright 2026 The lpsnav Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LPSNAV_NTHEORY_HPP
#define LPSNAV_NTHEORY_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lpsnav/common.hpp"

namespace lpsnav::ntheory {

/// Primality. Deterministic Miller-Rabin below 3.3e24; above that,
/// Baillie-PSW followed by `rounds` random-base Miller-Rabin rounds. The
/// random bases are drawn from a generator seeded by n, so the answer is a
/// pure function of (n, rounds).
bool is_prime(const BigInt& n, int rounds = 40);

enum class PrimeSearch { Sequential, Randomized };

/// Returns a prime >= x. Sequential mode scans x, x+1, ...; randomized mode
/// samples uniformly in [x, 2x]. Throws BudgetExceeded after `scan_limit`
/// candidates.
BigNat next_prime_at_least(const BigNat& x, Rng& rng,
                           PrimeSearch mode = PrimeSearch::Sequential,
                           std::uint64_t scan_limit = 1'000'000);

struct PrimePower {
  BigNat prime;
  unsigned exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  std::vector<PrimePower> factors;  // sorted by prime, each prime once
  BigNat cofactor = 1;              // 1 unless the budget ran out

  bool complete() const { return cofactor == 1; }
  BigNat product() const;
};

struct FactorBudget {
  std::uint64_t rho_iterations = 2'000'000;  // per composite part
};

/// Trial division, then Brent's variant of Pollard rho on what remains.
/// Composite parts that survive the budget are multiplied into `cofactor`.
Factorization factor(const BigNat& n, FactorBudget budget = {});

/// Square root modulo an odd prime, normalized to [0, (p-1)/2].
std::optional<BigInt> sqrt_mod(const BigInt& a, const BigInt& p);

int legendre(const BigInt& a, const BigInt& p);

/// x^2 + y^2 = p with 0 < x < y, for a prime p = 1 (mod 4).
std::pair<BigNat, BigNat> two_squares_prime(const BigNat& p);

enum class TwoSquaresStatus { Found, Absent, Unknown };

struct TwoSquaresResult {
  TwoSquaresStatus status = TwoSquaresStatus::Unknown;
  BigInt x, y;  // valid when status == Found
};

/// Writes n as x^2 + y^2. Absent is certified by a prime 3 (mod 4) dividing n
/// to an odd power; Unknown means factoring ran out of budget first.
TwoSquaresResult two_squares(const BigNat& n, FactorBudget budget = {});

struct GaussInt {
  BigInt re, im;

  BigInt norm() const { return re * re + im * im; }
  GaussInt conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
};

GaussInt operator+(const GaussInt& a, const GaussInt& b);
GaussInt operator-(const GaussInt& a, const GaussInt& b);
GaussInt operator*(const GaussInt& a, const GaussInt& b);

/// Quotient rounded to the nearest Gaussian integer, and the remainder.
std::pair<GaussInt, GaussInt> gauss_divmod(const GaussInt& a,
                                           const GaussInt& b);

/// The associate of z with re > 0 and -re < im <= re (zero maps to zero).
GaussInt canonical_associate(const GaussInt& z);

/// gcd in Z[i], canonical associate. Not both arguments zero.
GaussInt gauss_gcd(GaussInt u, GaussInt v);

}  // namespace lpsnav::ntheory

#endif  // LPSNAV_NTHEORY_HPP
