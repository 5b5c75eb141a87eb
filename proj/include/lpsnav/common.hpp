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

#ifndef LPSNAV_COMMON_HPP
#define LPSNAV_COMMON_HPP

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace lpsnav {

// All integer arithmetic goes through GMP. BigNat is documentation only:
// values declared BigNat are never negative.
using BigInt = mpz_class;
using BigNat = mpz_class;

using Rng = std::mt19937_64;

// Thrown when caller-supplied parameters violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a configured search or factoring budget runs out.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal consistency failure; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

BigInt parse_bigint(const std::string& text);
std::string to_string(const BigInt& n);

// Uniform integer in [0, bound). bound must be positive.
BigInt random_below(const BigInt& bound, Rng& rng);
// Uniform integer in [lo, hi].
BigInt random_between(const BigInt& lo, const BigInt& hi, Rng& rng);

// Floor and ceiling division for signed operands, d != 0.
BigInt floor_div(const BigInt& n, const BigInt& d);
BigInt ceil_div(const BigInt& n, const BigInt& d);
// Least nonnegative residue.
BigInt mod(const BigInt& n, const BigInt& m);
// Representative in (-m/2, m/2].
BigInt centered_mod(const BigInt& n, const BigInt& m);
BigInt isqrt(const BigInt& n);
BigInt pow(const BigInt& base, unsigned long exponent);
BigInt powmod(const BigInt& base, const BigInt& exponent, const BigInt& m);
// Inverse modulo m; throws InvalidArgument when gcd(a, m) != 1.
BigInt invmod(const BigInt& a, const BigInt& m);

// Natural logarithm of a positive big integer.
double log(const BigInt& n);

}  // namespace lpsnav

#endif  // LPSNAV_COMMON_HPP
