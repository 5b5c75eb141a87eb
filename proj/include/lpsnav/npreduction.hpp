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

#ifndef LPSNAV_NPREDUCTION_HPP
#define LPSNAV_NPREDUCTION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "lpsnav/common.hpp"
#include "lpsnav/ntheory.hpp"

namespace lpsnav::npreduction {

using ntheory::GaussInt;

/// Is there a 0/1 vector eps with sum eps_j t_j = t?
struct SubsetSumInstance {
  std::vector<BigNat> t_list;
  BigNat t;
};

struct NpWitness {
  GaussInt g;  // generator of F_{q^2}^*, coordinates in [0, q)
  BigNat s;    // (q - 1) t + sum t_j
  std::vector<GaussInt> pi_list;  // pi_j = g^{t_j} (mod q), Gaussian primes
  std::vector<BigNat> p_list;     // |pi_j|^2, distinct primes
  std::uint64_t generator_draws = 0;
};

/// Accept iff X^2 + Y^2 = N has a solution with X = a, Y = b (mod q).
struct NpInstance {
  BigNat N;
  BigNat q;  // prime = 3 mod 4, q > 4 k max(t_j, t)
  BigInt a, b;
  std::vector<BigNat> t_list;
  BigNat t;
  NpWitness witness;
};

struct ReduceOptions {
  ntheory::PrimeSearch prime_search = ntheory::PrimeSearch::Sequential;
  std::uint64_t max_lift_draws = 1'000'000;
};

/// Builds the two-squares instance. Throws InvalidArgument for k = 0 or a
/// zero t_j, BudgetExceeded when a randomized search runs too long.
NpInstance reduce(const SubsetSumInstance& inst, Rng& rng,
                  ReduceOptions opts = {});

/// Checks the internal relations of an instance (primality, congruences,
/// N = prod p_j, a + ib = g^s). Used by tests and the CLI.
bool is_consistent(const NpInstance& np);

/// Reads eps_j off gcd(X + iY, pi_j): 0 when pi_j divides, 1 when its
/// conjugate does. Returns the vector only if sum xi_j t_j = s with
/// xi_j = 1 or q. Throws InvalidArgument unless (X, Y) solves the instance.
std::optional<std::vector<int>> decode(const NpInstance& np, const BigInt& X,
                                       const BigInt& Y);

/// (N, q, a_1..a_d) for X_1^2 + ... + X_d^2 = N, X_i = a_i (mod q).
struct CongruenceInstance {
  BigNat N;
  BigNat modulus;
  std::vector<BigInt> residues;
};

/// The d + 1 variable instance (m^2 + q^{2t} N, q^{t+1},
/// (q^t a_1, ..., q^t a_d, m)). Requires N < q^{2t}, 3m <= q^{2t+1},
/// gcd(m, q) = 1, q an odd prime and sum a_i^2 = N (mod q); throws
/// InvalidArgument otherwise.
CongruenceInstance lift_dimension(const CongruenceInstance& inst,
                                  unsigned long t, const BigInt& m);

/// Arithmetic in F_{q^2} = F_q[i], q = 3 mod 4.
GaussInt gauss_mod(const GaussInt& z, const BigInt& q);
GaussInt gauss_powmod(GaussInt z, BigInt e, const BigInt& q);

}  // namespace lpsnav::npreduction

#endif  // LPSNAV_NPREDUCTION_HPP
