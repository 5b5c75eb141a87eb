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

#include "lpsnav/npreduction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lpsnav::npreduction {

GaussInt gauss_mod(const GaussInt& z, const BigInt& q) {
  return {mod(z.re, q), mod(z.im, q)};
}

GaussInt gauss_powmod(GaussInt z, BigInt e, const BigInt& q) {
  GaussInt acc{1, 0};
  z = gauss_mod(z, q);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = gauss_mod(acc * z, q);
    z = gauss_mod(z * z, q);
    e >>= 1;
  }
  return acc;
}

namespace {

BigNat choose_q(const BigNat& bound, Rng& rng, const ReduceOptions& opts) {
  BigNat x = bound + 1;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    BigNat c = ntheory::next_prime_at_least(x, rng, opts.prime_search);
    if (mod(c, BigInt(4)) == 3) return c;
    if (opts.prime_search == ntheory::PrimeSearch::Sequential) x = c + 1;
  }
  throw BudgetExceeded("reduce: no prime = 3 mod 4 found");
}

bool is_generator(const GaussInt& g, const BigInt& q,
                  const ntheory::Factorization& order_factors) {
  const BigInt order = q * q - 1;
  if (gauss_mod(g, q).is_zero()) return false;
  for (const auto& pp : order_factors.factors)
    if (gauss_powmod(g, order / pp.prime, q) == GaussInt{1, 0}) return false;
  return true;
}

}  // namespace

NpInstance reduce(const SubsetSumInstance& inst, Rng& rng,
                  ReduceOptions opts) {
  const std::size_t k = inst.t_list.size();
  if (k == 0) throw InvalidArgument("reduce: empty t_list");
  BigNat T = inst.t;
  for (const auto& tj : inst.t_list) {
    if (tj <= 0) throw InvalidArgument("reduce: t_j must be positive");
    T = std::max(T, tj);
  }
  if (inst.t < 0) throw InvalidArgument("reduce: t must be nonnegative");

  NpInstance np;
  np.t_list = inst.t_list;
  np.t = inst.t;
  // The units +-i, -1 move the exponent by multiples of (q^2-1)/4, so the
  // integer identity needs k T < (q+1)/4.
  const BigNat bound = 4 * BigInt(static_cast<unsigned long>(k)) * T;
  np.q = choose_q(bound, rng, opts);
  const BigInt& q = np.q;

  const ntheory::Factorization order_factors = ntheory::factor(q * q - 1);
  if (!order_factors.complete())
    throw BudgetExceeded("reduce: could not factor q^2 - 1");
  const auto max_draws =
      static_cast<std::uint64_t>(std::ceil(64.0 * log(q)));
  NpWitness& w = np.witness;
  for (;;) {
    if (w.generator_draws >= max_draws)
      throw BudgetExceeded("reduce: no generator of F_{q^2}^* found");
    ++w.generator_draws;
    GaussInt g{random_below(q, rng), random_below(q, rng)};
    if (is_generator(g, q, order_factors)) {
      w.g = g;
      break;
    }
  }

  w.s = (q - 1) * inst.t;
  for (const auto& tj : inst.t_list) w.s += tj;
  const GaussInt ab = gauss_powmod(w.g, w.s, q);
  np.a = ab.re;
  np.b = ab.im;

  std::set<BigNat> used;
  np.N = 1;
  for (const auto& tj : inst.t_list) {
    const GaussInt target = gauss_powmod(w.g, tj, q);
    bool found = false;
    for (std::uint64_t d = 0; d < opts.max_lift_draws && !found; ++d) {
      const BigInt h1 = random_between(1, 8 * q, rng);
      const BigInt h2 = random_between(1, 8 * q, rng);
      const GaussInt pi{h1 * q + target.re, h2 * q + target.im};
      const BigNat p = pi.norm();
      if (used.count(p) || !ntheory::is_prime(p)) continue;
      used.insert(p);
      w.pi_list.push_back(pi);
      w.p_list.push_back(p);
      np.N *= p;
      found = true;
    }
    if (!found) throw BudgetExceeded("reduce: no Gaussian prime lift found");
  }
  return np;
}

bool is_consistent(const NpInstance& np) {
  const BigInt& q = np.q;
  const NpWitness& w = np.witness;
  const std::size_t k = np.t_list.size();
  if (k == 0 || w.pi_list.size() != k || w.p_list.size() != k) return false;
  if (!ntheory::is_prime(q) || mod(q, BigInt(4)) != 3) return false;
  BigNat T = np.t, s = (q - 1) * np.t, N = 1;
  for (const auto& tj : np.t_list) {
    T = std::max(T, tj);
    s += tj;
  }
  if (q <= 4 * BigInt(static_cast<unsigned long>(k)) * T) return false;
  if (s != w.s) return false;
  std::set<BigNat> seen;
  for (std::size_t j = 0; j < k; ++j) {
    const BigNat& p = w.p_list[j];
    if (w.pi_list[j].norm() != p || !ntheory::is_prime(p)) return false;
    if (!seen.insert(p).second) return false;
    if (!(gauss_mod(w.pi_list[j], q) == gauss_powmod(w.g, np.t_list[j], q)))
      return false;
    N *= p;
  }
  if (N != np.N) return false;
  return gauss_powmod(w.g, w.s, q) == GaussInt{mod(np.a, q), mod(np.b, q)};
}

std::optional<std::vector<int>> decode(const NpInstance& np, const BigInt& X,
                                       const BigInt& Y) {
  const BigInt& q = np.q;
  if (X * X + Y * Y != np.N || mod(X - np.a, q) != 0 || mod(Y - np.b, q) != 0)
    throw InvalidArgument("decode: (X, Y) does not solve the instance");
  const GaussInt z{X, Y};
  std::vector<int> eps;
  BigInt total = 0;
  for (std::size_t j = 0; j < np.t_list.size(); ++j) {
    const GaussInt& pi = np.witness.pi_list[j];
    const BigNat& p = np.witness.p_list[j];
    const bool direct = ntheory::gauss_gcd(z, pi).norm() == p;
    if (!direct && ntheory::gauss_gcd(z, pi.conj()).norm() != p)
      throw InternalError("decode: neither pi_j nor its conjugate divides");
    eps.push_back(direct ? 0 : 1);
    total += (direct ? BigInt(1) : q) * np.t_list[j];
  }
  if (total != np.witness.s) return std::nullopt;
  return eps;
}

CongruenceInstance lift_dimension(const CongruenceInstance& inst,
                                  unsigned long t, const BigInt& m) {
  const BigInt& q = inst.modulus;
  if (q == 2 || !ntheory::is_prime(q))
    throw InvalidArgument("lift_dimension: modulus must be an odd prime");
  const BigInt qt = pow(q, t);
  const BigInt q2t = qt * qt;
  if (inst.N < 0 || inst.N >= q2t)
    throw InvalidArgument("lift_dimension: need 0 <= N < q^{2t}");
  if (m < 0 || 3 * m > q2t * q)
    throw InvalidArgument("lift_dimension: need 0 <= m <= q^{2t+1} / 3");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw InvalidArgument("lift_dimension: gcd(m, q) != 1");
  BigInt sum = 0;
  for (const auto& a : inst.residues) sum += a * a;
  if (mod(sum - inst.N, q) != 0)
    throw InvalidArgument("lift_dimension: residues inconsistent with N");

  CongruenceInstance out;
  out.N = m * m + q2t * inst.N;
  out.modulus = qt * q;
  for (const auto& a : inst.residues) out.residues.push_back(qt * a);
  out.residues.push_back(m);
  return out;
}

}  // namespace lpsnav::npreduction
