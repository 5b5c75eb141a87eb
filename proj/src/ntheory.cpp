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

#include "lpsnav/ntheory.hpp"

#include <algorithm>
#include <map>

namespace lpsnav::ntheory {

namespace {

constexpr unsigned kTrialBound = 10000;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Strong probable-prime test to a single base; n odd, n > 3.
bool miller_rabin(const BigInt& n, const BigInt& base) {
  const BigInt n1 = n - 1;
  BigInt d = n1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  BigInt x = powmod(base, d, n);
  if (x == 1 || x == n1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

BigInt half_mod(BigInt v, const BigInt& n) {
  if (mpz_odd_p(v.get_mpz_t())) v += n;
  v >>= 1;
  return mod(v, n);
}

// Strong Lucas probable-prime test with Selfridge parameters; n odd > 3.
bool strong_lucas(const BigInt& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long d_val = 5;
  for (;;) {
    const BigInt d = d_val;
    const int j = mpz_jacobi(d.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(d) != n) return false;
    d_val = d_val > 0 ? -(d_val + 2) : -d_val + 2;
  }
  const BigInt D = d_val;
  const BigInt P = 1;
  const BigInt Q = (1 - D) / 4;

  BigInt k = n + 1;
  unsigned s = 0;
  while (mpz_even_p(k.get_mpz_t())) {
    k >>= 1;
    ++s;
  }

  BigInt U = 1, V = P, Qk = mod(Q, n);
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    U = U * V % n;
    V = mod(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (mpz_tstbit(k.get_mpz_t(), i)) {
      const BigInt u_next = half_mod(P * U + V, n);
      const BigInt v_next = half_mod(D * U + P * V, n);
      U = u_next;
      V = v_next;
      Qk = mod(Qk * Q, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    V = mod(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (V == 0) return true;
  }
  return false;
}

std::uint64_t seed_from(const BigInt& n) {
  return mpz_get_ui(n.get_mpz_t()) ^ 0x9e3779b97f4a7c15ULL ^
         (static_cast<std::uint64_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) << 48);
}

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor
// of the odd composite n, or 0 when the iteration budget is spent.
BigInt brent_rho(const BigInt& n, std::uint64_t budget, Rng& rng) {
  std::uint64_t spent = 0;
  constexpr std::uint64_t kBatch = 128;
  while (spent < budget) {
    const BigInt c = random_between(1, n - 1, rng);
    BigInt y = random_between(0, n - 1, rng);
    BigInt x, ys, g = 1, q = 1;
    std::uint64_t r = 1;
    while (g == 1 && spent < budget) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t steps = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        spent += steps;
        g = gcd(q, n);
        k += steps;
      }
      r *= 2;
    }
    if (g == n) {
      // The batch overshot; replay one step at a time.
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void add_factor(std::map<BigInt, unsigned>& acc, const BigInt& p,
                unsigned e) {
  acc[p] += e;
}

}  // namespace

bool is_prime(const BigInt& n, int rounds) {
  if (n < 2) return false;
  for (unsigned p : small_primes()) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    if (p > 200) break;
  }
  static const BigInt kDeterministicBound("3317044064679887385961981");
  if (n < kDeterministicBound) {
    for (unsigned b : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u,
                       41u}) {
      if (!miller_rabin(n, b)) return false;
    }
    return true;
  }
  if (!miller_rabin(n, 2) || !strong_lucas(n)) return false;
  Rng rng(seed_from(n));
  for (int i = 0; i < rounds; ++i) {
    if (!miller_rabin(n, random_between(3, n - 2, rng))) return false;
  }
  return true;
}

BigNat next_prime_at_least(const BigNat& x, Rng& rng, PrimeSearch mode,
                           std::uint64_t scan_limit) {
  if (x < 2) throw InvalidArgument("next_prime_at_least: x must be >= 2");
  if (mode == PrimeSearch::Sequential) {
    BigNat c = x;
    for (std::uint64_t i = 0; i < scan_limit; ++i, ++c) {
      if (is_prime(c)) return c;
    }
  } else {
    for (std::uint64_t i = 0; i < scan_limit; ++i) {
      BigNat c = random_between(x, 2 * x, rng);
      if (is_prime(c)) return c;
    }
  }
  throw BudgetExceeded("no prime found above " + to_string(x) + " within " +
                       std::to_string(scan_limit) + " candidates");
}

BigNat Factorization::product() const {
  BigNat out = cofactor;
  for (const auto& f : factors) out *= pow(f.prime, f.exponent);
  return out;
}

Factorization factor(const BigNat& n, FactorBudget budget) {
  if (n < 1) throw InvalidArgument("factor: n must be >= 1");
  std::map<BigInt, unsigned> acc;
  BigInt rest = n;
  for (unsigned p : small_primes()) {
    if (rest == 1) break;
    if (BigInt(p) * p > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) add_factor(acc, p, e);
  }

  Factorization out;
  Rng rng(seed_from(n));
  std::vector<std::pair<BigInt, unsigned>> pending;
  if (rest > 1) pending.emplace_back(rest, 1);
  while (!pending.empty()) {
    auto [m, e] = pending.back();
    pending.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      add_factor(acc, m, e);
      continue;
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      pending.emplace_back(isqrt(m), 2 * e);
      continue;
    }
    const BigInt d = brent_rho(m, budget.rho_iterations, rng);
    if (d == 0) {
      out.cofactor *= pow(m, e);
      continue;
    }
    pending.emplace_back(d, e);
    pending.emplace_back(m / d, e);
  }
  // Parts split along different branches may share a prime; merge by value.
  for (const auto& [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

int legendre(const BigInt& a, const BigInt& p) {
  return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t());
}

std::optional<BigInt> sqrt_mod(const BigInt& a_in, const BigInt& p) {
  const BigInt a = mod(a_in, p);
  if (a == 0) return BigInt(0);
  if (p == 2) return a;
  if (legendre(a, p) != 1) return std::nullopt;

  BigInt r;
  if (mod(p, 4) == 3) {
    r = powmod(a, (p + 1) / 4, p);
  } else {
    BigInt q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
      q >>= 1;
      ++s;
    }
    Rng rng(seed_from(p));
    BigInt z;
    do {
      z = random_between(2, p - 1, rng);
    } while (legendre(z, p) != -1);

    unsigned m = s;
    BigInt c = powmod(z, q, p);
    BigInt t = powmod(a, q, p);
    r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
      unsigned i = 0;
      BigInt t2 = t;
      while (t2 != 1) {
        t2 = t2 * t2 % p;
        ++i;
      }
      BigInt b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
      m = i;
      c = b * b % p;
      t = t * c % p;
      r = r * b % p;
    }
  }
  if (2 * r > p) r = p - r;
  return r;
}

std::pair<BigNat, BigNat> two_squares_prime(const BigNat& p) {
  if (mod(p, 4) != 1) {
    throw InvalidArgument("two_squares_prime: p must be 1 mod 4");
  }
  const auto root = sqrt_mod(p - 1, p);
  if (!root) throw InvalidArgument("two_squares_prime: p is not prime");
  BigInt a = p, b = *root;
  while (b * b > p) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  const BigInt rest = p - b * b;
  BigInt c = isqrt(rest);
  if (c * c != rest) throw InvalidArgument("two_squares_prime: p is not prime");
  if (b > c) std::swap(b, c);
  return {b, c};
}

TwoSquaresResult two_squares(const BigNat& n, FactorBudget budget) {
  if (n < 0) throw InvalidArgument("two_squares: n must be >= 0");
  if (n == 0) return {TwoSquaresStatus::Found, 0, 0};
  const Factorization f = factor(n, budget);
  for (const auto& pe : f.factors) {
    if (mod(pe.prime, 4) == 3 && pe.exponent % 2 == 1) {
      return {TwoSquaresStatus::Absent, 0, 0};
    }
  }
  if (!f.complete()) {
    // An odd cofactor that is 3 mod 4 hides a prime 3 mod 4 to an odd power.
    if (mod(f.cofactor, 4) == 3) return {TwoSquaresStatus::Absent, 0, 0};
    return {TwoSquaresStatus::Unknown, 0, 0};
  }
  GaussInt acc{1, 0};
  for (const auto& pe : f.factors) {
    if (pe.prime == 2) {
      for (unsigned i = 0; i < pe.exponent; ++i) acc = acc * GaussInt{1, 1};
    } else if (mod(pe.prime, 4) == 1) {
      const auto [x, y] = two_squares_prime(pe.prime);
      const GaussInt g{x, y};
      for (unsigned i = 0; i < pe.exponent; ++i) acc = acc * g;
    } else {
      const BigInt s = pow(pe.prime, pe.exponent / 2);
      acc = {acc.re * s, acc.im * s};
    }
  }
  BigInt x = abs(acc.re), y = abs(acc.im);
  if (x > y) std::swap(x, y);
  return {TwoSquaresStatus::Found, x, y};
}

GaussInt operator+(const GaussInt& a, const GaussInt& b) {
  return {a.re + b.re, a.im + b.im};
}

GaussInt operator-(const GaussInt& a, const GaussInt& b) {
  return {a.re - b.re, a.im - b.im};
}

GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

std::pair<GaussInt, GaussInt> gauss_divmod(const GaussInt& a,
                                           const GaussInt& b) {
  if (b.is_zero()) throw InvalidArgument("gaussian division by zero");
  const BigInt n = b.norm();
  const GaussInt num = a * b.conj();
  // round(x / n) = floor((2x + n) / 2n)
  const GaussInt q{floor_div(2 * num.re + n, 2 * n),
                   floor_div(2 * num.im + n, 2 * n)};
  return {q, a - q * b};
}

GaussInt canonical_associate(const GaussInt& z) {
  if (z.is_zero()) return z;
  GaussInt w = z;
  for (int i = 0; i < 4; ++i) {
    if (w.re > 0 && -w.re < w.im && w.im <= w.re) return w;
    w = {-w.im, w.re};  // multiply by i
  }
  throw InternalError("canonical_associate: no associate in the sector");
}

GaussInt gauss_gcd(GaussInt u, GaussInt v) {
  if (u.is_zero() && v.is_zero()) {
    throw InvalidArgument("gauss_gcd: both arguments are zero");
  }
  while (!v.is_zero()) {
    GaussInt r = gauss_divmod(u, v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return canonical_associate(u);
}

}  // namespace lpsnav::ntheory
