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

#include "lpsnav/common.hpp"

#include <cmath>

namespace lpsnav {

BigInt parse_bigint(const std::string& text) {
  BigInt out;
  std::string body = text;
  if (!body.empty() && body.front() == '+') body.erase(0, 1);
  if (body.empty() || out.set_str(body, 10) != 0) {
    throw InvalidArgument("not a decimal integer: '" + text + "'");
  }
  return out;
}

std::string to_string(const BigInt& n) { return n.get_str(10); }

BigInt random_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw InvalidArgument("random_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t excess = words * 64 - bits;
  for (;;) {
    BigInt r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t chunk = rng();
      if (w == 0 && excess > 0) chunk >>= excess;
      r <<= 64;
      BigInt c;
      mpz_import(c.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
      r += c;
    }
    if (r < bound) return r;
  }
}

BigInt random_between(const BigInt& lo, const BigInt& hi, Rng& rng) {
  if (hi < lo) throw InvalidArgument("random_between: empty range");
  return lo + random_below(hi - lo + 1, rng);
}

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

BigInt mod(const BigInt& n, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt centered_mod(const BigInt& n, const BigInt& m) {
  BigInt r = mod(n, m);
  if (2 * r > m) r -= m;
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InvalidArgument("isqrt of a negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt powmod(const BigInt& base, const BigInt& exponent, const BigInt& m) {
  if (exponent < 0) return powmod(invmod(base, m), -exponent, m);
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(),
           m.get_mpz_t());
  return r;
}

BigInt invmod(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw InvalidArgument("value " + to_string(a) + " is not invertible mod " +
                          to_string(m));
  }
  return r;
}

double log(const BigInt& n) {
  if (n <= 0) throw InvalidArgument("log of a non-positive number");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace lpsnav
