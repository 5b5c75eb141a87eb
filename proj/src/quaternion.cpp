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

#include "lpsnav/quaternion.hpp"

#include <algorithm>
#include <sstream>

#include "lpsnav/ntheory.hpp"

namespace lpsnav::quaternion {

BigInt Quat::content() const {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), x0.get_mpz_t(), x1.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x2.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x3.get_mpz_t());
  return g;
}

Quat operator*(const Quat& a, const Quat& b) {
  return {a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
          a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
          a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
          a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0};
}

std::string to_string(const Quat& a) {
  std::ostringstream out;
  out << "(" << a.x0 << ", " << a.x1 << ", " << a.x2 << ", " << a.x3 << ")";
  return out.str();
}

namespace {

bool lex_less(const Quat& a, const Quat& b) {
  if (a.x0 != b.x0) return a.x0 < b.x0;
  if (a.x1 != b.x1) return a.x1 < b.x1;
  if (a.x2 != b.x2) return a.x2 < b.x2;
  return a.x3 < b.x3;
}

// Sign of the first nonzero imaginary coordinate.
int imag_sign(const Quat& a) {
  for (const BigInt* c : {&a.x1, &a.x2, &a.x3})
    if (*c != 0) return sgn(*c);
  return 0;
}

}  // namespace

GeneratorSet lps_generators(const BigInt& p) {
  if (p < 5 || mod(p, BigInt(4)) != 1 || !ntheory::is_prime(p))
    throw InvalidArgument("lps_generators: p must be a prime = 1 mod 4");
  if (!p.fits_slong_p() || p > BigInt(1) << 40)
    throw InvalidArgument("lps_generators: p too large to enumerate");
  const long P = p.get_si();
  GeneratorSet s;
  s.p = p;
  for (long x0 = 1; x0 * x0 <= P; x0 += 2) {
    const long r0 = P - x0 * x0;
    const long b1 = isqrt(BigInt(r0)).get_si();
    for (long x1 = -b1 - (b1 % 2); x1 <= b1; x1 += 2) {
      if (x1 * x1 > r0) continue;
      const long r1 = r0 - x1 * x1;
      const long b2 = isqrt(BigInt(r1)).get_si();
      for (long x2 = -b2 - (b2 % 2); x2 <= b2; x2 += 2) {
        if (x2 * x2 > r1) continue;
        const long r2 = r1 - x2 * x2;
        const long x3 = isqrt(BigInt(r2)).get_si();
        if (x3 * x3 != r2 || x3 % 2 != 0) continue;
        s.gens.push_back({x0, x1, x2, x3});
        if (x3 != 0) s.gens.push_back({x0, x1, x2, -x3});
      }
    }
  }
  std::sort(s.gens.begin(), s.gens.end(), lex_less);
  if (BigInt(static_cast<unsigned long>(s.gens.size())) != p + 1)
    throw InternalError("lps_generators: generator count is not p + 1");
  s.inverse.resize(s.gens.size());
  for (std::size_t i = 0; i < s.gens.size(); ++i) {
    const Quat c = s.gens[i].conj();
    auto it = std::lower_bound(s.gens.begin(), s.gens.end(), c, lex_less);
    if (it == s.gens.end() || !(*it == c))
      throw InternalError("lps_generators: set not closed under conjugation");
    s.inverse[i] = static_cast<std::size_t>(it - s.gens.begin());
  }
  return s;
}

bool is_non_backtracking(const GeneratorWord& w, const GeneratorSet& s) {
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (s.inverse[w.letters[i]] == w.letters[i + 1]) return false;
  return true;
}

GeneratorWord inverse(const GeneratorWord& w, const GeneratorSet& s) {
  GeneratorWord out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(s.inverse[*it]);
  return out;
}

GeneratorWord concat(const GeneratorWord& first, const GeneratorWord& then) {
  GeneratorWord out = first;
  out.letters.insert(out.letters.end(), then.letters.begin(),
                     then.letters.end());
  return out;
}

GeneratorWord free_reduce(const GeneratorWord& w, const GeneratorSet& s) {
  GeneratorWord out;
  for (std::size_t l : w.letters) {
    if (!out.letters.empty() && s.inverse[out.letters.back()] == l)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

Quat word_product(const GeneratorWord& w, const GeneratorSet& s) {
  Quat acc{1, 0, 0, 0};
  for (std::size_t l : w.letters) acc = s.gens.at(l) * acc;
  return acc;
}

GeneratorWord factor_into_generators(const Quat& alpha,
                                     const GeneratorSet& s) {
  const BigInt& p = s.p;
  BigInt n = alpha.norm();
  if (n == 0) throw InvalidArgument("factor_into_generators: zero quaternion");
  std::size_t h = 0;
  while (n != 1) {
    if (mod(n, p) != 0)
      throw InvalidArgument("factor_into_generators: norm is not a power of p");
    n /= p;
    ++h;
  }
  if (!alpha.is_primitive())
    throw InvalidArgument("factor_into_generators: quaternion not primitive");
  if (mod(alpha.x0, BigInt(2)) != 1 || mod(alpha.x1, BigInt(2)) != 0 ||
      mod(alpha.x2, BigInt(2)) != 0 || mod(alpha.x3, BigInt(2)) != 0)
    throw InvalidArgument("factor_into_generators: wrong parity class");

  std::vector<std::size_t> peeled;  // leftmost factor first
  peeled.reserve(h);
  Quat cur = alpha;
  for (std::size_t step = 0; step < h; ++step) {
    // Residues of cur mod p, then test conj(g) * cur = 0 (mod p) cheaply.
    const Quat r{mod(cur.x0, p), mod(cur.x1, p), mod(cur.x2, p),
                 mod(cur.x3, p)};
    std::size_t found = s.size();
    for (std::size_t g = 0; g < s.size(); ++g) {
      const Quat prod = s.gens[g].conj() * r;
      if (mod(prod.x0, p) == 0 && mod(prod.x1, p) == 0 &&
          mod(prod.x2, p) == 0 && mod(prod.x3, p) == 0) {
        if (found != s.size())
          throw InternalError("factor_into_generators: ambiguous step");
        found = g;
      }
    }
    if (found == s.size())
      throw InternalError("factor_into_generators: no generator divides");
    Quat next = s.gens[found].conj() * cur;
    mpz_divexact(next.x0.get_mpz_t(), next.x0.get_mpz_t(), p.get_mpz_t());
    mpz_divexact(next.x1.get_mpz_t(), next.x1.get_mpz_t(), p.get_mpz_t());
    mpz_divexact(next.x2.get_mpz_t(), next.x2.get_mpz_t(), p.get_mpz_t());
    mpz_divexact(next.x3.get_mpz_t(), next.x3.get_mpz_t(), p.get_mpz_t());
    cur = std::move(next);
    peeled.push_back(found);
  }
  if (!(cur == Quat{1, 0, 0, 0}) && !(cur == Quat{-1, 0, 0, 0}))
    throw InternalError("factor_into_generators: residual unit is not +-1");
  GeneratorWord w;
  w.letters.assign(peeled.rbegin(), peeled.rend());
  if (!is_non_backtracking(w, s))
    throw InternalError("factor_into_generators: backtracking word");
  return w;
}

std::string letter_name(std::size_t index, const GeneratorSet& s) {
  const Quat& g = s.gens.at(index);
  const bool positive = imag_sign(g) > 0;
  if (s.p == 5) {
    std::string base = g.x1 != 0 ? "Vz" : g.x2 != 0 ? "Vy" : "Vx";
    return positive ? base : base + "^{-1}";
  }
  // Pair number: rank of the positive member among positive generators.
  const std::size_t rep = positive ? index : s.inverse[index];
  std::size_t k = 0;
  for (std::size_t i = 0; i < rep; ++i)
    if (imag_sign(s.gens[i]) > 0) ++k;
  std::string base = "g" + std::to_string(k);
  return positive ? base : base + "^{-1}";
}

std::string format_word(const GeneratorWord& w, const GeneratorSet& s) {
  std::string out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += letter_name(*it, s);
  }
  return out;
}

PslGroup::PslGroup(BigInt q, BigInt sqrt_m1)
    : q_(std::move(q)), sqrt_m1_(std::move(sqrt_m1)) {
  if (q_ < 5 || mod(q_, BigInt(4)) != 1)
    throw InvalidArgument("PslGroup: q must be a prime = 1 mod 4");
  if (mod(sqrt_m1_ * sqrt_m1_ + 1, q_) != 0)
    throw InvalidArgument("PslGroup: sqrt_m1 is not a square root of -1");
  nonresidue_ = 2;
  while (ntheory::legendre(nonresidue_, q_) != -1) ++nonresidue_;
}

PslElement PslGroup::identity() const { return canonical(1, 0, 0, 1); }

PslElement PslGroup::canonical(BigInt m11, BigInt m12, BigInt m21,
                               BigInt m22) const {
  m11 = mod(m11, q_);
  m12 = mod(m12, q_);
  m21 = mod(m21, q_);
  m22 = mod(m22, q_);
  BigInt det = mod(m11 * m22 - m12 * m21, q_);
  if (det == 0) throw InvalidArgument("PslGroup: singular matrix");
  if (det != 1) {
    auto root = ntheory::sqrt_mod(det, q_);
    if (!root) root = ntheory::sqrt_mod(mod(det * invmod(nonresidue_, q_), q_), q_);
    if (!root) throw InternalError("PslGroup: square class lookup failed");
    const BigInt inv = invmod(*root, q_);
    m11 = mod(m11 * inv, q_);
    m12 = mod(m12 * inv, q_);
    m21 = mod(m21 * inv, q_);
    m22 = mod(m22 * inv, q_);
  }
  const BigInt half = (q_ - 1) / 2;
  const BigInt& lead = m11 != 0 ? m11 : m12 != 0 ? m12 : m21;
  if (lead > half) {
    m11 = mod(-m11, q_);
    m12 = mod(-m12, q_);
    m21 = mod(-m21, q_);
    m22 = mod(-m22, q_);
  }
  return {m11, m12, m21, m22};
}

PslElement PslGroup::multiply(const PslElement& a, const PslElement& b) const {
  return canonical(a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                   a.m21 * b.m11 + a.m22 * b.m21,
                   a.m21 * b.m12 + a.m22 * b.m22);
}

PslElement PslGroup::inverse(const PslElement& a) const {
  return canonical(a.m22, -a.m12, -a.m21, a.m11);
}

BigInt PslGroup::determinant(const PslElement& a) const {
  return mod(a.m11 * a.m22 - a.m12 * a.m21, q_);
}

PslElement PslGroup::from_quat(const Quat& a) const {
  if (mod(a.norm(), q_) == 0)
    throw InvalidArgument("quat_to_psl: norm divisible by q");
  const BigInt& i = sqrt_m1_;
  return canonical(a.x0 + i * a.x1, a.x2 + i * a.x3, -a.x2 + i * a.x3,
                   a.x0 - i * a.x1);
}

QuatClass PslGroup::normalize(BigInt a, BigInt b, BigInt c, BigInt d) const {
  a = mod(a, q_);
  b = mod(b, q_);
  c = mod(c, q_);
  d = mod(d, q_);
  const BigInt& lead = a != 0 ? a : b != 0 ? b : c != 0 ? c : d;
  if (lead == 0) throw InvalidArgument("quaternion class: zero");
  const BigInt inv = invmod(lead, q_);
  return {mod(a * inv, q_), mod(b * inv, q_), mod(c * inv, q_),
          mod(d * inv, q_)};
}

QuatClass PslGroup::to_quat_class(const PslElement& g) const {
  const BigInt inv2 = invmod(BigInt(2), q_);
  const BigInt inv2i = invmod(2 * sqrt_m1_, q_);
  return normalize((g.m11 + g.m22) * inv2, (g.m11 - g.m22) * inv2i,
                   (g.m12 - g.m21) * inv2, (g.m12 + g.m21) * inv2i);
}

PslElement PslGroup::from_quat_class(const QuatClass& c) const {
  return from_quat({c.a, c.b, c.c, c.d});
}

PslElement quat_to_psl(const Quat& a, const BigInt& q, const BigInt& sqrt_p,
                       const BigInt& sqrt_m1) {
  (void)sqrt_p;
  return PslGroup(q, sqrt_m1).from_quat(a);
}

QuatClass psl_to_quat_class(const PslElement& g, const BigInt& q,
                            const BigInt& sqrt_m1) {
  return PslGroup(q, sqrt_m1).to_quat_class(g);
}

PslElement evaluate_word(const GeneratorWord& w, const GeneratorSet& s,
                         const PslGroup& group) {
  std::vector<PslElement> images;
  images.reserve(s.size());
  for (const Quat& g : s.gens) images.push_back(group.from_quat(g));
  PslElement acc = group.identity();
  for (std::size_t l : w.letters) acc = group.multiply(images.at(l), acc);
  return acc;
}

}  // namespace lpsnav::quaternion
