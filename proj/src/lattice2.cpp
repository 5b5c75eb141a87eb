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

#include "lpsnav/lattice2.hpp"

#include <array>

namespace lpsnav::lattice2 {

Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.a + v.a, u.b + v.b}; }
Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.a - v.a, u.b - v.b}; }
Vec2 operator*(const BigInt& s, const Vec2& v) { return {s * v.a, s * v.b}; }
BigInt dot(const Vec2& u, const Vec2& v) { return u.a * v.a + u.b * v.b; }
BigInt norm2(const Vec2& v) { return dot(v, v); }
BigInt cross(const Vec2& u, const Vec2& v) { return u.a * v.b - u.b * v.a; }

bool lex_less(const Vec2& u, const Vec2& v) {
  if (u.a != v.a) return u.a < v.a;
  return u.b < v.b;
}

namespace {

Vec2 lex_positive(const Vec2& v) {
  if (v.a < 0 || (v.a == 0 && v.b < 0)) return {-v.a, -v.b};
  return v;
}

}  // namespace

bool LatticeBasis2::contains(const Vec2& v) const {
  const BigInt det = determinant();
  return mod(cross(v, u2), det) == 0 && mod(cross(u1, v), det) == 0;
}

LatticeBasis2 congruence_lattice(const BigInt& c1, const BigInt& c2,
                                 const BigInt& m) {
  if (m < 1) throw InvalidArgument("congruence_lattice: modulus must be >= 1");
  const BigInt a1 = mod(c1, m);
  const BigInt a2 = mod(c2, m);
  const BigInt g1 = gcd(a1, m);  // gcd(0, m) = m
  const BigInt m1 = m / g1;
  const BigInt c = g1 / gcd(g1, a2);
  // c1*b = -c2*c (mod m); both sides are divisible by g1.
  BigInt b = 0;
  if (m1 > 1) {
    const BigInt rhs = mod(-(a2 * c) / g1, m1);
    b = mod(rhs * invmod(a1 / g1, m1), m1);
  }
  return {{m1, 0}, {b, c}};
}

LatticeBasis2 gauss_reduce(Vec2 v1, Vec2 v2) {
  if (cross(v1, v2) == 0) {
    throw InvalidArgument("gauss_reduce: basis vectors are linearly dependent");
  }
  if (norm2(v1) > norm2(v2)) std::swap(v1, v2);
  for (;;) {
    const BigInt n1 = norm2(v1);
    // round(<v1,v2> / |v1|^2)
    const BigInt mu = floor_div(2 * dot(v1, v2) + n1, 2 * n1);
    v2 = v2 - mu * v1;
    if (norm2(v2) < n1) {
      std::swap(v1, v2);
    } else {
      break;
    }
  }
  return {lex_positive(v1), lex_positive(v2)};
}

Vec2 shortest_coset_vector(const LatticeBasis2& reduced, const Vec2& w) {
  BigInt det = reduced.determinant();
  // w = (x1 / det) u1 + (x2 / det) u2
  BigInt x1 = cross(w, reduced.u2);
  BigInt x2 = cross(reduced.u1, w);
  if (det < 0) {
    det = -det;
    x1 = -x1;
    x2 = -x2;
  }
  const BigInt f1 = floor_div(x1, det);
  const BigInt f2 = floor_div(x2, det);
  bool have = false;
  Vec2 best;
  BigInt best_norm;
  for (int e1 = 0; e1 <= 1; ++e1) {
    for (int e2 = 0; e2 <= 1; ++e2) {
      const Vec2 cand =
          w - (f1 + e1) * reduced.u1 - (f2 + e2) * reduced.u2;
      const BigInt n = norm2(cand);
      if (!have || n < best_norm || (n == best_norm && lex_less(cand, best))) {
        best = cand;
        best_norm = n;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace lpsnav::lattice2
