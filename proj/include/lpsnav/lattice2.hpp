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

#ifndef LPSNAV_LATTICE2_HPP
#define LPSNAV_LATTICE2_HPP

#include "lpsnav/common.hpp"

namespace lpsnav::lattice2 {

struct Vec2 {
  BigInt a, b;

  bool operator==(const Vec2& o) const { return a == o.a && b == o.b; }
};

Vec2 operator+(const Vec2& u, const Vec2& v);
Vec2 operator-(const Vec2& u, const Vec2& v);
Vec2 operator*(const BigInt& s, const Vec2& v);
BigInt dot(const Vec2& u, const Vec2& v);
BigInt norm2(const Vec2& v);
// u.a * v.b - u.b * v.a
BigInt cross(const Vec2& u, const Vec2& v);
// Strict lexicographic order on (a, b).
bool lex_less(const Vec2& u, const Vec2& v);

struct LatticeBasis2 {
  Vec2 u1, u2;

  BigInt determinant() const { return cross(u1, u2); }
  bool contains(const Vec2& v) const;
};

/// Basis of {(t1, t2) : c1*t1 + c2*t2 = 0 (mod m)} in Hermite normal form
/// {(a, 0), (b, c)}, with determinant m / gcd(c1, c2, m). Works for any
/// modulus m >= 1 and any coefficients, including non-invertible ones.
LatticeBasis2 congruence_lattice(const BigInt& c1, const BigInt& c2,
                                 const BigInt& m);

/// Lagrange-Gauss reduction. The result spans the same lattice and satisfies
/// |u1| <= |u2| and |<u1,u2>| <= |u1|^2 / 2, so u1 is a shortest nonzero
/// vector. u1 and u2 are each made lexicographically positive.
/// Throws InvalidArgument if v1 and v2 are linearly dependent.
LatticeBasis2 gauss_reduce(Vec2 v1, Vec2 v2);

/// Shortest element of the coset w + L, where L is spanned by the reduced
/// basis. w is written in basis coordinates, both coordinates are rounded
/// down and up, and the shortest of the four resulting vectors is returned
/// (lexicographic tie-break).
Vec2 shortest_coset_vector(const LatticeBasis2& reduced, const Vec2& w);

}  // namespace lpsnav::lattice2

#endif  // LPSNAV_LATTICE2_HPP
