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

#ifndef LPSNAV_QUATERNION_HPP
#define LPSNAV_QUATERNION_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lpsnav/common.hpp"

namespace lpsnav::quaternion {

/// Integral Hamilton quaternion x0 + x1 i + x2 j + x3 k.
struct Quat {
  BigInt x0, x1, x2, x3;

  BigInt norm() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
  Quat conj() const { return {x0, -x1, -x2, -x3}; }
  Quat operator-() const { return {-x0, -x1, -x2, -x3}; }
  BigInt content() const;  // gcd of the coordinates
  bool is_primitive() const { return content() == 1; }
  bool operator==(const Quat& o) const {
    return x0 == o.x0 && x1 == o.x1 && x2 == o.x2 && x3 == o.x3;
  }
};

Quat operator*(const Quat& a, const Quat& b);
std::string to_string(const Quat& a);

/// The p + 1 generators of norm p with x0 > 0 odd and x1, x2, x3 even,
/// sorted lexicographically by (x0, x1, x2, x3).
struct GeneratorSet {
  BigInt p;
  std::vector<Quat> gens;
  std::vector<std::size_t> inverse;  // index of the conjugate generator

  std::size_t size() const { return gens.size(); }
};

/// Enumerates S_p for a prime p = 1 (mod 4). Throws InvalidArgument for bad p
/// and InternalError if the count differs from p + 1.
GeneratorSet lps_generators(const BigInt& p);

/// Sequence of generator indices in path order: letters[0] is applied first,
/// so the word represents letters[n-1] * ... * letters[0].
struct GeneratorWord {
  std::vector<std::size_t> letters;

  std::size_t length() const { return letters.size(); }
  bool operator==(const GeneratorWord&) const = default;
};

bool is_non_backtracking(const GeneratorWord& w, const GeneratorSet& s);
GeneratorWord inverse(const GeneratorWord& w, const GeneratorSet& s);
/// Concatenation: the element of `first` followed by that of `then`,
/// i.e. the product then * first.
GeneratorWord concat(const GeneratorWord& first, const GeneratorWord& then);
/// Cancels adjacent g, g^-1 pairs until the word is non-backtracking.
GeneratorWord free_reduce(const GeneratorWord& w, const GeneratorSet& s);

/// Integral product letters[n-1] * ... * letters[0].
Quat word_product(const GeneratorWord& w, const GeneratorSet& s);

/// Peels generators off the left of alpha: at each step exactly one g has
/// conj(g) * alpha = 0 (mod p). Requires norm p^h, a primitive alpha and
/// x0 odd with x1, x2, x3 even. The returned word multiplies to +-alpha.
GeneratorWord factor_into_generators(const Quat& alpha,
                                     const GeneratorSet& s);

/// Word text in product order (leftmost factor first). For p = 5 the letters
/// are Vx = 1+2k, Vy = 1+2j, Vz = 1+2i and their inverses Vx^{-1} etc.;
/// otherwise g<n> / g<n>^{-1}, one n per conjugate pair.
std::string format_word(const GeneratorWord& w, const GeneratorSet& s);
std::string letter_name(std::size_t index, const GeneratorSet& s);

/// Element of PGL2(F_q) stored in canonical form: scaled to determinant 1
/// (or to the least non-residue when det is not a square) and signed so the
/// first nonzero entry in row-major order lies in [1, (q-1)/2].
struct PslElement {
  BigInt m11, m12, m21, m22;

  bool operator==(const PslElement&) const = default;
  std::array<BigInt, 4> entries() const { return {m11, m12, m21, m22}; }
};

/// Quaternion class modulo scalars, normalized so its first nonzero
/// coordinate is 1.
struct QuatClass {
  BigInt a, b, c, d;

  bool operator==(const QuatClass&) const = default;
};

/// Arithmetic in PGL2(F_q) with the LPS embedding of quaternions.
/// q is an odd prime with q = 1 (mod 4).
class PslGroup {
 public:
  PslGroup(BigInt q, BigInt sqrt_m1);

  const BigInt& q() const { return q_; }
  const BigInt& sqrt_m1() const { return sqrt_m1_; }

  PslElement identity() const;
  PslElement canonical(BigInt m11, BigInt m12, BigInt m21, BigInt m22) const;
  PslElement multiply(const PslElement& a, const PslElement& b) const;
  PslElement inverse(const PslElement& a) const;
  BigInt determinant(const PslElement& a) const;
  bool is_special(const PslElement& a) const { return determinant(a) == 1; }

  /// [[x0 + i x1, x2 + i x3], [-x2 + i x3, x0 - i x1]], canonicalized.
  /// Throws InvalidArgument if q divides the norm.
  PslElement from_quat(const Quat& a) const;
  /// A = (a+d)/2, B = (a-d)/2i, C = (b-c)/2, D = (b+c)/2i.
  QuatClass to_quat_class(const PslElement& g) const;
  QuatClass normalize(BigInt a, BigInt b, BigInt c, BigInt d) const;
  PslElement from_quat_class(const QuatClass& c) const;

 private:
  BigInt q_;
  BigInt sqrt_m1_;
  BigInt nonresidue_;
};

/// Free-function form of PslGroup::from_quat. sqrt_p is accepted for
/// interface symmetry; canonicalization does not need it.
PslElement quat_to_psl(const Quat& a, const BigInt& q, const BigInt& sqrt_p,
                       const BigInt& sqrt_m1);
QuatClass psl_to_quat_class(const PslElement& g, const BigInt& q,
                            const BigInt& sqrt_m1);

/// letters[n-1] * ... * letters[0] in PGL2(F_q); identity for the empty word.
PslElement evaluate_word(const GeneratorWord& w, const GeneratorSet& s,
                         const PslGroup& group);

}  // namespace lpsnav::quaternion

#endif  // LPSNAV_QUATERNION_HPP
