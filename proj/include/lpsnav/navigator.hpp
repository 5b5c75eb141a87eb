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

#ifndef LPSNAV_NAVIGATOR_HPP
#define LPSNAV_NAVIGATOR_HPP

#include <cstdint>
#include <optional>

#include "lpsnav/common.hpp"
#include "lpsnav/foursquares.hpp"
#include "lpsnav/lattice2.hpp"
#include "lpsnav/quaternion.hpp"

namespace lpsnav::navigator {

using quaternion::GeneratorWord;
using quaternion::PslElement;
using quaternion::Quat;

/// X_{p,q}: p, q primes = 1 mod 4, q a square mod p. When q is not a square
/// mod p the generators leave PSL2 and the graph is the bipartite Cayley
/// graph of PGL2(F_q); only the explicit oracle accepts that case.
struct GraphParams {
  BigInt p, q;
  BigInt sqrt_m1, sqrt_p;  // both in [0, (q-1)/2]; sqrt_p = 0 if bipartite
  bool bipartite = false;
  quaternion::GeneratorSet gens;
  quaternion::PslGroup group;
};


/// Validates (p, q) and fixes the square roots. Throws InvalidArgument.
GraphParams make_graph_params(const BigInt& p, const BigInt& q,
                              bool allow_bipartite = false);

struct NavConfig {
  double gamma = 0.75;
  double c_gamma = 4.0;
  int h_max_slack = 2;
  foursquares::Admission mode = foursquares::Admission::Auto;
  foursquares::SolveBudget budget;
  std::uint64_t max_trials = 100000;  // words s tried by general_navigate
};

/// diag(a + ib, a - ib) up to scaling.
struct DiagonalVertex {
  BigInt a, b;
};

/// Rescales so that a^2 + b^2 = 1 (mod q). Throws InvalidArgument when
/// a^2 + b^2 is zero or a non-square, i.e. v is not a vertex of the graph.
DiagonalVertex normalize_vertex(const GraphParams& G, const DiagonalVertex& v);

/// The diagonal of X_{p,q} through a + b i (I), a + b j (J) or a + b k (K).
enum class Axis { I, J, K };

Quat axis_quat(const BigInt& a, const BigInt& b, Axis axis);

/// ceil(4 log_p q + log_p 89) + slack.
long h_max(const GraphParams& G, const NavConfig& cfg);

struct DiagonalResult {
  long h = 0;
  GeneratorWord word;  // evaluates to the vertex
  Quat quaternion;     // primitive, norm p^h
  bool certified_minimal = false;  // every smaller h was ruled out exactly
  long h_max = 0;
  std::uint64_t candidates = 0;
};

/// Smallest h with a solution of x^2+y^2+z^2+w^2 = p^h, x = lambda a,
/// y = lambda b, z = w = 0 (mod q), x odd, y, z, w even, tried in order
/// h = 0, 1, .... Throws BudgetExceeded past h_max, and in full-factor mode
/// whenever some h cannot be decided.
DiagonalResult diagonal_distance(const GraphParams& G, const DiagonalVertex& v,
                                 const NavConfig& cfg, Axis axis = Axis::I);

struct BoundsReport {
  long hole_bound = 0;
  long typical_bound = 0;
  double hole_value = 0;     // before rounding up
  double typical_value = 0;
  lattice2::Vec2 u1, u2;     // reduced basis of {a x + b y = 0 (mod q)}
  bool unbalanced = false;   // |u2| >= C_gamma log(2q)^gamma |u1|
};

BoundsReport predicted_bounds(const GraphParams& G, const DiagonalVertex& v,
                              const NavConfig& cfg);

/// (A + iB + jC + kD) = (1 + ix)(1 + jy)(1 + kz) up to scaling mod q.
struct XyzDecomposition {
  BigInt x, y, z;
  std::optional<BigInt> other_z;  // the second root, when it also works
};

std::optional<XyzDecomposition> decompose_xyz(const BigInt& A, const BigInt& B,
                                              const BigInt& C, const BigInt& D,
                                              const BigInt& q);

struct GeneralStats {
  std::uint64_t trials = 0;         // words s examined
  std::uint64_t step2_accepted = 0; // decompose_xyz succeeded
  std::uint64_t step3_accepted = 0; // all three lattices balanced
  std::uint64_t factor_rejected = 0;
};

struct GeneralResult {
  GeneratorWord word;    // non-backtracking, evaluates to the target
  GeneratorWord prefix;  // the accepted s
  XyzDecomposition xyz;
  long hx = 0, hy = 0, hz = 0;
  GeneralStats stats;
};

/// Tries words s in order of length, then lexicographically, until s g
/// splits as (1 + ix)(1 + jy)(1 + kz) with balanced lattices and three
/// navigable diagonal factors. The rng is reserved for randomized
/// subroutines and is not consulted by the deterministic search order.
GeneralResult general_navigate(const GraphParams& G, const PslElement& g,
                               const NavConfig& cfg, Rng& rng);

/// Successor of w in the order used by general_navigate.
GeneratorWord next_word(const GeneratorWord& w,
                        const quaternion::GeneratorSet& s);

}  // namespace lpsnav::navigator

#endif  // LPSNAV_NAVIGATOR_HPP
