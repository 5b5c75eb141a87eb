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

#ifndef LPSNAV_FOURSQUARES_HPP
#define LPSNAV_FOURSQUARES_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "lpsnav/common.hpp"
#include "lpsnav/lattice2.hpp"
#include "lpsnav/ntheory.hpp"

namespace lpsnav::foursquares {

using lattice2::Vec2;

// How a nonnegative value F is tested for being a sum of two squares.
//   FullFactor: factor F completely (within budget) and decide exactly.
//   FastPath:   strip powers of 2 and accept only 1 or a prime = 1 mod 4.
//               A cofactor = 3 mod 4 is still certified absent; anything
//               else is skipped and leaves the verdict open.
//   Auto:       FastPath when N > 10^18, FullFactor otherwise.
enum class Admission { Auto, FullFactor, FastPath };

struct SolveBudget {
  ntheory::FactorBudget factor;
  std::uint64_t max_candidates = 0;  // 0 means unlimited
};

/// x^2 + y^2 + z^2 + w^2 = N with x = r1, y = r2, z = w = 0 (mod M).
struct FourSquaresInstance {
  BigNat N;
  BigNat M;
  BigInt r1, r2;
  Admission mode = Admission::Auto;
  SolveBudget budget;
};

bool uses_fast_path(const FourSquaresInstance& inst);

struct FourSquaresSolution {
  BigInt x, y, z, w;
  bool operator==(const FourSquaresSolution&) const = default;
};

bool is_valid_solution(const FourSquaresInstance& inst,
                       const FourSquaresSolution& s);

// The congruence 2 r1 t1 + 2 r2 t2 = k (mod M) has no solution.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |x1| <= x1 and |x2| <= x2. A negative bound makes the box empty.
struct Box {
  BigInt x1, x2;

  bool contains(const BigInt& a, const BigInt& b) const;
};

/// With t = u0 + x1 u1 + x2 u2, the remaining two squares must sum to
///   F(x1, x2) = u0p - x1 u1p - x2 u2p - |t|^2
/// and M^2 F + (M t1 + r1)^2 + (M t2 + r2)^2 = N.
/// r1, r2 are stored centered in (-M/2, M/2].
struct CandidateForm {
  BigNat N, M;
  BigInt r1, r2;
  BigInt k;
  Vec2 u0, u1, u2;
  BigInt u0p, u1p, u2p;
  // Integer parts of A = sqrt(N)/(2M|u1|) and B = sqrt(N)/(2M|u2|) - 1,
  // and of 5A, 5B. boxB and box5B may be negative.
  BigInt boxA, boxB, box5A, box5B;

  Vec2 coset_point(const BigInt& x1, const BigInt& x2) const;
  BigInt value(const BigInt& x1, const BigInt& x2) const;
  Box C() const { return {boxA, boxB}; }
  Box five_C() const { return {box5A, box5B}; }
};

/// Requires (r1, r2) != (0, 0) mod M and r1^2 + r2^2 = N (mod M).
/// Throws InvalidArgument on bad input and Infeasible when the linear
/// congruence for (t1, t2) has no solution.
CandidateForm build_form(const FourSquaresInstance& inst);

struct Candidate {
  BigInt x1, x2, value;
};

/// Lazily yields every (x1, x2) with F >= 0 inside `include` (if given) and
/// outside `exclude` (if given), in order of x1^2 + x2^2, then x1, then x2.
/// The set {F >= 0} is an ellipse; its rows are computed exactly, so the
/// stream is complete and never emits a point with F < 0.
class CandidateStream {
 public:
  CandidateStream(CandidateForm form, std::optional<Box> include,
                  std::optional<Box> exclude);

  std::optional<Candidate> next();

 private:
  struct Interval {
    BigInt x2, lo, hi, left, right;
  };
  struct Entry {
    BigInt norm, x1, x2;
    std::size_t row;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const;
  };

  void activate(const BigInt& x2);
  void push_next(std::size_t row);
  bool in_ellipse(const BigInt& x1, const BigInt& x2) const;

  CandidateForm form_;
  std::optional<Box> include_, exclude_;
  Vec2 Mu1_;           // M * u1
  Vec2 R_;             // (r1, r2)
  BigInt x2_lo_, x2_hi_;
  BigInt next_mag_, max_mag_;
  std::vector<Interval> rows_;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
};

enum class Region { C, FiveC, All };

CandidateStream enumerate_candidates(const CandidateForm& form, Region region);

enum class SolveStatus { Found, Absent, Unknown };

struct SolveStats {
  std::uint64_t candidates = 0;        // F >= 0 points examined
  std::uint64_t certified_absent = 0;  // proven not a sum of two squares
  std::uint64_t undecided = 0;         // skipped or out of factoring budget
  std::uint64_t outside_five_c = 0;    // F >= 0 points beyond 5C
  bool found_in_C = false;
  bool budget_exhausted = false;       // max_candidates reached
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  FourSquaresSolution solution;  // valid when status == Found
  SolveStats stats;
};

/// Scans C first, then every remaining point of {F >= 0}, both in norm
/// order, and completes the first admissible candidate. Absent is returned
/// only when every candidate was certified; Unknown otherwise.
/// (r1, r2) = (0, 0) mod M reduces to an unconstrained problem for N / M^2.
SolveResult solve(const FourSquaresInstance& inst);

}  // namespace lpsnav::foursquares

#endif  // LPSNAV_FOURSQUARES_HPP
