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

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "lpsnav/foursquares.hpp"

using namespace lpsnav;
using namespace lpsnav::foursquares;
using lattice2::Vec2;

namespace {

using Point = std::pair<long, long>;

long lsqrt(long n) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Residue pairs (x mod M, y mod M) reachable by some solution of
// x^2 + y^2 + z^2 + w^2 = N with M | z, M | w.
std::set<Point> reachable(long N, long M) {
  std::set<Point> out;
  const long s = lsqrt(N);
  for (long z = -s; z <= s; z += 1) {
    if (z % M != 0) continue;
    for (long w = -s; w <= s; ++w) {
      if (w % M != 0) continue;
      const long rest = N - z * z - w * w;
      if (rest < 0) continue;
      for (long x = -s; x <= s; ++x) {
        const long y2 = rest - x * x;
        if (y2 < 0) continue;
        const long y = lsqrt(y2);
        if (y * y != y2) continue;
        out.insert({((x % M) + M) % M, ((y % M) + M) % M});
        out.insert({((x % M) + M) % M, ((-y % M) + M) % M});
      }
    }
  }
  return out;
}

// Brute force over t-space: all (x1, x2) whose coset point t has
// N - (M t1 + r1)^2 - (M t2 + r2)^2 >= 0, mapped back through the basis.
std::map<Point, BigInt> brute_candidates(const CandidateForm& f) {
  std::map<Point, BigInt> out;
  const long M = f.M.get_si();
  const long T = lsqrt(f.N.get_si()) / M + 2;
  const BigInt det = lattice2::cross(f.u1, f.u2);
  for (long t1 = -T; t1 <= T; ++t1)
    for (long t2 = -T; t2 <= T; ++t2) {
      const Vec2 d = Vec2{t1, t2} - f.u0;
      const BigInt c1 = lattice2::cross(d, f.u2), c2 = lattice2::cross(f.u1, d);
      if (mod(c1, abs(det)) != 0 || mod(c2, abs(det)) != 0) continue;
      const BigInt a = M * BigInt(t1) + f.r1, b = M * BigInt(t2) + f.r2;
      const BigInt rest = f.N - a * a - b * b;
      if (rest < 0) continue;
      REQUIRE(mod(rest, BigInt(M * M)) == 0);
      out[{BigInt(c1 / det).get_si(), BigInt(c2 / det).get_si()}] = rest / (M * M);
    }
  return out;
}

std::vector<FourSquaresInstance> small_instances(Rng& rng, int count) {
  std::vector<FourSquaresInstance> out;
  const long primes[] = {5, 13, 17, 29, 37, 41};
  while (static_cast<int>(out.size()) < count) {
    const long q = primes[random_below(6, rng).get_ui()];
    const long M = random_below(2, rng) == 0 ? q : 2 * q;
    const long x = random_between(-200, 200, rng).get_si();
    const long y = random_between(-200, 200, rng).get_si();
    const long z = M * random_between(-8, 8, rng).get_si();
    const long w = M * random_between(-8, 8, rng).get_si();
    if (((x % M) + M) % M == 0 && ((y % M) + M) % M == 0) continue;
    FourSquaresInstance in;
    in.N = x * x + y * y + z * z + w * w;
    in.M = M;
    in.r1 = ((x % M) + M) % M;
    in.r2 = ((y % M) + M) % M;
    in.mode = Admission::FullFactor;
    out.push_back(in);
  }
  return out;
}

}  // namespace

TEST_CASE("form identity at random points") {
  Rng rng(41);
  for (const auto& in : small_instances(rng, 200)) {
    const CandidateForm f = build_form(in);
    for (int n = 0; n < 100; ++n) {
      const BigInt x1 = random_between(-1000, 1000, rng);
      const BigInt x2 = random_between(-1000, 1000, rng);
      const Vec2 t = f.coset_point(x1, x2);
      const BigInt a = f.M * t.a + f.r1, b = f.M * t.b + f.r2;
      REQUIRE(f.M * f.M * f.value(x1, x2) + a * a + b * b == f.N);
    }
    const Vec2 t0 = f.coset_point(0, 0);
    CHECK(mod(f.k - 2 * f.r1 * t0.a - 2 * f.r2 * t0.b, f.M) == 0);
    CHECK(f.M * f.u0p == f.k - 2 * f.r1 * f.u0.a - 2 * f.r2 * f.u0.b);
    CHECK(f.M * f.u1p == 2 * f.r1 * f.u1.a + 2 * f.r2 * f.u1.b);
    CHECK(f.M * f.u2p == 2 * f.r1 * f.u2.a + 2 * f.r2 * f.u2.b);
  }
}

TEST_CASE("build_form small examples") {
  FourSquaresInstance a{5, 5, 1, 2, Admission::FullFactor, {}};
  const CandidateForm f = build_form(a);
  CHECK(f.k == 0);
  CHECK(f.u0 == Vec2{0, 0});
  CHECK(f.value(0, 0) == 0);
  const SolveResult r = solve(a);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(r.solution == FourSquaresSolution{1, 2, 0, 0});

  FourSquaresInstance b{50, 5, 1, 2, Admission::FullFactor, {}};
  const CandidateForm g = build_form(b);
  CHECK(g.k == 9);
  // Direct evaluation over t in [-3, 3]^2.
  std::set<std::pair<long, BigInt>> direct, via_form;
  for (long t1 = -3; t1 <= 3; ++t1)
    for (long t2 = -3; t2 <= 3; ++t2) {
      if ((9 - 2 * t1 - 4 * t2) % 5 != 0) continue;
      const long rest = 50 - (5 * t1 + 1) * (5 * t1 + 1) - (5 * t2 + 2) * (5 * t2 + 2);
      if (rest >= 0) direct.insert({t1 * 100 + t2, BigInt(rest / 25)});
    }
  CandidateStream s = enumerate_candidates(g, Region::All);
  while (auto c = s.next()) {
    const Vec2 t = g.coset_point(c->x1, c->x2);
    via_form.insert({t.a.get_si() * 100 + t.b.get_si(), c->value});
  }
  CHECK(direct == via_form);
  CHECK_FALSE(direct.empty());

  CHECK_THROWS_AS(build_form({30, 10, 2, 4, Admission::FullFactor, {}}), Infeasible);
}

TEST_CASE("candidate stream matches brute force and is ordered") {
  Rng rng(43);
  for (const auto& in : small_instances(rng, 300)) {
    const CandidateForm f = build_form(in);
    const auto brute = brute_candidates(f);
    for (Region region : {Region::C, Region::FiveC, Region::All}) {
      std::map<Point, BigInt> expect;
      for (const auto& [pt, v] : brute) {
        const Box box = region == Region::C ? f.C() : f.five_C();
        if (region == Region::All || box.contains(pt.first, pt.second))
          expect[pt] = v;
      }
      std::map<Point, BigInt> got;
      CandidateStream s = enumerate_candidates(f, region);
      BigInt last_norm = -1;
      Point last{0, 0};
      while (auto c = s.next()) {
        const Point pt{c->x1.get_si(), c->x2.get_si()};
        const BigInt n = c->x1 * c->x1 + c->x2 * c->x2;
        CHECK(n >= last_norm);
        if (n == last_norm) CHECK(last < pt);
        last_norm = n;
        last = pt;
        CHECK(c->value >= 0);
        CHECK(c->value == f.value(c->x1, c->x2));
        CHECK(got.count(pt) == 0);
        got[pt] = c->value;
      }
      REQUIRE(got == expect);
      if (f.value(0, 0) >= 0 && !got.empty() &&
          (region == Region::All || f.C().contains(0, 0))) {
        CandidateStream first = enumerate_candidates(f, region);
        const auto c = first.next();
        CHECK(c->x1 == 0);
        CHECK(c->x2 == 0);
      }
    }
  }
}

TEST_CASE("solve examples") {
  const SolveResult r = solve({50, 5, 0, 0, Admission::FullFactor, {}});
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(r.solution == FourSquaresSolution{5, 5, 0, 0});
  CHECK(solve({25, 5, 0, 0, Admission::FullFactor, {}}).status == SolveStatus::Found);
  CHECK(solve({30, 5, 0, 0, Admission::FullFactor, {}}).status == SolveStatus::Absent);
  CHECK(solve({0, 5, 0, 0, Admission::FullFactor, {}}).solution ==
        FourSquaresSolution{0, 0, 0, 0});
  CHECK_THROWS_AS(solve({8, 5, 1, 1, Admission::FullFactor, {}}), InvalidArgument);
}

TEST_CASE("solve agrees with exhaustive search on a small grid") {
  for (long M : {5L, 13L, 10L, 26L}) {
    for (long N = 0; N <= 400; ++N) {
      const auto ok = reachable(N, M);
      for (long a = 0; a < M; ++a)
        for (long b = 0; b < M; ++b) {
          if ((a * a + b * b - N) % M != 0) continue;
          FourSquaresInstance in{N, M, a, b, Admission::FullFactor, {}};
          const SolveResult r = solve(in);
          REQUIRE(r.status != SolveStatus::Unknown);
          CHECK((r.status == SolveStatus::Found) == (ok.count({a, b}) == 1));
          if (r.status == SolveStatus::Found) CHECK(is_valid_solution(in, r.solution));
        }
    }
  }
}

TEST_CASE("admission policies") {
  FourSquaresInstance small{50, 5, 1, 2, Admission::Auto, {}};
  CHECK_FALSE(uses_fast_path(small));
  FourSquaresInstance big;
  big.N = pow(BigInt(5), 41);
  big.M = 58;
  // r1 odd, r2 even with r1^2 + r2^2 = 5^41 mod 58.
  bool set = false;
  for (long a = 1; a < 58 && !set; a += 2)
    for (long b = 0; b < 58 && !set; b += 2)
      if (mod(BigInt(a * a + b * b) - big.N, BigInt(58)) == 0) {
        big.r1 = a;
        big.r2 = b;
        set = true;
      }
  REQUIRE(set);
  CHECK(uses_fast_path(big));
  big.mode = Admission::FullFactor;
  CHECK_FALSE(uses_fast_path(big));
  for (Admission mode : {Admission::FastPath, Admission::FullFactor}) {
    big.mode = mode;
    const SolveResult r = solve(big);
    REQUIRE(r.status == SolveStatus::Found);
    CHECK(is_valid_solution(big, r.solution));
    CHECK(solve(big).solution == r.solution);
  }
}

TEST_CASE("candidate budget yields unknown, never absent") {
  Rng rng(47);
  int exercised = 0;
  for (const auto& base : small_instances(rng, 300)) {
    const SolveResult full = solve(base);
    REQUIRE(full.status == SolveStatus::Found);
    if (full.stats.candidates < 2) continue;
    FourSquaresInstance in = base;
    in.budget.max_candidates = 1;
    const SolveResult r = solve(in);
    CHECK(r.status == SolveStatus::Unknown);
    CHECK(r.stats.budget_exhausted);
    ++exercised;
  }
  CHECK(exercised > 0);
}

TEST_CASE("solve is deterministic") {
  Rng rng(53);
  for (const auto& in : small_instances(rng, 100)) {
    const SolveResult a = solve(in), b = solve(in);
    CHECK(a.status == b.status);
    CHECK(a.solution == b.solution);
  }
}
