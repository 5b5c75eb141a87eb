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

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lpsnav/ntheory.hpp"
#include "lpsnav/quaternion.hpp"

using namespace lpsnav;
using namespace lpsnav::quaternion;

namespace {

const char* kQ100 =
    "6513516734600035718300327211250928237178281758494417357560086828416863"
    "929270451437126021949850746381";

// A 432-letter path in X_{5,q} for kQ100 and its integral lift.
const char* kWord432 =
    "Vy Vz^{-1} Vx Vz Vx Vx Vz Vz Vx^{-1} Vx^{-1} "
    "Vz^{-1} Vx^{-1} Vz Vz Vy Vz^{-1} Vz^{-1} Vz^{-1} Vy Vz^{-1} "
    "Vy^{-1} Vx Vx Vz Vx Vy^{-1} Vx Vy^{-1} Vx Vz^{-1} "
    "Vy Vx Vz Vz Vx Vz^{-1} Vy^{-1} Vx Vx Vz "
    "Vz Vx Vx Vz^{-1} Vx Vx Vy^{-1} Vx^{-1} Vz Vy "
    "Vx Vz Vy Vx^{-1} Vy^{-1} Vy^{-1} Vz^{-1} Vy^{-1} Vz Vx^{-1} "
    "Vz^{-1} Vx^{-1} Vx^{-1} Vz Vy^{-1} Vx^{-1} Vz Vx^{-1} Vx^{-1} Vz^{-1} "
    "Vy Vz Vz Vz Vy Vz^{-1} Vx Vy Vx^{-1} Vz^{-1} "
    "Vx^{-1} Vz^{-1} Vx^{-1} Vx^{-1} Vz Vy^{-1} Vx^{-1} Vx^{-1} Vy^{-1} Vz^{-1} "
    "Vx Vz^{-1} Vx^{-1} Vy Vy Vy Vy Vy Vx^{-1} Vz "
    "Vx^{-1} Vz Vy Vx^{-1} Vx^{-1} Vy Vz^{-1} Vx Vx Vz "
    "Vy^{-1} Vz^{-1} Vy Vz Vx^{-1} Vx^{-1} Vy^{-1} Vz^{-1} Vy Vx^{-1} "
    "Vy Vz^{-1} Vy Vz Vz Vx^{-1} Vx^{-1} Vy^{-1} Vx^{-1} Vz^{-1} "
    "Vx^{-1} Vy Vz Vy Vy Vx^{-1} Vz^{-1} Vz^{-1} Vy Vy "
    "Vx Vy Vy Vz Vz Vy Vz Vx Vz Vy "
    "Vz Vx Vy Vz^{-1} Vy Vx^{-1} Vz Vx Vz^{-1} Vy^{-1} "
    "Vx Vx Vy^{-1} Vx Vy Vx Vy^{-1} Vy^{-1} Vy^{-1} Vz "
    "Vx Vy^{-1} Vz Vx^{-1} Vz^{-1} Vx^{-1} Vx^{-1} Vz^{-1} Vz^{-1} Vy^{-1} "
    "Vx Vy^{-1} Vx^{-1} Vz^{-1} Vx^{-1} Vz Vx Vz^{-1} Vy^{-1} Vz^{-1} "
    "Vy Vx Vz Vx^{-1} Vy^{-1} Vz^{-1} Vx^{-1} Vz^{-1} Vz^{-1} Vy "
    "Vx^{-1} Vy^{-1} Vz^{-1} Vy Vz^{-1} Vx Vz Vx Vx Vy "
    "Vx^{-1} Vx^{-1} Vz^{-1} Vx Vz Vy^{-1} Vz^{-1} Vz^{-1} Vy^{-1} Vy^{-1} "
    "Vy^{-1} Vx^{-1} Vx^{-1} Vy^{-1} Vz^{-1} Vy Vx Vx Vx Vy^{-1} "
    "Vx Vz^{-1} Vy^{-1} Vz Vz Vy Vz Vy Vz Vz "
    "Vx Vx Vy^{-1} Vx^{-1} Vy Vz^{-1} Vy^{-1} Vx^{-1} Vz^{-1} Vx^{-1} "
    "Vz Vx Vy^{-1} Vx^{-1} Vx^{-1} Vy Vx Vy Vx Vz "
    "Vy^{-1} Vz Vz Vy Vz^{-1} Vy Vz^{-1} Vx^{-1} Vx^{-1} Vy "
    "Vz Vx^{-1} Vx^{-1} Vy Vz^{-1} Vx^{-1} Vy^{-1} Vy^{-1} Vx^{-1} Vy "
    "Vz^{-1} Vy^{-1} Vz^{-1} Vx Vx Vy Vz Vx^{-1} Vy^{-1} Vz^{-1} "
    "Vx Vz^{-1} Vy^{-1} Vy^{-1} Vx^{-1} Vy^{-1} Vy^{-1} Vy^{-1} Vz Vy "
    "Vx^{-1} Vz Vx^{-1} Vy^{-1} Vy^{-1} Vx^{-1} Vz Vx^{-1} Vz^{-1} Vz^{-1} "
    "Vy Vy Vy Vx^{-1} Vy Vy Vy Vz Vy Vx^{-1} "
    "Vy^{-1} Vx^{-1} Vy^{-1} Vz Vz Vz Vy^{-1} Vy^{-1} Vz Vy "
    "Vz Vy^{-1} Vx Vx Vx Vy^{-1} Vz Vz Vz Vy "
    "Vz^{-1} Vy^{-1} Vy^{-1} Vy^{-1} Vx^{-1} Vz^{-1} Vx^{-1} Vz^{-1} Vx Vz^{-1} "
    "Vy^{-1} Vx^{-1} Vz Vy Vx^{-1} Vz^{-1} Vy^{-1} Vx^{-1} Vy Vx "
    "Vx Vz Vx Vz^{-1} Vx Vz Vy^{-1} Vz Vx^{-1} Vy "
    "Vz^{-1} Vz^{-1} Vx Vz^{-1} Vx^{-1} Vz^{-1} Vx^{-1} Vz Vx Vz^{-1} "
    "Vx^{-1} Vz Vy Vz Vz Vy Vx Vx Vy^{-1} Vx^{-1} "
    "Vz^{-1} Vx Vy Vz^{-1} Vz^{-1} Vy Vz^{-1} Vy^{-1} Vx^{-1} Vz "
    "Vy^{-1} Vz^{-1} Vy Vx^{-1} Vx^{-1} Vy^{-1} Vy^{-1} Vy^{-1} Vx Vx "
    "Vz^{-1} Vx^{-1} Vy^{-1} Vx Vy Vx Vy Vx^{-1} Vy Vx^{-1} "
    "Vx^{-1} Vz^{-1} Vx Vz Vy^{-1} Vx^{-1} Vy^{-1} Vx Vy Vz^{-1} "
    "Vz^{-1} Vx";

Quat lift432() {
  return {BigInt("-351368640582886092776375494048461668773595440356468911398538325"
                 "3868329887073895129393123529043092607930187858085249975614142765"
                 "081986624258530038940271"),
          BigInt("3773156548062114482690557548470637380371201820782668326017207890"
                 "1718866788306018701443172324892648671688316895782233127729632626"
                 "87237828114002146000356"),
          BigInt("6961502824640066030911860897062255650574483479745799919402670124"
                 "7500931540186565708618929184158099623752719299633094793065433353"
                 "75368842987498287311268"),
          BigInt("3888519350877870793211628965104035265911619494928178960777970459"
                 "6931093191534227701963187548160199216621195786233109793874053670"
                 "17752713898473225295568")};
}

// Brute-force generator list: norm p, x0 > 0 odd, others even.
std::vector<Quat> brute_generators(long p) {
  std::vector<Quat> out;
  long r = 0;
  while ((r + 1) * (r + 1) <= p) ++r;
  for (long a = 1; a <= r; a += 2)
    for (long b = -r; b <= r; ++b)
      for (long c = -r; c <= r; ++c)
        for (long d = -r; d <= r; ++d)
          if (b % 2 == 0 && c % 2 == 0 && d % 2 == 0 &&
              a * a + b * b + c * c + d * d == p)
            out.push_back({a, b, c, d});
  return out;
}

std::multiset<std::vector<long>> abs_patterns(const std::vector<Quat>& gens) {
  std::multiset<std::vector<long>> out;
  for (const auto& g : gens) {
    std::vector<long> v{std::labs(g.x0.get_si()), std::labs(g.x1.get_si()),
                        std::labs(g.x2.get_si()), std::labs(g.x3.get_si())};
    std::sort(v.begin() + 1, v.end());
    out.insert(v);
  }
  return out;
}

// Independent 2x2 matrix arithmetic over F_q.
struct Mat {
  long a, b, c, d;
};

Mat mat_of(const Quat& x, long q, long i) {
  auto m = [&](const BigInt& v) { return mod(v, BigInt(q)).get_si(); };
  return {(m(x.x0) + i * m(x.x1)) % q, (m(x.x2) + i * m(x.x3)) % q,
          ((q - m(x.x2)) + i * m(x.x3)) % q, (m(x.x0) + (q - i) * m(x.x1)) % q};
}

// g equals m up to a nonzero scalar.
bool projectively_equal(const PslElement& g, const Mat& m, long q) {
  for (long s = 1; s < q; ++s)
    if (g.m11 == s * m.a % q && g.m12 == s * m.b % q &&
        g.m21 == s * m.c % q && g.m22 == s * m.d % q)
      return true;
  return false;
}

Quat random_quat(Rng& rng, long bound) {
  return {random_between(-bound, bound, rng), random_between(-bound, bound, rng),
          random_between(-bound, bound, rng), random_between(-bound, bound, rng)};
}

GeneratorWord random_reduced_word(std::size_t len, const GeneratorSet& s,
                                  Rng& rng) {
  GeneratorWord w;
  while (w.length() < len) {
    const std::size_t g = random_below(s.size(), rng).get_ui();
    if (!w.letters.empty() && s.inverse[w.letters.back()] == g) continue;
    w.letters.push_back(g);
  }
  return w;
}

}  // namespace

TEST_CASE("quaternion multiplication table") {
  const Quat one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(i * i == -one);
  CHECK(j * j == -one);
  CHECK(k * k == -one);
  Rng rng(2);
  for (int n = 0; n < 200; ++n) {
    const Quat a = random_quat(rng, 1000), b = random_quat(rng, 1000);
    CHECK((a * b).norm() == a.norm() * b.norm());
    CHECK((a * b).conj() == b.conj() * a.conj());
    CHECK(a * a.conj() == Quat{a.norm(), 0, 0, 0});
  }
  CHECK(Quat{6, 4, 2, 8}.content() == 2);
  CHECK(Quat{3, 0, 0, 0}.content() == 3);
}

TEST_CASE("lps_generators p = 5") {
  const GeneratorSet s = lps_generators(5);
  REQUIRE(s.size() == 6);
  std::set<std::tuple<long, long, long, long>> got;
  for (const auto& g : s.gens)
    got.insert({g.x0.get_si(), g.x1.get_si(), g.x2.get_si(), g.x3.get_si()});
  const std::set<std::tuple<long, long, long, long>> expect{
      {1, 2, 0, 0}, {1, -2, 0, 0}, {1, 0, 2, 0},
      {1, 0, -2, 0}, {1, 0, 0, 2}, {1, 0, 0, -2}};
  CHECK(got == expect);
  for (std::size_t g = 0; g < s.size(); ++g)
    CHECK(s.gens[s.inverse[g]] == s.gens[g].conj());
}

TEST_CASE("lps_generators p = 13 and p = 17") {
  const GeneratorSet s13 = lps_generators(13);
  CHECK(s13.size() == 14);
  const auto pat13 = abs_patterns(s13.gens);
  CHECK(pat13.count({1, 2, 2, 2}) == 8);
  CHECK(pat13.count({3, 0, 0, 2}) == 6);

  const GeneratorSet s17 = lps_generators(17);
  CHECK(s17.size() == 18);
  const auto pat17 = abs_patterns(s17.gens);
  CHECK(pat17.count({1, 0, 0, 4}) == 6);
  CHECK(pat17.count({3, 0, 2, 2}) == 12);
}

TEST_CASE("lps_generators counts and brute-force agreement for p <= 200") {
  for (long p = 5; p <= 200; p += 4) {
    if (!ntheory::is_prime(p)) continue;
    const GeneratorSet s = lps_generators(p);
    CHECK(s.size() == static_cast<std::size_t>(p + 1));
    auto brute = brute_generators(p);
    auto lex = [](const Quat& a, const Quat& b) {
      return std::tie(a.x0, a.x1, a.x2, a.x3) < std::tie(b.x0, b.x1, b.x2, b.x3);
    };
    std::sort(brute.begin(), brute.end(), lex);
    CHECK(s.gens == brute);
    CHECK(std::is_sorted(s.gens.begin(), s.gens.end(), lex));
  }
}

TEST_CASE("word helpers") {
  const GeneratorSet s = lps_generators(5);
  const GeneratorWord w{{0, 2, 4}};
  CHECK(is_non_backtracking(w, s));
  const GeneratorWord wi = inverse(w, s);
  CHECK(wi.letters ==
        std::vector<std::size_t>{s.inverse[4], s.inverse[2], s.inverse[0]});
  CHECK(free_reduce(concat(w, wi), s).length() == 0);
  CHECK_FALSE(is_non_backtracking(GeneratorWord{{0, s.inverse[0]}}, s));
  CHECK(word_product(concat(w, wi), s) == Quat{125, 0, 0, 0});
  CHECK(format_word(GeneratorWord{}, s).empty());
}

TEST_CASE("factor_into_generators examples") {
  const GeneratorSet s = lps_generators(5);
  CHECK(factor_into_generators({1, 0, 0, 0}, s).length() == 0);
  for (std::size_t g = 0; g < s.size(); ++g)
    CHECK(factor_into_generators(s.gens[g], s).letters ==
          std::vector<std::size_t>{g});

  const Quat a{1, 2, 0, 0}, b{1, 0, 2, 0};
  const Quat ab = a * b;
  CHECK(ab == Quat{1, 2, 2, 4});
  const GeneratorWord w = factor_into_generators(ab, s);
  REQUIRE(w.length() == 2);
  // Path order: b is applied first.
  CHECK(s.gens[w.letters[0]] == b);
  CHECK(s.gens[w.letters[1]] == a);
  CHECK(format_word(w, s) == "Vz Vy");

  CHECK_THROWS_AS(factor_into_generators({5, 0, 0, 0}, s), InvalidArgument);
  CHECK_THROWS_AS(factor_into_generators({2, 1, 0, 0}, s), InvalidArgument);
  CHECK_THROWS_AS(factor_into_generators({3, 0, 0, 0}, s), InvalidArgument);
}

TEST_CASE("factor_into_generators inverts random reduced words") {
  Rng rng(7);
  for (long p : {5L, 13L, 17L, 29L}) {
    const GeneratorSet s = lps_generators(p);
    for (int n = 0; n < 300; ++n) {
      const GeneratorWord w =
          random_reduced_word(random_below(13, rng).get_ui(), s, rng);
      const Quat alpha = word_product(w, s);
      CHECK(alpha.norm() == pow(BigInt(p), w.length()));
      const GeneratorWord back = factor_into_generators(alpha, s);
      CHECK(back == w);
      CHECK(is_non_backtracking(back, s));
      CHECK(factor_into_generators(-alpha, s) == w);
    }
  }
}

TEST_CASE("a known 432-letter lift factors into its word") {
  const GeneratorSet s = lps_generators(5);
  const Quat alpha = lift432();
  const BigInt q(kQ100);
  CHECK(alpha.norm() == pow(BigInt(5), 432));
  CHECK(mod(alpha.x2, q) == 0);
  CHECK(mod(alpha.x3, q) == 0);
  const GeneratorWord w = factor_into_generators(alpha, s);
  CHECK(w.length() == 432);
  CHECK(format_word(w, s) == kWord432);
  const Quat back = word_product(w, s);
  CHECK((back == alpha || back == -alpha));
}

TEST_CASE("quat_to_psl against a direct matrix oracle") {
  const long q = 13, i = 5;
  PslGroup group(q, i);
  // 1 + 2i maps to diag(11, 4) up to scaling.
  const PslElement g = quat_to_psl({1, 2, 0, 0}, q, 0, i);
  CHECK(projectively_equal(g, Mat{11, 0, 0, 4}, q));
  CHECK(quat_to_psl({1, 0, 0, 0}, q, 0, i) == group.identity());

  Rng rng(13);
  for (int n = 0; n < 300; ++n) {
    const Quat a = random_quat(rng, 50);
    if (mod(a.norm(), BigInt(q)) == 0) continue;
    const PslElement x = group.from_quat(a);
    CHECK(projectively_equal(x, mat_of(a, q, i), q));
    // canonical representative
    const BigInt det = group.determinant(x);
    CHECK((det == 1 || ntheory::legendre(det, q) == -1));
    const auto e = x.entries();
    const auto first = std::find_if(e.begin(), e.end(),
                                    [](const BigInt& v) { return v != 0; });
    CHECK(*first <= (q - 1) / 2);
    CHECK(group.from_quat(a * a.conj()) == group.identity());
  }
  CHECK_THROWS_AS(group.from_quat({3, 2, 0, 0}), InvalidArgument);
}

TEST_CASE("quat_to_psl is multiplicative") {
  Rng rng(19);
  for (long q : {13L, 29L, 101L}) {
    const BigInt i = *ntheory::sqrt_mod(q - 1, q);
    PslGroup group(q, i);
    int done = 0;
    while (done < 1000) {
      const Quat a = random_quat(rng, 500), b = random_quat(rng, 500);
      if (mod(a.norm() * b.norm(), BigInt(q)) == 0) continue;
      ++done;
      REQUIRE(group.from_quat(a * b) ==
              group.multiply(group.from_quat(a), group.from_quat(b)));
    }
  }
}

TEST_CASE("quaternion classes round trip") {
  const long q = 13;
  PslGroup group(q, 5);
  CHECK(group.to_quat_class(group.identity()) == QuatClass{1, 0, 0, 0});
  // diag(a + ib, a - ib) has class (a, b, 0, 0).
  for (long a = 1; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      if ((a * a + b * b) % q == 0) continue;
      const PslElement g = group.canonical((a + 5 * b) % q, 0, 0,
                                           (a + (q - 5) * b) % q);
      const QuatClass c = group.to_quat_class(g);
      CHECK(c == group.normalize(a, b, 0, 0));
    }

  Rng rng(29);
  for (long p : {13L, 29L, 41L}) {
    const BigInt ip = *ntheory::sqrt_mod(p - 1, p);
    PslGroup gp(p, ip);
    for (int n = 0; n < 300; ++n) {
      const Quat a = random_quat(rng, 1000);
      if (mod(a.norm(), BigInt(p)) == 0) continue;
      const PslElement g = gp.from_quat(a);
      const QuatClass c = psl_to_quat_class(g, p, ip);
      CHECK(c == gp.normalize(a.x0, a.x1, a.x2, a.x3));
      CHECK(gp.from_quat_class(c) == g);
      CHECK(gp.from_quat({c.a, c.b, c.c, c.d}) == g);
    }
  }
}

TEST_CASE("evaluate_word") {
  const long q = 29;
  const BigInt i = *ntheory::sqrt_mod(q - 1, q);
  PslGroup group(q, i);
  const GeneratorSet s = lps_generators(5);
  CHECK(evaluate_word({}, s, group) == group.identity());
  for (std::size_t g = 0; g < s.size(); ++g)
    CHECK(evaluate_word(GeneratorWord{{g, s.inverse[g]}}, s, group) ==
          group.identity());

  Rng rng(31);
  for (int n = 0; n < 200; ++n) {
    const GeneratorWord w = random_reduced_word(random_below(20, rng).get_ui(), s, rng);
    const Quat alpha = word_product(w, s);
    CHECK(evaluate_word(factor_into_generators(alpha, s), s, group) ==
          group.from_quat(alpha));
    // Product order: letters[n-1] ... letters[0].
    PslElement acc = group.identity();
    for (std::size_t g : w.letters) acc = group.multiply(group.from_quat(s.gens[g]), acc);
    CHECK(evaluate_word(w, s, group) == acc);
  }
}
