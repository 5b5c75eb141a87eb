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

#include "lpsnav/navigator.hpp"

#include <cmath>

#include "lpsnav/ntheory.hpp"

namespace lpsnav::navigator {

using foursquares::SolveStatus;
using quaternion::PslGroup;

namespace {

BigInt sqrt_or_throw(const BigInt& a, const BigInt& q, const char* what) {
  auto r = ntheory::sqrt_mod(mod(a, q), q);
  if (!r) throw InvalidArgument(what);
  return *r;
}

}  // namespace

GraphParams make_graph_params(const BigInt& p, const BigInt& q,
                              bool allow_bipartite) {
  auto good = [](const BigInt& n) {
    return n >= 5 && mod(n, BigInt(4)) == 1 && ntheory::is_prime(n);
  };
  if (!good(p)) throw InvalidArgument("p must be a prime = 1 mod 4");
  if (!good(q)) throw InvalidArgument("q must be a prime = 1 mod 4");
  if (p == q) throw InvalidArgument("p and q must differ");
  const bool bipartite = ntheory::legendre(q, p) != 1;
  if (bipartite && !allow_bipartite)
    throw InvalidArgument("q must be a quadratic residue mod p");
  BigInt sm1 = sqrt_or_throw(q - 1, q, "no square root of -1 mod q");
  BigInt sp = bipartite ? BigInt(0)
                        : sqrt_or_throw(p, q, "p is not a square mod q");
  return GraphParams{p,  q, sm1, sp, bipartite, quaternion::lps_generators(p),
                     PslGroup(q, sm1)};
}

DiagonalVertex normalize_vertex(const GraphParams& G, const DiagonalVertex& v) {
  const BigInt& q = G.q;
  const BigInt n = mod(v.a * v.a + v.b * v.b, q);
  if (n == 0) throw InvalidArgument("diagonal vertex: a^2 + b^2 = 0 mod q");
  auto s = ntheory::sqrt_mod(n, q);
  if (!s) throw InvalidArgument("diagonal vertex: a^2 + b^2 is not a square");
  const BigInt inv = invmod(*s, q);
  return {mod(v.a * inv, q), mod(v.b * inv, q)};
}

Quat axis_quat(const BigInt& a, const BigInt& b, Axis axis) {
  switch (axis) {
    case Axis::I:
      return {a, b, 0, 0};
    case Axis::J:
      return {a, 0, b, 0};
    case Axis::K:
      break;
  }
  return {a, 0, 0, b};
}

long h_max(const GraphParams& G, const NavConfig& cfg) {
  const double lp = log(G.p);
  return static_cast<long>(
             std::ceil(4.0 * log(G.q) / lp + std::log(89.0) / lp)) +
         cfg.h_max_slack;
}

namespace {

// Solution (X, Y, Z, W) with X = a, Y = b, Z = W = 0 placed on the axis.
Quat place(const foursquares::FourSquaresSolution& s, Axis axis) {
  switch (axis) {
    case Axis::I:
      return {s.x, s.y, s.z, s.w};
    case Axis::J:
      return {s.x, s.z, s.y, s.w};
    case Axis::K:
      break;
  }
  return {s.x, s.z, s.w, s.y};
}

// The odd (or even) lift of a residue mod q to a residue mod 2q.
BigInt lift_parity(const BigInt& r, const BigInt& q, int parity) {
  return mod(r, BigInt(2)) == parity ? r : BigInt(r + q);
}

}  // namespace

DiagonalResult diagonal_distance(const GraphParams& G, const DiagonalVertex& v,
                                 const NavConfig& cfg, Axis axis) {
  if (G.bipartite)
    throw InvalidArgument("diagonal_distance: q must be a square mod p");
  const DiagonalVertex u = normalize_vertex(G, v);
  const BigInt& q = G.q;
  const BigInt M = 2 * q;
  const PslElement target = G.group.from_quat(axis_quat(u.a, u.b, axis));

  DiagonalResult out;
  out.h_max = h_max(G, cfg);
  bool certified = true;
  BigInt N = 1, lambda = 1;
  for (long h = 0; h <= out.h_max; ++h) {
    foursquares::FourSquaresInstance inst;
    inst.N = N;
    inst.M = M;
    inst.r1 = lift_parity(mod(lambda * u.a, q), q, 1);
    inst.r2 = lift_parity(mod(lambda * u.b, q), q, 0);
    inst.mode = cfg.mode;
    inst.budget = cfg.budget;
    const foursquares::SolveResult r = foursquares::solve(inst);
    out.candidates += r.stats.candidates;

    if (r.status == SolveStatus::Found) {
      Quat beta = place(r.solution, axis);
      long hh = h;
      const BigInt c = beta.content();
      if (c != 1) {
        // c^2 divides p^h, so c = p^t and beta / c is a shorter solution.
        if (certified)
          throw InternalError("diagonal_distance: non-primitive at minimal h");
        BigInt rest = c;
        while (rest != 1) {
          if (mod(rest, G.p) != 0)
            throw InternalError("diagonal_distance: content not a power of p");
          rest /= G.p;
          hh -= 2;
        }
        beta = {beta.x0 / c, beta.x1 / c, beta.x2 / c, beta.x3 / c};
      }
      out.h = hh;
      out.quaternion = beta;
      out.word = quaternion::factor_into_generators(beta, G.gens);
      out.certified_minimal = certified;
      if (static_cast<long>(out.word.length()) != hh)
        throw InternalError("diagonal_distance: word length mismatch");
      if (!(quaternion::evaluate_word(out.word, G.gens, G.group) == target))
        throw InternalError("diagonal_distance: word misses the target");
      return out;
    }
    if (r.status == SolveStatus::Unknown) {
      if (cfg.mode == foursquares::Admission::FullFactor)
        throw BudgetExceeded("diagonal_distance: h = " + std::to_string(h) +
                             " could not be decided within the budget");
      certified = false;
    }
    N *= G.p;
    lambda = mod(lambda * G.sqrt_p, q);
  }
  throw BudgetExceeded("diagonal_distance: no path up to h_max = " +
                       std::to_string(out.h_max));
}

namespace {

double log_norm(const lattice2::Vec2& v) {
  return 0.5 * log(lattice2::norm2(v));
}

}  // namespace

BoundsReport predicted_bounds(const GraphParams& G, const DiagonalVertex& v,
                              const NavConfig& cfg) {
  const BigInt& q = G.q;
  if (mod(v.a, q) == 0 && mod(v.b, q) == 0)
    throw InvalidArgument("predicted_bounds: (a, b) = (0, 0)");
  const auto hnf = lattice2::congruence_lattice(v.a, v.b, q);
  const auto red = lattice2::gauss_reduce(hnf.u1, hnf.u2);
  const double lp = log(G.p);
  const double lq = log(q);
  BoundsReport r;
  r.u1 = red.u1;
  r.u2 = red.u2;
  r.hole_value = (4.0 * lq - 2.0 * log_norm(red.u1) + std::log(89.0)) / lp;
  r.typical_value = (3.0 * lq + cfg.gamma * std::log(lq) +
                     std::log(cfg.c_gamma) + std::log(89.0)) /
                    lp;
  r.hole_bound = static_cast<long>(std::ceil(r.hole_value));
  r.typical_bound = static_cast<long>(std::ceil(r.typical_value));
  r.unbalanced = log_norm(red.u2) - log_norm(red.u1) >=
                 std::log(cfg.c_gamma) + cfg.gamma * std::log(log(2 * q));
  return r;
}

namespace {

// Projective normalization: first nonzero coordinate scaled to 1.
std::array<BigInt, 4> proj_class(std::array<BigInt, 4> v, const BigInt& q) {
  BigInt lead = 0;
  for (auto& c : v) {
    c = mod(c, q);
    if (lead == 0 && c != 0) lead = c;
  }
  if (lead == 0) return v;
  const BigInt inv = invmod(lead, q);
  for (auto& c : v) c = mod(c * inv, q);
  return v;
}

// x, y for a given root z, or nothing if the root is unusable.
std::optional<std::pair<BigInt, BigInt>> xy_for(const BigInt& A,
                                                const BigInt& B,
                                                const BigInt& C,
                                                const BigInt& D,
                                                const BigInt& z,
                                                const BigInt& q) {
  if (mod(1 + z * z, q) == 0) return std::nullopt;
  const BigInt mu = mod(A + D * z, q);
  if (mu == 0) return std::nullopt;
  const BigInt inv = invmod(mu, q);
  BigInt x = mod((B - C * z) * inv, q), y = mod((C + B * z) * inv, q);
  const Quat prod = Quat{1, x, 0, 0} * Quat{1, 0, y, 0} * Quat{1, 0, 0, z};
  if (proj_class({prod.x0, prod.x1, prod.x2, prod.x3}, q) !=
      proj_class({A, B, C, D}, q))
    return std::nullopt;
  return std::pair{x, y};
}

}  // namespace

std::optional<XyzDecomposition> decompose_xyz(const BigInt& A, const BigInt& B,
                                              const BigInt& C, const BigInt& D,
                                              const BigInt& q) {
  if (mod(A, q) == 0 && mod(B, q) == 0 && mod(C, q) == 0 && mod(D, q) == 0)
    throw InvalidArgument("decompose_xyz: zero class");
  const BigInt a = mod(A * D - B * C, q);
  const BigInt b = mod(A * A + B * B - C * C - D * D, q);

  std::vector<BigInt> roots;
  if (a == 0) {
    // Linear: b z = 0. If b = 0 as well every z solves the equation.
    if (b != 0) {
      roots.push_back(0);
    } else {
      for (BigInt z = 0; z < q && roots.size() < 2; ++z)
        if (xy_for(A, B, C, D, z, q)) roots.push_back(z);
    }
  } else {
    const BigInt disc = mod(b * b + 4 * a * a, q);
    auto s = ntheory::sqrt_mod(disc, q);
    if (!s) return std::nullopt;
    const BigInt inv2a = invmod(2 * a, q);
    BigInt z1 = mod((-b + *s) * inv2a, q), z2 = mod((-b - *s) * inv2a, q);
    if (z2 < z1) std::swap(z1, z2);
    roots.push_back(z1);
    if (z2 != z1) roots.push_back(z2);
  }

  std::optional<XyzDecomposition> out;
  for (const BigInt& z : roots) {
    auto xy = xy_for(A, B, C, D, z, q);
    if (!xy) continue;
    if (!out)
      out = XyzDecomposition{xy->first, xy->second, z, std::nullopt};
    else
      out->other_z = z;
  }
  return out;
}

GeneratorWord next_word(const GeneratorWord& w,
                        const quaternion::GeneratorSet& s) {
  const std::size_t n = s.size();
  auto allowed = [&](const std::vector<std::size_t>& l, std::size_t pos,
                     std::size_t g) {
    return pos == 0 || s.inverse[l[pos - 1]] != g;
  };
  auto fill_from = [&](std::vector<std::size_t>& l, std::size_t pos) {
    for (std::size_t i = pos; i < l.size(); ++i) {
      std::size_t g = 0;
      while (!allowed(l, i, g)) ++g;
      l[i] = g;
    }
  };
  GeneratorWord out = w;
  auto& l = out.letters;
  for (std::size_t pos = l.size(); pos-- > 0;) {
    std::size_t g = l[pos] + 1;
    while (g < n && !allowed(l, pos, g)) ++g;
    if (g < n) {
      l[pos] = g;
      fill_from(l, pos + 1);
      return out;
    }
  }
  l.assign(l.size() + 1, 0);
  fill_from(l, 0);
  return out;
}

namespace {

// A zero coordinate is the identity factor and needs no navigation.
bool balanced(const GraphParams& G, const BigInt& t, const NavConfig& cfg) {
  if (mod(t, G.q) == 0) return true;
  const auto hnf = lattice2::congruence_lattice(1, t, G.q);
  const auto red = lattice2::gauss_reduce(hnf.u1, hnf.u2);
  return log_norm(red.u2) - log_norm(red.u1) <=
         std::log(cfg.c_gamma) + cfg.gamma * std::log(log(G.q));
}

// 1 + t^2 must be a nonzero square for (1, t) to be a vertex.
bool is_vertex(const GraphParams& G, const BigInt& t) {
  const BigInt n = mod(1 + t * t, G.q);
  return n != 0 && ntheory::legendre(n, G.q) == 1;
}

}  // namespace

GeneralResult general_navigate(const GraphParams& G, const PslElement& g,
                               const NavConfig& cfg, Rng& rng) {
  (void)rng;
  const PslGroup& grp = G.group;
  if (!grp.is_special(g))
    throw InvalidArgument("general_navigate: element is not in PSL2(F_q)");

  GeneralResult out;
  GeneralStats& st = out.stats;
  GeneratorWord s;
  for (;; s = next_word(s, G.gens)) {
    if (st.trials >= cfg.max_trials)
      throw BudgetExceeded("general_navigate: trial budget exhausted");
    ++st.trials;
    const PslElement h =
        grp.multiply(quaternion::evaluate_word(s, G.gens, grp), g);
    const quaternion::QuatClass c = grp.to_quat_class(h);
    auto dec = decompose_xyz(c.a, c.b, c.c, c.d, G.q);
    if (!dec) continue;
    ++st.step2_accepted;

    std::vector<BigInt> zs{dec->z};
    if (dec->other_z) zs.push_back(*dec->other_z);
    bool step3 = false;
    for (const BigInt& z : zs) {
      auto xy = xy_for(c.a, c.b, c.c, c.d, z, G.q);
      if (!xy) throw InternalError("general_navigate: root lost its x, y");
      const BigInt& x = xy->first;
      const BigInt& y = xy->second;
      if (!balanced(G, x, cfg) || !balanced(G, y, cfg) || !balanced(G, z, cfg))
        continue;
      if (!step3) {
        ++st.step3_accepted;
        step3 = true;
      }
      if (!is_vertex(G, x) || !is_vertex(G, y) || !is_vertex(G, z)) {
        ++st.factor_rejected;
        continue;
      }
      DiagonalResult rx, ry, rz;
      try {
        rx = diagonal_distance(G, {1, x}, cfg, Axis::I);
        ry = diagonal_distance(G, {1, y}, cfg, Axis::J);
        rz = diagonal_distance(G, {1, z}, cfg, Axis::K);
      } catch (const BudgetExceeded&) {
        ++st.factor_rejected;
        continue;
      }
      // g = s^-1 (1+ix)(1+jy)(1+kz): the k-factor acts first.
      GeneratorWord w = quaternion::concat(
          quaternion::concat(quaternion::concat(rz.word, ry.word), rx.word),
          quaternion::inverse(s, G.gens));
      out.word = quaternion::free_reduce(w, G.gens);
      out.prefix = s;
      out.xyz = {x, y, z, std::nullopt};
      out.hx = rx.h;
      out.hy = ry.h;
      out.hz = rz.h;
      if (!(quaternion::evaluate_word(out.word, G.gens, grp) == g))
        throw InternalError("general_navigate: word misses the target");
      return out;
    }
  }
}

}  // namespace lpsnav::navigator
