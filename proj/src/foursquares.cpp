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

#include "lpsnav/foursquares.hpp"

#include <algorithm>

namespace lpsnav::foursquares {

using lattice2::cross;
using lattice2::dot;
using lattice2::norm2;
using ntheory::TwoSquaresResult;
using ntheory::TwoSquaresStatus;

bool uses_fast_path(const FourSquaresInstance& inst) {
  switch (inst.mode) {
    case Admission::FullFactor:
      return false;
    case Admission::FastPath:
      return true;
    case Admission::Auto:
      break;
  }
  static const BigInt threshold("1000000000000000000");
  return inst.N > threshold;
}

bool is_valid_solution(const FourSquaresInstance& inst,
                       const FourSquaresSolution& s) {
  const BigInt& M = inst.M;
  return s.x * s.x + s.y * s.y + s.z * s.z + s.w * s.w == inst.N &&
         mod(s.x - inst.r1, M) == 0 && mod(s.y - inst.r2, M) == 0 &&
         mod(s.z, M) == 0 && mod(s.w, M) == 0;
}

bool Box::contains(const BigInt& a, const BigInt& b) const {
  return abs(a) <= x1 && abs(b) <= x2;
}

Vec2 CandidateForm::coset_point(const BigInt& x1, const BigInt& x2) const {
  return u0 + x1 * u1 + x2 * u2;
}

BigInt CandidateForm::value(const BigInt& x1, const BigInt& x2) const {
  return u0p - x1 * u1p - x2 * u2p - norm2(coset_point(x1, x2));
}

namespace {

void validate(const FourSquaresInstance& inst) {
  if (inst.N < 0) throw InvalidArgument("four squares: N must be >= 0");
  if (inst.M < 2) throw InvalidArgument("four squares: M must be >= 2");
  if (mod(inst.r1 * inst.r1 + inst.r2 * inst.r2 - inst.N, inst.M) != 0)
    throw InvalidArgument("four squares: r1^2 + r2^2 != N (mod M)");
}

BigInt exact_div(const BigInt& n, const BigInt& d) {
  if (mod(n, d) != 0) throw InternalError("four squares: inexact division");
  BigInt out;
  mpz_divexact(out.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return out;
}

// floor(c * sqrt(N / (4 M^2 |u|^2)))
BigInt box_extent(const BigInt& N, const BigInt& M, const Vec2& u,
                  unsigned long c) {
  const BigInt den = 4 * M * M * norm2(u);
  return isqrt(floor_div(c * c * N, den));
}

}  // namespace

CandidateForm build_form(const FourSquaresInstance& inst) {
  validate(inst);
  CandidateForm f;
  f.N = inst.N;
  f.M = inst.M;
  f.r1 = centered_mod(inst.r1, inst.M);
  f.r2 = centered_mod(inst.r2, inst.M);
  if (mod(f.r1, f.M) == 0 && mod(f.r2, f.M) == 0)
    throw InvalidArgument("build_form: (r1, r2) = (0, 0) mod M");
  f.k = exact_div(f.N - f.r1 * f.r1 - f.r2 * f.r2, f.M);

  const BigInt c1 = 2 * f.r1, c2 = 2 * f.r2;
  const lattice2::LatticeBasis2 hnf = lattice2::congruence_lattice(c1, c2, f.M);
  const lattice2::LatticeBasis2 red = lattice2::gauss_reduce(hnf.u1, hnf.u2);
  f.u1 = red.u1;
  f.u2 = red.u2;

  // Particular solution of c1 t1 + c2 t2 = k (mod M).
  BigInt g1, s1, s2, g, a, b;
  mpz_gcdext(g1.get_mpz_t(), s1.get_mpz_t(), s2.get_mpz_t(), c1.get_mpz_t(),
             c2.get_mpz_t());
  mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), g1.get_mpz_t(),
             f.M.get_mpz_t());
  if (mod(f.k, g) != 0)
    throw Infeasible("build_form: linear congruence has no solution");
  const BigInt scale = (f.k / g) * a;
  const Vec2 particular{scale * s1, scale * s2};
  f.u0 = lattice2::shortest_coset_vector(red, particular);

  f.u0p = exact_div(f.k - c1 * f.u0.a - c2 * f.u0.b, f.M);
  f.u1p = exact_div(c1 * f.u1.a + c2 * f.u1.b, f.M);
  f.u2p = exact_div(c1 * f.u2.a + c2 * f.u2.b, f.M);

  f.boxA = box_extent(f.N, f.M, f.u1, 1);
  f.boxB = box_extent(f.N, f.M, f.u2, 1) - 1;
  f.box5A = box_extent(f.N, f.M, f.u1, 5);
  f.box5B = box_extent(f.N, f.M, f.u2, 5) - 5;
  return f;
}

bool CandidateStream::Later::operator()(const Entry& a, const Entry& b) const {
  if (a.norm != b.norm) return a.norm > b.norm;
  if (a.x1 != b.x1) return a.x1 > b.x1;
  return a.x2 > b.x2;
}

CandidateStream::CandidateStream(CandidateForm form, std::optional<Box> include,
                                 std::optional<Box> exclude)
    : form_(std::move(form)),
      include_(std::move(include)),
      exclude_(std::move(exclude)) {
  const BigInt& M = form_.M;
  Mu1_ = M * form_.u1;
  R_ = {form_.r1, form_.r2};
  if (exclude_ && (exclude_->x1 < 0 || exclude_->x2 < 0)) exclude_.reset();

  // Rows with a real solution in x1: |cross(u1, P)| <= |u1| sqrt(N) where
  // P = M t + R and cross(u1, P) = x2 M det + cross(u1, M u0 + R).
  const BigInt mdet = M * cross(form_.u1, form_.u2);
  const BigInt c0 = cross(form_.u1, M * form_.u0 + R_);
  const BigInt S = isqrt(norm2(form_.u1) * form_.N);
  if (mdet > 0) {
    x2_lo_ = ceil_div(-S - c0, mdet);
    x2_hi_ = floor_div(S - c0, mdet);
  } else {
    x2_lo_ = ceil_div(S - c0, mdet);
    x2_hi_ = floor_div(-S - c0, mdet);
  }
  if (include_) {
    x2_lo_ = std::max(x2_lo_, BigInt(-include_->x2));
    x2_hi_ = std::min(x2_hi_, include_->x2);
    if (include_->x1 < 0) x2_hi_ = x2_lo_ - 1;
  }
  if (x2_lo_ > x2_hi_) {
    next_mag_ = 1;
    max_mag_ = 0;
    return;
  }
  if (x2_lo_ <= 0 && x2_hi_ >= 0)
    next_mag_ = 0;
  else
    next_mag_ = x2_lo_ > 0 ? x2_lo_ : BigInt(-x2_hi_);
  max_mag_ = std::max(BigInt(abs(x2_lo_)), BigInt(abs(x2_hi_)));
}

void CandidateStream::activate(const BigInt& x2) {
  if (x2 < x2_lo_ || x2 > x2_hi_) return;
  const Vec2 W = form_.M * (form_.u0 + x2 * form_.u2) + R_;
  const BigInt n1 = norm2(form_.u1);
  const BigInt disc = n1 * form_.N - BigInt(cross(form_.u1, W) * cross(form_.u1, W));
  if (disc < 0) return;
  auto inside = [&](const BigInt& x1) {
    return norm2(x1 * Mu1_ + W) <= form_.N;
  };
  const BigInt den = form_.M * n1;
  const BigInt b = dot(form_.u1, W);
  const BigInt s = isqrt(disc);
  BigInt lo = floor_div(-b - s - 1, den);
  BigInt hi = ceil_div(-b + s + 1, den);
  while (lo <= hi && !inside(lo)) ++lo;
  while (hi >= lo && !inside(hi)) --hi;
  if (lo > hi) return;
  if (include_) {
    lo = std::max(lo, BigInt(-include_->x1));
    hi = std::min(hi, include_->x1);
  }
  auto add = [&](const BigInt& a, const BigInt& z) {
    if (a > z) return;
    const BigInt c = std::clamp(BigInt(0), a, z);
    rows_.push_back({x2, a, z, c, c + 1});
    push_next(rows_.size() - 1);
  };
  if (exclude_ && abs(x2) <= exclude_->x2) {
    add(lo, std::min(hi, BigInt(-exclude_->x1 - 1)));
    add(std::max(lo, BigInt(exclude_->x1 + 1)), hi);
  } else {
    add(lo, hi);
  }
}

void CandidateStream::push_next(std::size_t row) {
  Interval& r = rows_[row];
  const bool has_left = r.left >= r.lo;
  const bool has_right = r.right <= r.hi;
  if (!has_left && !has_right) return;
  BigInt x1;
  if (has_left && (!has_right || abs(r.left) <= abs(r.right))) {
    x1 = r.left;
    --r.left;
  } else {
    x1 = r.right;
    ++r.right;
  }
  heap_.push({x1 * x1 + r.x2 * r.x2, x1, r.x2, row});
}

std::optional<Candidate> CandidateStream::next() {
  while (next_mag_ <= max_mag_ &&
         (heap_.empty() || next_mag_ * next_mag_ <= heap_.top().norm)) {
    if (next_mag_ != 0) activate(-next_mag_);
    activate(next_mag_);
    ++next_mag_;
  }
  if (heap_.empty()) return std::nullopt;
  Entry e = heap_.top();
  heap_.pop();
  push_next(e.row);
  Candidate c{e.x1, e.x2, form_.value(e.x1, e.x2)};
  if (c.value < 0) throw InternalError("candidate stream: negative F");
  return c;
}

CandidateStream enumerate_candidates(const CandidateForm& form, Region region) {
  switch (region) {
    case Region::C:
      return CandidateStream(form, form.C(), std::nullopt);
    case Region::FiveC:
      return CandidateStream(form, form.five_C(), std::nullopt);
    case Region::All:
      break;
  }
  return CandidateStream(form, std::nullopt, std::nullopt);
}

namespace {

// (1+i)^s has norm 2^s.
std::pair<BigInt, BigInt> power_of_two_pair(unsigned long s) {
  const BigInt h = pow(BigInt(2), s / 2);
  return s % 2 == 0 ? std::pair{h, BigInt(0)} : std::pair{h, h};
}

TwoSquaresResult fast_two_squares(const BigInt& F) {
  if (F == 0) return {TwoSquaresStatus::Found, 0, 0};
  const unsigned long s = mpz_scan1(F.get_mpz_t(), 0);
  BigInt m;
  mpz_fdiv_q_2exp(m.get_mpz_t(), F.get_mpz_t(), s);
  auto [a, b] = power_of_two_pair(s);
  if (m == 1) return {TwoSquaresStatus::Found, a, b};
  if (mod(m, BigInt(4)) == 3) return {TwoSquaresStatus::Absent, 0, 0};
  if (!ntheory::is_prime(m)) return {TwoSquaresStatus::Unknown, 0, 0};
  auto [c, d] = ntheory::two_squares_prime(m);
  ntheory::GaussInt z = ntheory::GaussInt{a, b} * ntheory::GaussInt{c, d};
  return {TwoSquaresStatus::Found, abs(z.re), abs(z.im)};
}

TwoSquaresResult admit(const BigInt& F, bool fast,
                       const ntheory::FactorBudget& budget) {
  return fast ? fast_two_squares(F) : ntheory::two_squares(F, budget);
}

// The unconstrained form h - x1^2 - x2^2 over Z^2.
CandidateForm free_form(const BigInt& h) {
  CandidateForm f;
  f.N = h;
  f.M = 1;
  f.r1 = f.r2 = f.k = 0;
  f.u0 = {0, 0};
  f.u1 = {1, 0};
  f.u2 = {0, 1};
  f.u0p = h;
  f.u1p = f.u2p = 0;
  f.boxA = box_extent(h, 1, f.u1, 1);
  f.boxB = f.boxA - 1;
  f.box5A = box_extent(h, 1, f.u1, 5);
  f.box5B = f.box5A - 5;
  return f;
}

SolveResult finish(const FourSquaresInstance& inst, SolveResult r) {
  if (r.status == SolveStatus::Found && !is_valid_solution(inst, r.solution))
    throw InternalError("four squares: assembled solution is invalid");
  return r;
}

}  // namespace

SolveResult solve(const FourSquaresInstance& inst) {
  validate(inst);
  const bool fast = uses_fast_path(inst);
  const BigInt& M = inst.M;
  SolveResult result;
  SolveStats& st = result.stats;

  auto over_budget = [&]() {
    if (inst.budget.max_candidates != 0 &&
        st.candidates > inst.budget.max_candidates) {
      st.budget_exhausted = true;
      return true;
    }
    return false;
  };
  auto record = [&](const TwoSquaresResult& ts) {
    if (ts.status == TwoSquaresStatus::Absent) ++st.certified_absent;
    if (ts.status == TwoSquaresStatus::Unknown) ++st.undecided;
  };

  if (mod(inst.r1, M) == 0 && mod(inst.r2, M) == 0) {
    // Every coordinate is divisible by M.
    if (mod(inst.N, M * M) != 0) {
      result.status = SolveStatus::Absent;
      return result;
    }
    const BigInt h = inst.N / (M * M);
    CandidateStream stream(free_form(h), std::nullopt, std::nullopt);
    while (auto c = stream.next()) {
      ++st.candidates;
      if (over_budget()) break;
      const TwoSquaresResult ts = admit(c->value, fast, inst.budget.factor);
      record(ts);
      if (ts.status == TwoSquaresStatus::Found) {
        result.status = SolveStatus::Found;
        result.solution = {M * ts.x, M * ts.y, M * c->x1, M * c->x2};
        return finish(inst, result);
      }
    }
    result.status =
        st.undecided == 0 && !st.budget_exhausted && st.candidates > 0
            ? SolveStatus::Absent
            : SolveStatus::Unknown;
    return result;
  }

  CandidateForm form;
  try {
    form = build_form(inst);
  } catch (const Infeasible&) {
    result.status = SolveStatus::Absent;
    return result;
  }
  const Box C = form.C(), FC = form.five_C();

  for (int pass = 0; pass < 2; ++pass) {
    CandidateStream stream = pass == 0
                                 ? CandidateStream(form, C, std::nullopt)
                                 : CandidateStream(form, std::nullopt, C);
    while (auto c = stream.next()) {
      ++st.candidates;
      if (over_budget()) return result;
      if (pass == 1 && !FC.contains(c->x1, c->x2)) ++st.outside_five_c;
      const TwoSquaresResult ts = admit(c->value, fast, inst.budget.factor);
      record(ts);
      if (ts.status != TwoSquaresStatus::Found) continue;
      const Vec2 t = form.coset_point(c->x1, c->x2);
      result.status = SolveStatus::Found;
      result.solution = {M * t.a + form.r1, M * t.b + form.r2, M * ts.x,
                         M * ts.y};
      st.found_in_C = pass == 0;
      return finish(inst, result);
    }
  }
  result.status =
      st.undecided == 0 ? SolveStatus::Absent : SolveStatus::Unknown;
  return result;
}

}  // namespace lpsnav::foursquares
