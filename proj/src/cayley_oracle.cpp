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

#include "lpsnav/cayley_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace lpsnav::cayley {

namespace {

using Mat = std::array<std::uint32_t, 4>;

std::uint32_t pack(const Mat& m, std::uint32_t q) {
  return ((m[0] * q + m[1]) * q + m[2]) * q + m[3];
}

// Canonical form with small-integer tables: scale to determinant 1 (or the
// least non-residue), then fix the sign of the first nonzero entry.
class SmallPgl {
 public:
  explicit SmallPgl(std::uint32_t q) : q_(q), inv_(q, 0), root_(q, 0) {
    std::vector<bool> square(q, false);
    for (std::uint64_t x = 1; x < q; ++x) {
      const std::uint32_t s = static_cast<std::uint32_t>(x * x % q);
      if (!square[s]) {
        square[s] = true;
        root_[s] = static_cast<std::uint32_t>(x);
      }
      for (std::uint64_t y = 1; y < q && inv_[x] == 0; ++y)
        if (x * y % q == 1) inv_[x] = static_cast<std::uint32_t>(y);
    }
    nu_ = 2;
    while (square[nu_]) ++nu_;
    for (std::uint32_t d = 1; d < q; ++d)
      if (!square[d]) root_[d] = root_[mulmod(d, inv_[nu_])];
  }

  Mat canonical(Mat m) const {
    const std::uint32_t det =
        (mulmod(m[0], m[3]) + q_ - mulmod(m[1], m[2])) % q_;
    if (det == 0) throw InternalError("cayley: singular matrix");
    if (det != 1 && det != nu_) {
      const std::uint32_t s = inv_[root_[det]];
      for (auto& e : m) e = mulmod(e, s);
    }
    const std::uint32_t lead = m[0] != 0 ? m[0] : m[1] != 0 ? m[1] : m[2];
    if (lead > (q_ - 1) / 2)
      for (auto& e : m) e = e == 0 ? 0 : q_ - e;
    return m;
  }

  Mat mul(const Mat& a, const Mat& b) const {
    auto f = [this](std::uint32_t x, std::uint32_t y, std::uint32_t z,
                    std::uint32_t w) { return (mulmod(x, y) + mulmod(z, w)) % q_; };
    return canonical({f(a[0], b[0], a[1], b[2]), f(a[0], b[1], a[1], b[3]),
                      f(a[2], b[0], a[3], b[2]), f(a[2], b[1], a[3], b[3])});
  }

 private:
  std::uint32_t mulmod(std::uint64_t x, std::uint64_t y) const {
    return static_cast<std::uint32_t>(x * y % q_);
  }

  std::uint32_t q_;
  std::uint32_t nu_ = 0;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> root_;  // square root of d, or of d / nu
};

Mat to_mat(const PslElement& e) {
  return {static_cast<std::uint32_t>(e.m11.get_ui()),
          static_cast<std::uint32_t>(e.m12.get_ui()),
          static_cast<std::uint32_t>(e.m21.get_ui()),
          static_cast<std::uint32_t>(e.m22.get_ui())};
}

}  // namespace

std::uint32_t CayleyGraph::find(const PslElement& e) const {
  auto it = index.find(pack(to_mat(e), q));
  if (it == index.end()) throw InvalidArgument("cayley: element not a vertex");
  return it->second;
}

CayleyGraph build_graph(const GraphParams& G, std::uint32_t max_q) {
  if (G.q > max_q)
    throw InvalidArgument("build_graph: q exceeds the size guard");
  CayleyGraph g;
  g.p = static_cast<std::uint32_t>(G.p.get_ui());
  g.q = static_cast<std::uint32_t>(G.q.get_ui());
  g.degree = G.gens.size();
  const std::uint32_t q = g.q;

  const SmallPgl pgl(q);
  std::vector<Mat> gens;
  for (const auto& s : G.gens.gens) {
    const PslElement e = G.group.from_quat(s);
    if ((G.group.determinant(e) == 1) == G.bipartite)
      throw InternalError("build_graph: generator determinant class");
    gens.push_back(to_mat(e));
  }

  std::size_t order =
      static_cast<std::size_t>(q) * (static_cast<std::size_t>(q) * q - 1);
  if (!G.bipartite) order /= 2;
  g.vertices.reserve(order);
  g.index.reserve(order);
  const Mat id = to_mat(G.group.identity());
  g.vertices.push_back(id);
  g.index.emplace(pack(id, q), 0);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    for (std::size_t s = 0; s < g.degree; ++s) {
      const Mat n = pgl.mul(gens[s], g.vertices[v]);
      auto [it, inserted] = g.index.emplace(
          pack(n, q), static_cast<std::uint32_t>(g.vertices.size()));
      if (inserted) g.vertices.push_back(n);
      g.adjacency.push_back(it->second);
    }
  }

  if (g.vertices.size() != order)
    throw InternalError("build_graph: vertex count differs from the group order");
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    std::set<std::uint32_t> seen;
    for (std::size_t s = 0; s < g.degree; ++s) {
      const std::uint32_t n = g.neighbor(v, s);
      if (n == v) throw InternalError("build_graph: self-loop");
      if (!seen.insert(n).second) throw InternalError("build_graph: multi-edge");
      if (g.neighbor(n, G.gens.inverse[s]) != v)
        throw InternalError("build_graph: edge without its reverse");
    }
  }
  return g;
}

std::vector<int> bfs_distances(const CayleyGraph& graph, std::uint32_t source) {
  std::vector<int> dist(graph.size(), kUnreached);
  std::deque<std::uint32_t> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < graph.degree; ++s) {
      const std::uint32_t n = graph.neighbor(v, s);
      if (dist[n] == kUnreached) {
        dist[n] = dist[v] + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

std::vector<DiagonalEntry> diagonal_vertices(const CayleyGraph& graph,
                                             const GraphParams& G) {
  const std::uint32_t q = graph.q;
  std::vector<DiagonalEntry> out;
  std::set<std::uint32_t> seen;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      if ((static_cast<std::uint64_t>(a) * a + static_cast<std::uint64_t>(b) * b) % q != 1)
        continue;
      const std::uint32_t v = graph.find(G.group.from_quat({a, b, 0, 0}));
      if (seen.insert(v).second) out.push_back({a, b, v});
    }
  }
  return out;
}

Census diagonal_distance_census(const CayleyGraph& graph, const GraphParams& G,
                                const std::vector<int>& dist,
                                const navigator::NavConfig& cfg) {
  Census c;
  const auto diag = diagonal_vertices(graph, G);
  int max_d = 0;
  for (const auto& e : diag) max_d = std::max(max_d, dist.at(e.vertex));
  c.threshold = navigator::predicted_bounds(G, {1, 0}, cfg).typical_bound;
  const long h_top = std::max<long>(max_d + 1, c.threshold + 2);
  c.at_least.assign(h_top + 1, 0);
  for (const auto& e : diag)
    for (long h = 0; h <= dist[e.vertex]; ++h) ++c.at_least[h];
  const double q4 = std::pow(static_cast<double>(graph.q), 4);
  for (long h = 0; h <= h_top; ++h) {
    c.bound.push_back(89.0 * q4 / std::pow(static_cast<double>(graph.p), h - 1));
    if (h > c.threshold && static_cast<double>(c.at_least[h]) > c.bound[h])
      c.violations.push_back(h);
  }
  return c;
}

}  // namespace lpsnav::cayley
