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

#ifndef LPSNAV_CAYLEY_ORACLE_HPP
#define LPSNAV_CAYLEY_ORACLE_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lpsnav/navigator.hpp"
#include "lpsnav/quaternion.hpp"

namespace lpsnav::cayley {

using navigator::GraphParams;
using quaternion::PslElement;

/// Explicit X_{p,q}. Vertex 0 is the identity; edge g leads from v to g v.
struct CayleyGraph {
  std::uint32_t p = 0, q = 0;
  std::size_t degree = 0;
  std::vector<std::array<std::uint32_t, 4>> vertices;  // canonical entries
  std::vector<std::uint32_t> adjacency;  // vertex * degree + generator
  std::unordered_map<std::uint32_t, std::uint32_t> index;

  std::size_t size() const { return vertices.size(); }
  std::uint32_t neighbor(std::uint32_t v, std::size_t g) const {
    return adjacency[v * degree + g];
  }
  /// Index of a canonical element; throws InvalidArgument if absent.
  std::uint32_t find(const PslElement& e) const;
};

/// Builds the graph by breadth-first closure from the identity and checks
/// order q(q^2-1)/2 (q(q^2-1) when bipartite), (p+1)-regularity, no loops or multi-edges and edge
/// symmetry. Throws InvalidArgument when q > max_q, InternalError when an
/// invariant fails.
CayleyGraph build_graph(const GraphParams& G, std::uint32_t max_q = 200);

constexpr int kUnreached = -1;

std::vector<int> bfs_distances(const CayleyGraph& graph, std::uint32_t source);

struct DiagonalEntry {
  std::uint32_t a, b;  // a^2 + b^2 = 1, one of each +- pair
  std::uint32_t vertex;
};

/// The (q-1)/2 diagonal vertices diag(a+ib, a-ib), a^2 + b^2 = 1.
std::vector<DiagonalEntry> diagonal_vertices(const CayleyGraph& graph,
                                             const GraphParams& G);

struct Census {
  std::vector<std::uint64_t> at_least;  // [h] = #diagonal vertices at d >= h
  long threshold = 0;                   // ceiling of the typical bound
  std::vector<double> bound;            // [h] = 89 q^4 / p^(h-1)
  std::vector<long> violations;         // h > threshold with count > bound
};

Census diagonal_distance_census(const CayleyGraph& graph, const GraphParams& G,
                                const std::vector<int>& dist_from_identity,
                                const navigator::NavConfig& cfg);

}  // namespace lpsnav::cayley

#endif  // LPSNAV_CAYLEY_ORACLE_HPP
