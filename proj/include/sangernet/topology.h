// Copyright 2026 The sangernet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SANGERNET_TOPOLOGY_H_
#define SANGERNET_TOPOLOGY_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sangernet/linalg.h"

namespace sangernet {

// Undirected simple graph on nodes 0..M-1. Edges are stored once as (i, j)
// with i < j, sorted and deduplicated.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  explicit Graph(int nodes, std::vector<Edge> edges = {});

  int nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int node) const {
    return adjacency_[static_cast<std::size_t>(node)];
  }
  int degree(int node) const {
    return static_cast<int>(neighbors(node).size());
  }
  bool has_edge(int i, int j) const;

  // "M\n" followed by one "i j" line per edge.
  std::string to_edge_list() const;
  static Graph from_edge_list(const std::string& text);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  int nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// Each pair is kept independently with probability p; the draw is repeated
// until the graph is connected (at most 1000 attempts).
Graph erdos_renyi(int nodes, double p, std::uint64_t seed);
Graph cycle(int nodes);
Graph star(int nodes);  // node 0 is the hub
Graph complete(int nodes);

bool is_connected(const Graph& g);

// Symmetric doubly stochastic weight matrix together with its consensus
// contraction factor beta = max(|lambda_2|, |lambda_M|).
class MixingMatrix {
 public:
  // Validates symmetry and unit row sums (1e-12) and nonnegative entries.
  explicit MixingMatrix(Matrix weights);

  const Matrix& weights() const { return weights_; }
  int nodes() const { return static_cast<int>(weights_.rows()); }
  double beta() const { return beta_; }
  double min_self_weight() const { return weights_.diagonal().minCoeff(); }

 private:
  Matrix weights_;
  double beta_;
};

// w_ij = 1 / (1 + max(deg_i, deg_j)) on edges, w_ii = 1 - sum_j w_ij.
// Throws kDisconnectedGraph for a disconnected input.
MixingMatrix metropolis_weights(const Graph& g);

// Second-largest eigenvalue magnitude of a symmetric weight matrix.
double beta(const Matrix& weights);
inline double beta(const MixingMatrix& w) { return w.beta(); }

}  // namespace sangernet

#endif  // SANGERNET_TOPOLOGY_H_
