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

#include "sangernet/topology.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "sangernet/error.h"

namespace sangernet {

Graph::Graph(int nodes, std::vector<Edge> edges)
    : nodes_(nodes), adjacency_(static_cast<std::size_t>(std::max(nodes, 0))) {
  if (nodes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs at least one node");
  }
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= nodes || j >= nodes) {
      throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (i == j) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self loops are not edges; self weights live in W");
    }
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [i, j] : edges_) {
    adjacency_[static_cast<std::size_t>(i)].push_back(j);
    adjacency_[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  out << nodes_ << '\n';
  for (const auto& [i, j] : edges_) out << i << ' ' << j << '\n';
  return out.str();
}

Graph Graph::from_edge_list(const std::string& text) {
  std::istringstream in(text);
  int nodes = 0;
  if (!(in >> nodes)) {
    throw Error(ErrorCode::kInvalidArgument, "edge list: missing node count");
  }
  std::vector<Edge> edges;
  int i = 0;
  int j = 0;
  while (in >> i) {
    if (!(in >> j)) {
      throw Error(ErrorCode::kInvalidArgument, "edge list: dangling endpoint");
    }
    edges.emplace_back(i, j);
  }
  if (!in.eof()) {
    throw Error(ErrorCode::kInvalidArgument, "edge list: non-integer token");
  }
  return Graph(nodes, std::move(edges));
}

Graph erdos_renyi(int nodes, double p, std::uint64_t seed) {
  if (nodes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Erdos-Renyi graph needs M >= 2");
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "edge probability must lie in (0, 1]");
  }
  Rng rng(seed, kGraphStream);
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Graph::Edge> edges;
    for (int i = 0; i < nodes; ++i) {
      for (int j = i + 1; j < nodes; ++j) {
        if (rng.uniform() < p) edges.emplace_back(i, j);
      }
    }
    Graph g(nodes, std::move(edges));
    if (is_connected(g)) return g;
  }
  throw Error(ErrorCode::kGenerationFailure,
              "no connected Erdos-Renyi sample within 1000 attempts");
}

Graph cycle(int nodes) {
  if (nodes < 3) throw Error(ErrorCode::kInvalidArgument, "cycle needs M >= 3");
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < nodes; ++i) edges.emplace_back(i, (i + 1) % nodes);
  return Graph(nodes, std::move(edges));
}

Graph star(int nodes) {
  if (nodes < 2) throw Error(ErrorCode::kInvalidArgument, "star needs M >= 2");
  std::vector<Graph::Edge> edges;
  for (int i = 1; i < nodes; ++i) edges.emplace_back(0, i);
  return Graph(nodes, std::move(edges));
}

Graph complete(int nodes) {
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) edges.emplace_back(i, j);
  }
  return Graph(nodes, std::move(edges));
}

bool is_connected(const Graph& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.nodes()), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : g.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == g.nodes();
}

double beta(const Matrix& weights) {
  if (weights.rows() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(weights, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();  // ascending
  const Eigen::Index m = ev.size();
  return std::max(std::abs(ev(m - 2)), std::abs(ev(0)));
}

MixingMatrix::MixingMatrix(Matrix weights) : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols() || weights_.rows() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "mixing matrix must be square");
  }
  if (max_abs(weights_ - weights_.transpose()) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "mixing matrix must be symmetric");
  }
  if (weights_.minCoeff() < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "mixing weights must be nonnegative");
  }
  const Vector row_sums = weights_.rowwise().sum();
  if ((row_sums.array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "mixing matrix rows must sum to 1");
  }
  beta_ = sangernet::beta(weights_);
}

MixingMatrix metropolis_weights(const Graph& g) {
  if (!is_connected(g)) {
    throw Error(ErrorCode::kDisconnectedGraph,
                "Metropolis weights require a connected graph");
  }
  const int m = g.nodes();
  Matrix w = Matrix::Zero(m, m);
  for (const auto& [i, j] : g.edges()) {
    const double v = 1.0 / (1.0 + std::max(g.degree(i), g.degree(j)));
    w(i, j) = v;
    w(j, i) = v;
  }
  for (int i = 0; i < m; ++i) w(i, i) = 1.0 - w.row(i).sum();
  return MixingMatrix(std::move(w));
}

}  // namespace sangernet
