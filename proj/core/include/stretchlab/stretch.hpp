#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stretchlab/model.hpp"

namespace stretchlab {

// All-pairs shortest-path lengths under Euclidean edge weights; +infinity
// marks unreachable pairs.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> dist;  // row-major n x n

  double at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return dist[i * n + j]; }
};

// Stretch factor of one instance: the maximum over distinct vertex pairs of
// shortest-path distance over Euclidean distance, undefined when the graph
// is disconnected. Adjacent pairs contribute exactly 1 (the edge IS the
// straight line), so the maximization scans non-adjacent pairs and floors at
// 1; the all-adjacent case reports pair (0,1) by the lexicographic tie rule.
struct StretchReport {
  bool defined = false;
  double value = 0.0;
  std::uint32_t pair_i = 0;
  std::uint32_t pair_j = 0;
  double d_graph = 0.0;
  double d_euclid = 0.0;
};

bool is_connected(const EmbeddedGraph& g);

// Single-source shortest paths (nonnegative weights). Uses a binary-heap
// frontier for sparse graphs and a flat array-scan variant once the mean
// degree reaches n/8. Throws std::invalid_argument for a bad source.
std::vector<double> sssp(const EmbeddedGraph& g, std::size_t source);

DistanceMatrix apsp(const EmbeddedGraph& g);

// Exact stretch factor. Throws std::invalid_argument for n < 2 and
// std::logic_error if two distinct vertices coincide (the generator resamples
// those away; seeing one here means a corrupted instance). Ties in the argmax
// are broken toward the lexicographically smallest pair.
StretchReport stretch_factor(const EmbeddedGraph& g);

// Independent verification oracle: Floyd-Warshall plus a direct full-pair
// scan, sharing no shortest-path code with stretch_factor.
StretchReport oracle_stretch(const EmbeddedGraph& g);

// Pairs whose shortest-path distance exceeds (2*lambda + 1) times their
// Euclidean distance. dm must be apsp(g). Unreachable pairs (infinite
// distance) always qualify.
std::vector<std::pair<std::uint32_t, std::uint32_t>> bad_pairs(
    const EmbeddedGraph& g, double lambda, const DistanceMatrix& dm);

// Number of vertices adjacent to both u and v.
std::size_t common_neighbours(const EmbeddedGraph& g, std::size_t u,
                              std::size_t v);

}  // namespace stretchlab
