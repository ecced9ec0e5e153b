#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stretchlab/geom.hpp"

namespace stretchlab {

// Parameters of the randomly embedded random graph: n uniform points in the
// unit square, each pair joined independently with probability p, edge weight
// equal to Euclidean distance.
struct ModelParams {
  std::uint64_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument unless n >= 1 and 0 <= p <= 1.
void validate(const ModelParams& params);

// Packed symmetric n x n adjacency bits. Full matrix, not triangular: pair
// queries are O(1) from either side and a row scan walks 64 vertices per
// word, which the dense shortest-path variant relies on.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), row_words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

  std::size_t size() const { return n_; }
  std::size_t row_words() const { return row_words_; }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * row_words_ + (j >> 6)] >> (j & 63)) & 1u;
  }

  // Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j) {
    bits_[i * row_words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    bits_[j * row_words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
  }

  std::uint64_t row_word(std::size_t i, std::size_t w) const {
    return bits_[i * row_words_ + w];
  }

 private:
  std::size_t n_ = 0;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// An embedded instance. Treated as immutable once shared: every downstream
// computation (shortest paths, stretch, traces) only reads it.
struct EmbeddedGraph {
  ModelParams params;
  std::vector<Point> points;
  BitMatrix adj;
  std::size_t edge_count = 0;

  std::size_t n() const { return points.size(); }

  bool adjacent(std::size_t i, std::size_t j) const { return adj.get(i, j); }

  void add_edge(std::size_t i, std::size_t j);
};

// Draws the full instance for params: points first (sub-stream per vertex),
// then one Bernoulli(p) per pair (i,j), i<j, in lexicographic order from the
// dedicated edge sub-stream. Coincident points are resampled: if a point
// bit-identically equals an earlier one, the later-indexed vertex keeps
// drawing from its own sub-stream until distinct.
EmbeddedGraph generate(const ModelParams& params);

// Point placement half of generate(); exposed so alternate construction
// processes can reuse the exact edge phase below on their own embeddings.
std::vector<Point> generate_points(const ModelParams& params);

// First `count` vertices of the same embedding (identical sub-streams, so a
// full generate() run agrees on this prefix).
std::vector<Point> generate_points(const ModelParams& params,
                                   std::uint64_t count);

// Edge phase of generate(): fills g.adj with Bernoulli(g.params.p) draws in
// pair order from the kEdge sub-stream of g.params.seed.
void assign_bernoulli_edges(EmbeddedGraph& g);

// Builds a graph from explicit geometry and an edge list (i<j pairs);
// validates ranges and rejects self-loops and duplicates.
EmbeddedGraph from_points_edges(
    const ModelParams& params, std::vector<Point> points,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

// Weight of an existing edge: euclid of the endpoints. Throws
// std::invalid_argument for out-of-range, equal, or non-adjacent pairs.
double edge_weight(const EmbeddedGraph& g, std::size_t i, std::size_t j);

}  // namespace stretchlab
