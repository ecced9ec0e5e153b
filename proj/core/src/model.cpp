#include "stretchlab/model.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_set>

#include "stretchlab/rng.hpp"

namespace stretchlab {

void validate(const ModelParams& params) {
  if (params.n < 1) throw std::invalid_argument("model: n must be >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw std::invalid_argument("model: p must lie in [0,1]");
  }
}

void EmbeddedGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= n() || j >= n() || i == j) {
    throw std::invalid_argument("add_edge: bad vertex pair");
  }
  if (!adj.get(i, j)) {
    adj.set(i, j);
    ++edge_count;
  }
}

namespace {

std::uint64_t point_key(const Point& p) {
  const auto bx = std::bit_cast<std::uint64_t>(p.x);
  const auto by = std::bit_cast<std::uint64_t>(p.y);
  return bx ^ (by * 0x9e3779b97f4a7c15ULL + 0x7f4a7c159e3779b9ULL);
}

}  // namespace

std::vector<Point> generate_points(const ModelParams& params) {
  return generate_points(params, params.n);
}

std::vector<Point> generate_points(const ModelParams& params,
                                   std::uint64_t count) {
  validate(params);
  if (count > params.n) {
    throw std::invalid_argument("generate_points: count exceeds n");
  }
  std::vector<Point> points;
  points.reserve(count);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count * 2);
  for (std::uint64_t i = 0; i < count; ++i) {
    Xoshiro256PlusPlus rng(derive_seed(params.seed, stream::kPoint, i));
    Point p = sample_point(rng);
    // coincidence with an earlier point: keep drawing from this vertex's own
    // stream (astronomically rare; keeps distances over distinct vertices
    // strictly positive)
    while (!seen.insert(point_key(p)).second) {
      bool duplicate = false;
      for (std::uint64_t j = 0; j < i; ++j) {
        if (points[j].x == p.x && points[j].y == p.y) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) break;  // hash-key collision only, point itself is new
      p = sample_point(rng);
    }
    points.push_back(p);
  }
  return points;
}

void assign_bernoulli_edges(EmbeddedGraph& g) {
  const std::size_t n = g.n();
  Xoshiro256PlusPlus rng(derive_seed(g.params.seed, stream::kEdge));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(g.params.p)) {
        g.adj.set(i, j);
        ++g.edge_count;
      }
    }
  }
}

EmbeddedGraph generate(const ModelParams& params) {
  validate(params);
  EmbeddedGraph g;
  g.params = params;
  g.points = generate_points(params);
  g.adj = BitMatrix(g.points.size());
  assign_bernoulli_edges(g);
  return g;
}

EmbeddedGraph from_points_edges(
    const ModelParams& params, std::vector<Point> points,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  if (points.size() != params.n) {
    throw std::invalid_argument("from_points_edges: |points| != n");
  }
  EmbeddedGraph g;
  g.params = params;
  g.points = std::move(points);
  g.adj = BitMatrix(g.points.size());
  for (const auto& [i, j] : edges) {
    if (i >= g.n() || j >= g.n() || i == j) {
      throw std::invalid_argument("from_points_edges: bad edge");
    }
    if (g.adj.get(i, j)) {
      throw std::invalid_argument("from_points_edges: duplicate edge");
    }
    g.adj.set(i, j);
    ++g.edge_count;
  }
  return g;
}

double edge_weight(const EmbeddedGraph& g, std::size_t i, std::size_t j) {
  if (i >= g.n() || j >= g.n() || i == j) {
    throw std::invalid_argument("edge_weight: bad vertex pair");
  }
  if (!g.adjacent(i, j)) {
    throw std::invalid_argument("edge_weight: vertices not adjacent");
  }
  return euclid(g.points[i], g.points[j]);
}

}  // namespace stretchlab
