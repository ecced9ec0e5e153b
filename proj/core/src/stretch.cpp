#include "stretchlab/stretch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace stretchlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename F>
void for_each_neighbour(const EmbeddedGraph& g, std::size_t u, F&& f) {
  const std::size_t words = g.adj.row_words();
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = g.adj.row_word(u, w);
    while (bits) {
      const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
      bits &= bits - 1;
      f((w << 6) + b);
    }
  }
}

// mean degree 2E/n >= n/8, the cutover where a flat array scan beats a heap
bool use_dense_scan(const EmbeddedGraph& g) {
  const double n = static_cast<double>(g.n());
  return 16.0 * static_cast<double>(g.edge_count) >= n * n;
}

std::vector<double> sssp_heap(const EmbeddedGraph& g, std::size_t source) {
  const std::size_t n = g.n();
  std::vector<double> dist(n, kInf);
  dist[source] = 0.0;
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, static_cast<std::uint32_t>(source));
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;  // stale entry
    for_each_neighbour(g, u, [&](std::size_t v) {
      const double nd = du + euclid(g.points[u], g.points[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, static_cast<std::uint32_t>(v));
      }
    });
  }
  return dist;
}

std::vector<double> sssp_dense(const EmbeddedGraph& g, std::size_t source) {
  const std::size_t n = g.n();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  dist[source] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = n;
    double best = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      if (!done[k] && dist[k] < best) {
        best = dist[k];
        u = k;
      }
    }
    if (u == n) break;  // remaining vertices unreachable
    done[u] = 1;
    for_each_neighbour(g, u, [&](std::size_t v) {
      const double nd = best + euclid(g.points[u], g.points[v]);
      if (nd < dist[v]) dist[v] = nd;
    });
  }
  return dist;
}

// Coincident distinct vertices break stretch ratios (0/0); the generator
// resamples them away, so finding one here means a corrupted instance.
void throw_on_coincident_points(const EmbeddedGraph& g) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(g.n());
  for (const Point& p : g.points) pts.emplace_back(p.x, p.y);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] == pts[i - 1]) {
      throw std::logic_error("stretch: coincident distinct vertices");
    }
  }
}

StretchReport floor_report(const EmbeddedGraph& g) {
  StretchReport rep;
  rep.defined = true;
  rep.value = 1.0;
  rep.pair_i = 0;
  rep.pair_j = 1;
  rep.d_euclid = euclid(g.points[0], g.points[1]);
  rep.d_graph = rep.d_euclid;
  return rep;
}

void consider(StretchReport& rep, double ratio, std::uint32_t i,
              std::uint32_t j, double d_graph, double d_euclid) {
  const bool better =
      ratio > rep.value ||
      (ratio == rep.value &&
       (i < rep.pair_i || (i == rep.pair_i && j < rep.pair_j)));
  if (better) {
    rep.value = ratio;
    rep.pair_i = i;
    rep.pair_j = j;
    rep.d_graph = d_graph;
    rep.d_euclid = d_euclid;
  }
}

// Row-based scan: one shortest-path row per source that still has a later
// non-adjacent partner.
StretchReport stretch_row_based(const EmbeddedGraph& g) {
  const std::size_t n = g.n();
  StretchReport rep = floor_report(g);
  for (std::size_t u = 0; u + 1 < n; ++u) {
    std::size_t adjacent_later = 0;
    const std::size_t words = g.adj.row_words();
    for (std::size_t w = (u + 1) >> 6; w < words; ++w) {
      std::uint64_t bits = g.adj.row_word(u, w);
      if ((w << 6) <= u) bits &= ~((std::uint64_t{2} << (u & 63)) - 1);
      adjacent_later += static_cast<std::size_t>(std::popcount(bits));
    }
    if (adjacent_later == n - 1 - u) continue;  // all later pairs adjacent
    const std::vector<double> row = sssp(g, u);
    for (std::size_t v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      const double d = euclid(g.points[u], g.points[v]);
      if (d == 0.0) throw std::logic_error("stretch: zero distance pair");
      consider(rep, row[v] / d, static_cast<std::uint32_t>(u),
               static_cast<std::uint32_t>(v), row[v], d);
    }
  }
  return rep;
}

// Pair-based scan for dense instances: walk non-adjacent pairs by ascending
// Euclidean distance (big ratios surface early), discard a pair once the
// cheapest two-hop detour through a common neighbour already caps its ratio
// strictly below the incumbent, and solve the few survivors exactly. The
// two-hop length bounds d_graph from above, so discards are sound; the
// (1 - 1e-12) margin keeps exact ties alive for the lexicographic rule.
StretchReport stretch_pair_based(const EmbeddedGraph& g) {
  const std::size_t n = g.n();
  std::vector<double> table(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclid(g.points[i], g.points[j]);
      table[i * n + j] = d;
      table[j * n + i] = d;
    }
  }

  struct Cand {
    double d;
    std::uint32_t i, j;
  };
  std::vector<Cand> cand;
  const std::size_t total_pairs = n * (n - 1) / 2;
  cand.reserve(total_pairs - g.edge_count);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      const double d = table[i * n + j];
      if (d == 0.0) throw std::logic_error("stretch: zero distance pair");
      cand.push_back({d, static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
    if (a.d != b.d) return a.d < b.d;
    return std::pair{a.i, a.j} < std::pair{b.i, b.j};
  });

  StretchReport rep = floor_report(g);
  std::unordered_map<std::uint32_t, std::vector<double>> row_cache;
  const std::size_t words = g.adj.row_words();
  for (const Cand& c : cand) {
    const double prune_at = rep.value * c.d * (1.0 - 1e-12);
    double m2 = kInf;
    bool pruned = false;
    for (std::size_t w = 0; w < words && !pruned; ++w) {
      std::uint64_t bits = g.adj.row_word(c.i, w) & g.adj.row_word(c.j, w);
      while (bits) {
        const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::size_t k = (w << 6) + b;
        const double s = table[c.i * n + k] + table[k * n + c.j];
        if (s < m2) {
          m2 = s;
          if (m2 < prune_at) {
            pruned = true;
            break;
          }
        }
      }
    }
    if (pruned) continue;
    auto it = row_cache.find(c.i);
    if (it == row_cache.end()) {
      if (row_cache.size() >= 256) row_cache.clear();
      it = row_cache.emplace(c.i, sssp(g, c.i)).first;
    }
    const double dg = it->second[c.j];
    consider(rep, dg / c.d, c.i, c.j, dg, c.d);
  }
  return rep;
}

}  // namespace

bool is_connected(const EmbeddedGraph& g) {
  const std::size_t n = g.n();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for_each_neighbour(g, u, [&](std::size_t v) {
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        stack.push_back(static_cast<std::uint32_t>(v));
      }
    });
  }
  return visited == n;
}

std::vector<double> sssp(const EmbeddedGraph& g, std::size_t source) {
  if (source >= g.n()) {
    throw std::invalid_argument("sssp: source out of range");
  }
  return use_dense_scan(g) ? sssp_dense(g, source) : sssp_heap(g, source);
}

DistanceMatrix apsp(const EmbeddedGraph& g) {
  const std::size_t n = g.n();
  DistanceMatrix dm;
  dm.n = n;
  dm.dist.resize(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    const std::vector<double> row = sssp(g, u);
    std::copy(row.begin(), row.end(), dm.dist.begin() + u * n);
  }
  // Opposite rows accumulate the same path in opposite orders and can differ
  // in the last bit; pin the matrix to exact symmetry with the smaller one.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = std::min(dm.at(i, j), dm.at(j, i));
      dm.at(i, j) = m;
      dm.at(j, i) = m;
    }
  }
  return dm;
}

StretchReport stretch_factor(const EmbeddedGraph& g) {
  const std::size_t n = g.n();
  if (n < 2) throw std::invalid_argument("stretch_factor: need n >= 2");
  throw_on_coincident_points(g);
  if (!is_connected(g)) return StretchReport{};  // undefined-disconnected

  const std::size_t total_pairs = n * (n - 1) / 2;
  if (g.edge_count == total_pairs) return floor_report(g);

  const double phat = 2.0 * static_cast<double>(g.edge_count) /
                      (static_cast<double>(n) * static_cast<double>(n - 1));
  if (n >= 32 && n <= 2048 && phat * phat * static_cast<double>(n) >= 20.0) {
    return stretch_pair_based(g);
  }
  return stretch_row_based(g);
}

StretchReport oracle_stretch(const EmbeddedGraph& g) {
  const std::size_t n = g.n();
  if (n < 2) throw std::invalid_argument("oracle_stretch: need n >= 2");
  throw_on_coincident_points(g);

  // Floyd-Warshall on the full matrix; deliberately shares nothing with sssp.
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) {
        const double w = euclid(g.points[i], g.points[j]);
        d[i * n + j] = w;
        d[j * n + i] = w;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (d[j] == kInf) return StretchReport{};  // disconnected
  }

  StretchReport rep;
  rep.defined = true;
  rep.value = 1.0;
  rep.pair_i = 0;
  rep.pair_j = 1;
  rep.d_euclid = euclid(g.points[0], g.points[1]);
  rep.d_graph = rep.d_euclid;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      const double de = euclid(g.points[i], g.points[j]);
      if (de == 0.0) throw std::logic_error("oracle_stretch: zero distance");
      const double ratio = d[i * n + j] / de;
      const bool better =
          ratio > rep.value ||
          (ratio == rep.value &&
           (i < rep.pair_i || (i == rep.pair_i && j < rep.pair_j)));
      if (better) {
        rep.value = ratio;
        rep.pair_i = static_cast<std::uint32_t>(i);
        rep.pair_j = static_cast<std::uint32_t>(j);
        rep.d_graph = d[i * n + j];
        rep.d_euclid = de;
      }
    }
  }
  return rep;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> bad_pairs(
    const EmbeddedGraph& g, double lambda, const DistanceMatrix& dm) {
  if (lambda <= 0.0) throw std::invalid_argument("bad_pairs: lambda <= 0");
  if (dm.n != g.n()) throw std::invalid_argument("bad_pairs: matrix size");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const double factor = 2.0 * lambda + 1.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = i + 1; j < g.n(); ++j) {
      if (dm.at(i, j) > factor * euclid(g.points[i], g.points[j])) {
        out.emplace_back(static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(j));
      }
    }
  }
  return out;
}

std::size_t common_neighbours(const EmbeddedGraph& g, std::size_t u,
                              std::size_t v) {
  if (u >= g.n() || v >= g.n() || u == v) {
    throw std::invalid_argument("common_neighbours: bad pair");
  }
  std::size_t count = 0;
  for (std::size_t w = 0; w < g.adj.row_words(); ++w) {
    count += static_cast<std::size_t>(
        std::popcount(g.adj.row_word(u, w) & g.adj.row_word(v, w)));
  }
  return count;
}

}  // namespace stretchlab
