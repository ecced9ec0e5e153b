#include "stretchlab/constructs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "stretchlab/rng.hpp"
#include "stretchlab/stretch.hpp"

namespace stretchlab {

PrimaryFraction pick_c(std::uint64_t n) {
  PrimaryFraction r;
  r.window_lo = static_cast<double>(n) / 51.0;
  r.window_hi = static_cast<double>(n) / (16.0 * std::numbers::pi);
  // smallest even integer strictly above window_lo; strict by construction
  // since floor(x) > x-1
  const std::uint64_t k =
      2 * (static_cast<std::uint64_t>(std::floor(r.window_lo / 2.0)) + 1);
  if (static_cast<double>(k) < r.window_hi) {
    r.found = true;
    r.k = k;
    r.c = static_cast<double>(k) / static_cast<double>(n);
  }
  return r;
}

ThresholdGraphStats threshold_graph(const std::vector<Point>& points,
                                    double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("threshold_graph: radius must be >= 0");
  }
  ThresholdGraphStats s;
  s.point_count = points.size();
  s.radius = r;
  std::vector<char> has_edge(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (euclid(points[i], points[j]) <= r) {
        ++s.edge_count;
        has_edge[i] = 1;
        has_edge[j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!has_edge[i]) s.isolated.push_back(static_cast<std::uint32_t>(i));
  }
  s.isolated_count = s.isolated.size();
  return s;
}

namespace {

constexpr std::uint32_t kNoDisc = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kRejectCap = 1000000;

struct BitsHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k)
      const noexcept {
    return static_cast<std::size_t>(
        k.first ^ (k.second * 0x9e3779b97f4a7c15ULL + 0x7f4a7c159e3779b9ULL));
  }
};

// exact-duplicate filter keyed on the raw bit patterns, so there are no
// false positives
using PointSet =
    std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, BitsHash>;

std::pair<std::uint64_t, std::uint64_t> bits_of(const Point& p) {
  return {std::bit_cast<std::uint64_t>(p.x), std::bit_cast<std::uint64_t>(p.y)};
}

// Uniform bucket grid over the unit square for point-in-any-disc queries.
// Cell width is >= the disc radius, so a centre within radius of q lies in
// the 3x3 block around q's cell.
class DiscGrid {
 public:
  DiscGrid(const std::vector<Point>& centres, double r)
      : centres_(centres),
        r_(r),
        dim_(std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(1.0 / r)))) {
    cells_.resize(dim_ * dim_);
    for (std::size_t d = 0; d < centres.size(); ++d) {
      cells_[cell_index(centres[d])].push_back(static_cast<std::uint32_t>(d));
    }
  }

  // 0-based index of the open disc containing q, or kNoDisc; the centres are
  // pairwise more than 2r apart, so at most one disc can match
  std::uint32_t containing(const Point& q) const {
    const auto [cx, cy] = cell_coords(q);
    for (int dy = -1; dy <= 1; ++dy) {
      const std::ptrdiff_t y = static_cast<std::ptrdiff_t>(cy) + dy;
      if (y < 0 || y >= static_cast<std::ptrdiff_t>(dim_)) continue;
      for (int dx = -1; dx <= 1; ++dx) {
        const std::ptrdiff_t x = static_cast<std::ptrdiff_t>(cx) + dx;
        if (x < 0 || x >= static_cast<std::ptrdiff_t>(dim_)) continue;
        for (std::uint32_t d : cells_[static_cast<std::size_t>(y) * dim_ +
                                      static_cast<std::size_t>(x)]) {
          if (euclid(q, centres_[d]) < r_) return d;
        }
      }
    }
    return kNoDisc;
  }

 private:
  std::pair<std::size_t, std::size_t> cell_coords(const Point& p) const {
    const auto clampc = [this](double v) {
      const auto c = static_cast<std::size_t>(
          std::max(0.0, std::floor(v * static_cast<double>(dim_))));
      return std::min(c, dim_ - 1);
    };
    return {clampc(p.x), clampc(p.y)};
  }

  std::size_t cell_index(const Point& p) const {
    const auto [cx, cy] = cell_coords(p);
    return cy * dim_ + cx;
  }

  const std::vector<Point>& centres_;
  double r_;
  std::size_t dim_;
  std::vector<std::vector<std::uint32_t>> cells_;
};

Point sample_exterior(Xoshiro256PlusPlus& rng, const DiscGrid& grid,
                      const PointSet& seen) {
  for (std::uint64_t attempt = 0; attempt < kRejectCap; ++attempt) {
    const Point q{rng.uniform(), rng.uniform()};
    if (grid.containing(q) != kNoDisc) continue;
    if (seen.count(bits_of(q)) != 0) continue;
    return q;
  }
  throw std::runtime_error("three_phase: exterior rejection cap exceeded");
}

Point sample_in_disc(Xoshiro256PlusPlus& rng, const Point& centre, double r,
                     const PointSet& seen) {
  const double lox = std::max(0.0, centre.x - r);
  const double hix = std::min(1.0, centre.x + r);
  const double loy = std::max(0.0, centre.y - r);
  const double hiy = std::min(1.0, centre.y + r);
  for (std::uint64_t attempt = 0; attempt < kRejectCap; ++attempt) {
    const Point q{lox + rng.uniform() * (hix - lox),
                  loy + rng.uniform() * (hiy - loy)};
    if (!(euclid(q, centre) < r)) continue;
    if (seen.count(bits_of(q)) != 0) continue;
    return q;
  }
  throw std::runtime_error("three_phase: disc rejection cap exceeded");
}

std::uint64_t checked_first_count(const ModelParams& params, double c) {
  const double kd = c * static_cast<double>(params.n);
  const double kround = std::round(kd);
  if (!(std::abs(kd - kround) <= 1e-9) || kround < 2.0 ||
      std::fmod(kround, 2.0) != 0.0 ||
      kround > static_cast<double>(params.n)) {
    throw std::invalid_argument(
        "three_phase: c*n must be an even integer >= 2 and <= n");
  }
  return static_cast<std::uint64_t>(kround);
}

void check_trace_matches(const ThreePhaseTrace& trace,
                         const EmbeddedGraph& g) {
  if (trace.first_count < 2 ||
      trace.first_count + trace.disc_assignment.size() != g.n() ||
      trace.primary.size() != trace.occupancy.size() ||
      trace.primary.size() != trace.occupant.size()) {
    throw std::invalid_argument("trace does not match graph");
  }
}

bool disc_is_nice(const ThreePhaseTrace& trace, const EmbeddedGraph& g,
                  std::uint32_t disc) {
  if (disc == 0 || disc > trace.primary.size()) {
    throw std::invalid_argument("trace does not match graph");
  }
  const std::uint32_t centre_v = trace.primary[disc - 1];
  const std::uint32_t occ_v = trace.occupant[disc - 1];
  if (centre_v >= g.n() || occ_v >= g.n()) {
    throw std::invalid_argument("trace does not match graph");
  }
  return euclid(g.points[centre_v], g.points[occ_v]) < trace.nice_radius &&
         !g.adjacent(centre_v, occ_v);
}

}  // namespace

std::pair<std::vector<Point>, ThreePhaseTrace> three_phase_points(
    const ModelParams& params, double c, double lambda) {
  validate(params);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("three_phase: lambda must be > 0");
  }
  const std::uint64_t k = checked_first_count(params, c);
  const double sqrt_n = std::sqrt(static_cast<double>(params.n));
  const double r_disc = 1.0 / sqrt_n;

  ThreePhaseTrace trace;
  trace.c = c;
  trace.lambda = lambda;
  trace.first_count = k;
  trace.disc_radius = r_disc;
  trace.nice_radius = 1.0 / (lambda * sqrt_n);

  // stage 1a: the first k vertices land exactly as in the direct generator
  std::vector<Point> points = generate_points(params, k);

  // stage 1b: disc centres are threshold-isolated first-stage vertices, taken
  // in index order; if fewer than k/2 are isolated the run is flagged and
  // every isolated vertex becomes a centre (the coupling stays valid, the
  // intended disc count does not)
  const ThresholdGraphStats tg = threshold_graph(points, 2.0 / sqrt_n);
  const std::uint64_t m_target = k / 2;
  trace.conditioning_ok = tg.isolated.size() >= m_target;
  const std::size_t m = trace.conditioning_ok
                            ? static_cast<std::size_t>(m_target)
                            : tg.isolated.size();
  trace.primary.assign(tg.isolated.begin(), tg.isolated.begin() + m);

  std::vector<char> is_primary(k, 0);
  for (std::uint32_t v : trace.primary) is_primary[v] = 1;
  for (std::uint64_t v = 0; v < k; ++v) {
    if (!is_primary[v]) {
      trace.far_set.push_back(static_cast<std::uint32_t>(v));
    }
  }

  // isolation radius is twice the disc radius, so the open discs are pairwise
  // disjoint and no far vertex can fall inside one
  std::vector<Point> centres(m);
  trace.disc_area.resize(m);
  std::vector<double> cum(m);
  for (std::size_t d = 0; d < m; ++d) {
    centres[d] = points[trace.primary[d]];
    trace.disc_area[d] = disc_square_area(centres[d], r_disc);
  }
  std::partial_sum(trace.disc_area.begin(), trace.disc_area.end(),
                   cum.begin());

  const DiscGrid grid(centres, r_disc);
  PointSet seen;
  seen.reserve(params.n * 2);
  for (const Point& p : points) seen.insert(bits_of(p));

  // stage 2: each secondary draws its region from its own assignment stream
  // (discs by clipped area, remainder exterior), then a position uniform in
  // that region from its own placement stream
  const std::uint64_t s_count = params.n - k;
  trace.disc_assignment.resize(s_count);
  trace.occupancy.assign(m, 0);
  trace.occupant.assign(m, kNoDisc);
  points.resize(params.n);
  for (std::uint64_t t = 0; t < s_count; ++t) {
    const std::uint64_t v = k + t;
    Xoshiro256PlusPlus assign_rng(
        derive_seed(params.seed, stream::kAssign, t));
    const double u = assign_rng.uniform();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::uint32_t disc =
        it == cum.end() ? 0
                        : static_cast<std::uint32_t>(it - cum.begin()) + 1;
    trace.disc_assignment[t] = disc;

    Xoshiro256PlusPlus place_rng(derive_seed(params.seed, stream::kPlace, t));
    Point q;
    if (disc == 0) {
      q = sample_exterior(place_rng, grid, seen);
    } else {
      q = sample_in_disc(place_rng, centres[disc - 1], r_disc, seen);
      std::uint32_t& occ = trace.occupancy[disc - 1];
      ++occ;
      trace.occupant[disc - 1] =
          occ == 1 ? static_cast<std::uint32_t>(v) : kNoDisc;
    }
    seen.insert(bits_of(q));
    points[v] = q;
  }

  for (std::size_t d = 0; d < m; ++d) {
    if (trace.occupancy[d] == 1) {
      trace.two_vertex_discs.push_back(static_cast<std::uint32_t>(d) + 1);
    }
  }
  return {std::move(points), std::move(trace)};
}

ThreePhaseResult three_phase_generate(const ModelParams& params, double c,
                                      double lambda) {
  auto [points, trace] = three_phase_points(params, c, lambda);

  // stage 3: the usual independent edge pass, same stream as generate()
  ThreePhaseResult out;
  out.graph.params = params;
  out.graph.points = std::move(points);
  out.graph.adj = BitMatrix(out.graph.points.size());
  assign_bernoulli_edges(out.graph);

  out.trace = std::move(trace);
  for (std::uint32_t d : out.trace.two_vertex_discs) {
    if (disc_is_nice(out.trace, out.graph, d)) {
      out.trace.nice_discs.push_back(d);
    }
  }
  return out;
}

std::size_t nice_disc_count(const ThreePhaseTrace& trace,
                            const EmbeddedGraph& g) {
  check_trace_matches(trace, g);
  std::size_t count = 0;
  for (std::uint32_t d : trace.two_vertex_discs) {
    if (disc_is_nice(trace, g, d)) ++count;
  }
  return count;
}

NiceImplication verify_nice_implication(const ThreePhaseTrace& trace,
                                        const EmbeddedGraph& g) {
  check_trace_matches(trace, g);
  if (!is_connected(g)) return NiceImplication::kNotApplicable;
  if (trace.nice_discs.empty()) return NiceImplication::kHolds;  // vacuous
  const StretchReport rep = stretch_factor(g);
  return rep.value > trace.lambda ? NiceImplication::kHolds
                                  : NiceImplication::kViolated;
}

}  // namespace stretchlab
