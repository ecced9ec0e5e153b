#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stretchlab/geom.hpp"
#include "stretchlab/model.hpp"

namespace stretchlab {

// Choice of the primary-fraction constant: the smallest even integer k with
// n/51 < k < n/(16*pi), reported as c = k/n. No such k exists for small n
// (the window is narrower than 2 until n is around a hundred), so the result
// carries a found flag instead of throwing.
struct PrimaryFraction {
  bool found = false;
  std::uint64_t k = 0;
  double c = 0.0;
  double window_lo = 0.0;  // n/51
  double window_hi = 0.0;  // n/(16*pi)
};

PrimaryFraction pick_c(std::uint64_t n);

// Summary of the geometric threshold graph on a point set: edges join pairs
// at Euclidean distance <= r (boundary inclusive).
struct ThresholdGraphStats {
  std::size_t point_count = 0;
  double radius = 0.0;
  std::size_t edge_count = 0;
  std::size_t isolated_count = 0;
  std::vector<std::uint32_t> isolated;  // ascending vertex index
};

ThresholdGraphStats threshold_graph(const std::vector<Point>& points,
                                    double r);

// Record of a staged run. Secondary vertex ids are first_count..n-1; slot t
// holds vertex first_count + t. Disc ids are 1-based in disc_assignment so 0
// can mean "exterior region"; arrays sized by disc count use id-1.
struct ThreePhaseTrace {
  double c = 0.0;
  double lambda = 0.0;
  bool conditioning_ok = false;
  std::uint64_t first_count = 0;           // k = c*n first-stage vertices
  double disc_radius = 0.0;                // 1/sqrt(n)
  double nice_radius = 0.0;                // 1/(lambda*sqrt(n))
  std::vector<std::uint32_t> primary;      // disc centres, ascending
  std::vector<std::uint32_t> far_set;      // first stage minus primary
  std::vector<std::uint32_t> disc_assignment;  // per secondary slot, 0 = exterior
  std::vector<double> disc_area;           // per disc, closed-form clipped area
  std::vector<std::uint32_t> occupancy;    // per disc, secondaries assigned
  std::vector<std::uint32_t> occupant;     // per disc, vertex id iff occupancy==1
  std::vector<std::uint32_t> two_vertex_discs;  // disc ids, ascending
  std::vector<std::uint32_t> nice_discs;        // subset of two_vertex_discs
};

struct ThreePhaseResult {
  EmbeddedGraph graph;
  ThreePhaseTrace trace;
};

// Geometric stages only: embed the first-stage points, select disc centres
// among threshold-isolated ones (conditioning_ok = false and every isolated
// vertex is used when fewer than k/2 are available), assign each secondary a
// region by area, and rejection-sample its position. No edges are drawn, so
// the returned trace has occupancy and two_vertex_discs final but nice_discs
// empty. c*n must be within 1e-9 of an even integer >= 2.
std::pair<std::vector<Point>, ThreePhaseTrace> three_phase_points(
    const ModelParams& params, double c, double lambda);

// Full run: geometric stages plus the independent edge phase (identical edge
// stream to generate()), then the nice-disc scan.
ThreePhaseResult three_phase_generate(const ModelParams& params, double c,
                                      double lambda);

// Recount of nice discs from the trace geometry and the graph's adjacency:
// two-vertex discs whose occupant lies strictly within nice_radius of the
// centre and is not adjacent to it. Independent of trace.nice_discs.
std::size_t nice_disc_count(const ThreePhaseTrace& trace,
                            const EmbeddedGraph& g);

// Whether the recorded nice discs certify the stretch bound they promise:
// any nice disc forces stretch > lambda on a connected graph.
enum class NiceImplication { kNotApplicable, kHolds, kViolated };

NiceImplication verify_nice_implication(const ThreePhaseTrace& trace,
                                        const EmbeddedGraph& g);

}  // namespace stretchlab
