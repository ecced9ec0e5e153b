#include "stretchlab/geom.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace stretchlab {

namespace {

// Area of the disc part beyond a chord at distance d >= 0 from the centre.
double segment_area(double d, double r) {
  if (d >= r) return 0.0;
  return r * r * std::acos(d / r) - d * std::sqrt(r * r - d * d);
}

double clamped_asin(double v) { return std::asin(std::clamp(v, -1.0, 1.0)); }

// Area of {x >= a, y >= b, x^2 + y^2 <= r^2} for a corner at axis distances
// a, b >= 0 with a^2 + b^2 < r^2. This is the overlap of the two adjacent
// segments, subtracted twice by the per-edge pass.
double corner_area(double a, double b, double r) {
  const double xmax = std::sqrt(r * r - b * b);
  const double area = 0.5 * (r * r * (clamped_asin(xmax / r) - clamped_asin(a / r)) -
                             xmax * b - a * std::sqrt(r * r - a * a)) +
                      a * b;
  return std::max(area, 0.0);
}

}  // namespace

double disc_square_area(const ClippedDisc& d) {
  const Point& q = d.centre;
  const double r = d.radius;
  if (!in_unit_square(q)) {
    throw std::invalid_argument("disc_square_area: centre outside unit square");
  }
  if (r < 0.0 || r > kSqrt2) {
    throw std::invalid_argument("disc_square_area: radius outside [0, sqrt2]");
  }
  if (r == 0.0) return 0.0;

  // Distances from the centre to the four edge lines. All nonnegative since
  // the centre is inside the square, so each edge's exterior is a segment and
  // exteriors of opposite edges are disjoint: only adjacent pairs (corners)
  // can overlap, and no triple overlap exists.
  const double dl = q.x, dr = 1.0 - q.x, db = q.y, dt = 1.0 - q.y;

  double area = std::numbers::pi * r * r;
  area -= segment_area(dl, r) + segment_area(dr, r) + segment_area(db, r) +
          segment_area(dt, r);

  const double r2 = r * r;
  if (dl * dl + db * db < r2) area += corner_area(dl, db, r);
  if (dr * dr + db * db < r2) area += corner_area(dr, db, r);
  if (dl * dl + dt * dt < r2) area += corner_area(dl, dt, r);
  if (dr * dr + dt * dt < r2) area += corner_area(dr, dt, r);

  return std::clamp(area, 0.0, std::min(std::numbers::pi * r * r, 1.0));
}

double clipped_area_lower_bound(double radius, AreaBoundRegime regime) {
  if (radius < 0.0) {
    throw std::invalid_argument("clipped_area_lower_bound: negative radius");
  }
  switch (regime) {
    case AreaBoundRegime::kHalf:
      if (radius > 0.5) {
        throw std::invalid_argument(
            "clipped_area_lower_bound: radius > 1/2 in the quarter-disc regime");
      }
      return std::numbers::pi * radius * radius / 4.0;
    case AreaBoundRegime::kSqrt2:
      if (radius > kSqrt2) {
        throw std::invalid_argument(
            "clipped_area_lower_bound: radius > sqrt2");
      }
      return std::numbers::pi * radius * radius / 32.0;
  }
  throw std::invalid_argument("clipped_area_lower_bound: bad regime");
}

}  // namespace stretchlab
