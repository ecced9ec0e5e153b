#pragma once

#include <cmath>

#include "stretchlab/rng.hpp"

namespace stretchlab {

// A position in the unit square [0,1] x [0,1].
struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Disc of radius `radius` about `centre`, implicitly clipped to the unit
// square. Valid when the centre is inside the square and 0 <= radius <= sqrt2.
struct ClippedDisc {
  Point centre;
  double radius = 0.0;
};

inline constexpr double kSqrt2 = 1.4142135623730951;

inline bool in_unit_square(const Point& p) {
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

inline double euclid(const Point& u, const Point& v) {
  return std::hypot(u.x - v.x, u.y - v.y);
}

// Exact area of the disc clipped to the unit square, in closed form.
// Decomposition: full disc area, minus one circular segment per square edge
// the circle crosses, plus a correction for each corner covered by two
// overlapping segments. Throws std::invalid_argument if the centre lies
// outside the square or the radius is outside [0, sqrt2].
double disc_square_area(const ClippedDisc& d);

inline double disc_square_area(const Point& centre, double radius) {
  return disc_square_area(ClippedDisc{centre, radius});
}

// Radius regimes of the clipped-disc area lower bound: the pi R^2 / 4 form
// needs R <= 1/2, the pi R^2 / 32 form holds up to R <= sqrt2.
enum class AreaBoundRegime { kHalf, kSqrt2 };

// Lower bound on disc_square_area valid for every centre in the square:
// pi R^2 / 4 (kHalf) or pi R^2 / 32 (kSqrt2). Throws std::invalid_argument
// when R is outside the regime's radius range.
double clipped_area_lower_bound(double radius, AreaBoundRegime regime);

// Uniform point in [0,1)^2: x drawn first, then y.
inline Point sample_point(Xoshiro256PlusPlus& rng) {
  const double x = rng.uniform();
  const double y = rng.uniform();
  return Point{x, y};
}

}  // namespace stretchlab
