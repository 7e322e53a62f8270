#pragma once

#include <vector>

#include "icm/setvalued.hpp"

namespace icm::detail {

inline Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
  return ax * by - ay * bx;
}

// Orientation of r relative to the directed line p -> q (twice signed area).
inline Rational orient(const Point& p, const Point& q, const Point& r) {
  return cross(q.x - p.x, q.y - p.y, r.x - p.x, r.y - p.y);
}

// Appends the points of s ∩ o that are needed to cut s into pieces on which
// membership in o is constant: a crossing point, or the endpoints of o that
// lie on s when both are collinear.
void cut_points(const Segment& s, const Segment& o, std::vector<Point>& out);

}  // namespace icm::detail
