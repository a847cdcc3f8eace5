#pragma once

#include <span>
#include <vector>

namespace evplan {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Sign of the cross product (b-a) x (c-a): +1 counter-clockwise, -1
// clockwise, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

// True iff p lies on the closed segment [a, b].
bool on_segment(const Point& a, const Point& b, const Point& p);

// True iff the closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d);

// True iff [a,b] and [c,d] are collinear and share more than one point.
bool collinear_overlap(const Point& a, const Point& b, const Point& c,
                       const Point& d);

// Ray-casting test; points on the boundary count as inside.
bool point_in_polygon(std::span<const Point> polygon, const Point& p);

// True iff the polygon has no self-intersections: non-adjacent edges are
// disjoint and adjacent edges meet only at their shared vertex.
bool polygon_is_simple(std::span<const Point> polygon);

// Vertices reordered counter-clockwise by angle about their centroid.
std::vector<Point> angle_sorted(std::vector<Point> points);

}  // namespace evplan
