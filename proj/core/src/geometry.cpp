#include "evplan/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace evplan {

int orientation(const Point& a, const Point& b, const Point& c) {
  double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (cross > 0.0) return 1;
  if (cross < 0.0) return -1;
  return 0;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  if (orientation(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d) {
  int d1 = orientation(c, d, a);
  int d2 = orientation(c, d, b);
  int d3 = orientation(a, b, c);
  int d4 = orientation(a, b, d);
  if (d1 != d2 && d3 != d4) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

bool collinear_overlap(const Point& a, const Point& b, const Point& c,
                       const Point& d) {
  if (orientation(a, b, c) != 0 || orientation(a, b, d) != 0) return false;
  // Project on the dominant axis and test interval overlap length > 0.
  bool use_x = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
  double a1 = use_x ? std::min(a.x, b.x) : std::min(a.y, b.y);
  double a2 = use_x ? std::max(a.x, b.x) : std::max(a.y, b.y);
  double b1 = use_x ? std::min(c.x, d.x) : std::min(c.y, d.y);
  double b2 = use_x ? std::max(c.x, d.x) : std::max(c.y, d.y);
  return std::min(a2, b2) > std::max(a1, b1);
}

bool point_in_polygon(std::span<const Point> polygon, const Point& p) {
  const std::size_t n = polygon.size();
  if (n == 0) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& pi = polygon[i];
    const Point& pj = polygon[j];
    if (on_segment(pj, pi, p)) return true;
    if ((pi.y > p.y) != (pj.y > p.y)) {
      double x_cross = pj.x + (p.y - pj.y) * (pi.x - pj.x) / (pi.y - pj.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool polygon_is_simple(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& c = polygon[j];
      const Point& d = polygon[(j + 1) % n];
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        if (collinear_overlap(a, b, c, d)) return false;
      } else if (segments_intersect(a, b, c, d)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Point> angle_sorted(std::vector<Point> points) {
  Point c{0.0, 0.0};
  for (const Point& p : points) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(points.size());
  c.y /= static_cast<double>(points.size());
  std::stable_sort(points.begin(), points.end(),
                   [&c](const Point& a, const Point& b) {
                     double ta = std::atan2(a.y - c.y, a.x - c.x);
                     double tb = std::atan2(b.y - c.y, b.x - c.x);
                     if (ta != tb) return ta < tb;
                     double ra = std::hypot(a.x - c.x, a.y - c.y);
                     double rb = std::hypot(b.x - c.x, b.y - c.y);
                     return ra < rb;
                   });
  return points;
}

}  // namespace evplan
