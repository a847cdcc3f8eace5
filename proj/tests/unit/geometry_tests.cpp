#include <doctest.h>

#include "evplan/geometry.hpp"
#include "evplan/rng.hpp"

using namespace evplan;

TEST_CASE("orientation signs") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
  CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);
}

TEST_CASE("on_segment includes endpoints and interior, excludes off-line") {
  CHECK(on_segment({0, 0}, {2, 2}, {1, 1}));
  CHECK(on_segment({0, 0}, {2, 2}, {0, 0}));
  CHECK(on_segment({0, 0}, {2, 2}, {2, 2}));
  CHECK_FALSE(on_segment({0, 0}, {2, 2}, {3, 3}));  // collinear but outside
  CHECK_FALSE(on_segment({0, 0}, {2, 2}, {1, 0}));
}

TEST_CASE("segment intersection") {
  // Proper crossing (square diagonals).
  CHECK(segments_intersect({0, 0}, {1, 1}, {1, 0}, {0, 1}));
  // Touching at an interior point.
  CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {1, 1}));
  // Disjoint.
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  // Shared endpoint counts as intersecting for the raw predicate.
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {1, 1}));
}

TEST_CASE("collinear overlap") {
  CHECK(collinear_overlap({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  CHECK_FALSE(collinear_overlap({0, 0}, {1, 0}, {1, 0}, {2, 0}));  // touch only
  CHECK_FALSE(collinear_overlap({0, 0}, {1, 0}, {0, 1}, {1, 1}));  // parallel
  CHECK(collinear_overlap({0, 0}, {0, 2}, {0, 1}, {0, 3}));        // vertical
}

TEST_CASE("point in polygon is boundary-inclusive") {
  std::vector<Point> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(point_in_polygon(square, {1, 1}));
  CHECK(point_in_polygon(square, {0, 0}));    // vertex
  CHECK(point_in_polygon(square, {1, 0}));    // edge
  CHECK(point_in_polygon(square, {2, 1}));    // right edge
  CHECK_FALSE(point_in_polygon(square, {3, 1}));
  CHECK_FALSE(point_in_polygon(square, {-0.001, 1}));
}

TEST_CASE("polygon simplicity") {
  std::vector<Point> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(polygon_is_simple(square));
  std::vector<Point> bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
  CHECK_FALSE(polygon_is_simple(bowtie));
}

TEST_CASE("angle_sorted yields simple polygons for random point sets") {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Point> pts;
    int n = 4 + static_cast<int>(rng.index(2));  // 4 or 5 vertices
    for (int i = 0; i < n; ++i) {
      pts.push_back({rng.uniform(0.0, 30.0), rng.uniform(0.0, 30.0)});
    }
    std::vector<Point> poly = angle_sorted(pts);
    REQUIRE(poly.size() == pts.size());
    CHECK(polygon_is_simple(poly));
  }
}
