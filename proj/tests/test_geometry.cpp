#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "orbiform/errors.hpp"
#include "orbiform/geometry.hpp"

using namespace orbiform;

namespace {

double max_vertex_gap(const ReuleauxPolygon& p, const ReuleauxPolygon& q) {
  double worst = 0.0;
  for (int k = 0; k < p.size(); ++k) worst = std::max(worst, norm(p.vertex(k) - q.vertex(k)));
  return worst;
}

}  // namespace

TEST_CASE("angles") {
  CHECK(normalize_angle(-0.5) == doctest::Approx(2 * std::numbers::pi - 0.5));
  CHECK(normalize_angle(7.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
  CHECK(angle_difference(0.1, 2 * std::numbers::pi - 0.1) == doctest::Approx(0.2));
  CHECK(angle_of({0.0, -1.0}) == doctest::Approx(1.5 * std::numbers::pi));
}

TEST_CASE("regular polygons") {
  for (int n = 1; n <= 10; ++n) {
    const ReuleauxPolygon p = build_regular(n);
    CHECK(p.size() == 2 * n + 1);
    CHECK(validate(p, Inradius(regular_inradius(n))).passed());
    CHECK(std::abs(exact_area(p) - oracle::regular_area(2 * n + 1)) < 1e-12);
    CHECK(std::abs(exact_area(p) - oracle::green_area(p)) < 1e-12);
    CHECK(std::abs(p.vertex(0).x) < 1e-15);
    CHECK(p.vertex(0).y > 0.0);
    const AnnulusReport a = minimal_annulus(p);
    CHECK(std::abs(a.inner_radius - regular_inradius(n)) < 1e-12);
    for (double len : p.arc_lengths()) CHECK(len == doctest::Approx(std::numbers::pi / (2 * n + 1)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(build_regular(0), DomainError);
}

TEST_CASE("reuleaux triangle") {
  const ReuleauxPolygon t = build_regular(1);
  CHECK(std::abs(exact_area(t) - (std::numbers::pi - std::sqrt(3.0)) / 2) < 1e-14);
  for (int k = 0; k < 3; ++k) {
    CHECK(norm(t.vertex(k)) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(norm(t.vertex(k + 1) - t.vertex(k)) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("angle relation and boundary order") {
  const ReuleauxPolygon p = build_optimal(Inradius(0.48));
  for (int k = 0; k < p.size(); ++k) {
    CHECK(std::abs(angle_difference(p.beta(k + 1), p.alpha(k) + std::numbers::pi)) < 1e-12);
    CHECK(norm(p.vertex(k) + unit_vector(p.alpha(k)) - p.vertex(k + 1)) < 1e-12);
    CHECK(norm(p.vertex(k) + unit_vector(p.beta(k)) - p.vertex(k - 1)) < 1e-12);
  }
  const std::vector<int> order = p.boundary_order();
  CHECK(order == std::vector<int>{0, 5, 3, 1, 6, 4, 2});
  double turn = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point2 a = p.vertex(order[i]);
    const Point2 b = p.vertex(order[(i + 1) % order.size()]);
    turn += cross(a, b);
  }
  CHECK(turn > 0.0);
}

TEST_CASE("construction from arc lengths") {
  const double l = std::numbers::pi / 5;
  const std::vector<double> five(5, l);
  const ReuleauxPolygon p = build_from_arc_lengths(five, 0.3, {0.2, -0.1});
  CHECK(validate(p).passed());
  CHECK(p.alpha(0) == doctest::Approx(0.3));
  CHECK(std::abs(exact_area(p) - exact_area(build_regular(2))) < 1e-13);

  CHECK_THROWS_AS(build_from_arc_lengths(std::vector<double>(4, std::numbers::pi / 4)), GeometryError);
  CHECK_THROWS_AS(build_from_arc_lengths(std::vector<double>{1.0, 1.0, 1.0}), GeometryError);
  CHECK_THROWS_AS(build_from_arc_lengths(std::vector<double>{std::numbers::pi, 0.0, 0.0}), GeometryError);
  // Perimeter pi but no closure.
  CHECK_THROWS_AS(build_from_arc_lengths(std::vector<double>{1.2, 1.0, std::numbers::pi - 2.2}), GeometryError);
}

TEST_CASE("optimal shapes at the figure radii") {
  struct Case {
    double r;
    int arcs;
  };
  for (const Case c : {Case{0.45, 5}, Case{0.48, 7}, Case{0.493, 11}}) {
    const Inradius r(c.r);
    const ReuleauxPolygon p = build_optimal(r);
    CHECK(p.size() == c.arcs);
    const ValidationReport v = validate(p, r);
    CHECK(v.passed());
    CHECK(v.outer_vertex_count == c.arcs - 1);
    const AnnulusReport a = minimal_annulus(p);
    CHECK(std::abs(a.inner_radius - c.r) < 1e-9);
    CHECK(norm(a.center) < 1e-12);
    CHECK(std::abs(exact_area(p) - minimal_area(r)) < 1e-12);
    CHECK(std::abs(exact_area(p) - oracle::green_area(p)) < 1e-12);

    const double h = optimal_h(r);
    const double l = extremal_arc_length(r);
    int interior = -1;
    for (int k = 0; k < p.size(); ++k) {
      if (!a.on_outer[static_cast<std::size_t>(k)]) interior = k;
    }
    REQUIRE(interior >= 0);
    // Interior vertex at the bottom.
    CHECK(std::abs(p.vertex(interior).x) < 1e-12);
    CHECK(p.vertex(interior).y < 0.0);
    CHECK(std::abs(p.arc_length(interior) - cluster_arc_a(r, h)) < 1e-9);
    CHECK(std::abs(p.arc_length(interior - 1) - cluster_arc_b(r, h)) < 1e-9);
    CHECK(std::abs(p.arc_length(interior + 1) - cluster_arc_b(r, h)) < 1e-9);
    for (int k = interior + 2; k < interior + p.size() - 1; ++k) CHECK(std::abs(p.arc_length(k) - l) < 1e-9);
  }
  CHECK_THROWS_AS(build_optimal(Inradius(0.5)), DegenerateDisk);
}

TEST_CASE("rigid layouts") {
  const Inradius r(0.45);
  const double l = extremal_arc_length(r);
  const std::vector<double> three = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(build_rigid(r, three), DomainError);

  RigidLayout layout = rigid_layout(r, std::vector<double>{l, 0.0});
  CHECK(layout.lengths.size() == 4);
  CHECK(layout.cluster_vertices.empty());

  const double h = optimal_h(r);
  layout = rigid_layout(r, std::vector<double>{h, 0.0, 0.0});
  CHECK(layout.lengths.size() == 5);
  CHECK(layout.cluster_vertices == std::vector<int>{1});

  // Two clusters at r = 0.493: h1 + h2 = h(r) + l(r), 2N - 5 zeros.
  const Inradius s(0.493);
  const double hs = optimal_h(s);
  const double ls = extremal_arc_length(s);
  const std::vector<double> two = {0.2, hs + ls - 0.2, 0, 0, 0, 0, 0};
  const ReuleauxPolygon p = build_rigid(s, two);
  CHECK(p.size() == 11);
  CHECK(validate(p, s).passed());
  CHECK(exact_area(p) >= minimal_area(s) - 1e-12);
  CHECK(std::abs(exact_area(p) - oracle::green_area(p)) < 1e-12);

  CHECK_THROWS_AS(build_rigid(s, std::vector<double>{0.2, 0.2}), DomainError);
  CHECK_THROWS_AS(build_rigid(Inradius(0.5), std::vector<double>{0.0}), DegenerateDisk);
}

TEST_CASE("area against the raster oracle") {
  for (double r : {0.43, 0.45, 0.48, 0.493}) {
    const ReuleauxPolygon p = build_optimal(Inradius(r));
    CHECK(std::abs(exact_area(p) - oracle::raster_area(p, 2000)) < 1e-4);
  }
}

TEST_CASE("transforms") {
  const ReuleauxPolygon p = build_optimal(Inradius(0.46));
  const double area = exact_area(p);
  CHECK(exact_area(p.translated({0.3, -0.2})) == doctest::Approx(area).epsilon(1e-14));
  CHECK(exact_area(p.rotated(1.1)) == doctest::Approx(area).epsilon(1e-14));
  const ReuleauxPolygon q = p.reflected();
  CHECK(validate(q).passed());
  CHECK(exact_area(q) == doctest::Approx(area).epsilon(1e-14));
  CHECK(max_vertex_gap(q.reflected(), p) < 1e-15);
  CHECK(max_vertex_gap(recentered(p.translated({0.1, 0.2})), p) < 1e-12);
}

TEST_CASE("smallest enclosing circle") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> pts(3 + trial % 20);
    for (Point2& q : pts) q = {g(rng), g(rng)};
    const Circle c = smallest_enclosing_circle(pts);
    const oracle::Disk d = oracle::brute_enclosing(pts);
    CHECK(c.radius == doctest::Approx(d.r).epsilon(1e-12));
    CHECK(norm(c.center - d.c) < 1e-9);
  }
  const std::vector<Point2> one = {{1.0, 2.0}};
  CHECK(smallest_enclosing_circle(one).radius == 0.0);
  CHECK_THROWS_AS(smallest_enclosing_circle(std::vector<Point2>{}), GeometryError);
}

TEST_CASE("support function and width") {
  for (const ReuleauxPolygon& p : {build_regular(1), build_optimal(Inradius(0.47)), build_regular(4)}) {
    for (int i = 0; i < 720; ++i) {
      const double theta = 2 * std::numbers::pi * i / 720;
      CHECK(support_width(p, theta) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  const ReuleauxPolygon t = build_regular(1);
  CHECK(support_function(t, std::numbers::pi / 2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("containment and boundary distance") {
  const ReuleauxPolygon p = build_optimal(Inradius(0.45));
  CHECK(contains(p, {0.0, 0.0}));
  CHECK(contains(p, {0.0, 0.449}));
  CHECK_FALSE(contains(p, {0.0, 0.6}));
  CHECK(distance_to_boundary(p, {0.0, 0.0}) == doctest::Approx(0.45).epsilon(1e-12));
  for (const Point2& v : p.vertices()) {
    CHECK(contains(p, v, 1e-12));
    CHECK(distance_to_boundary(p, v) < 1e-12);
  }
}

TEST_CASE("validation catches defects") {
  const ReuleauxPolygon p = build_regular(2);
  std::vector<Point2> v(p.vertices().begin(), p.vertices().end());
  v[2].x += 1e-4;
  const ReuleauxPolygon bad = ReuleauxPolygon::from_vertices(v);
  const ValidationReport report = validate(bad);
  CHECK_FALSE(report.passed());
  REQUIRE(report.find("unit_chords") != nullptr);
  CHECK_FALSE(report.find("unit_chords")->passed);
  CHECK(report.find("no_such_check") == nullptr);

  // Shape of inradius r_5 checked against a larger inradius.
  CHECK_FALSE(validate(p, Inradius(0.48)).passed());
  CHECK(validate(p, Inradius(regular_inradius(2))).passed());
}

TEST_CASE("boundary sampling") {
  const ReuleauxPolygon p = build_optimal(Inradius(0.48));
  const BoundarySample s = sample_boundary(p, 1e-3);
  CHECK(norm(s.points.front() - s.points.back()) < 1e-12);
  CHECK(s.points.size() == s.arc_index.size());
  double length = 0.0;
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    const double d = norm(s.points[i] - s.points[i - 1]);
    CHECK(d <= 1e-3 + 1e-15);
    length += d;
  }
  CHECK(length == doctest::Approx(std::numbers::pi).epsilon(1e-6));
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    CHECK(norm(s.points[i] - p.vertex(s.arc_index[i])) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sample_boundary(p, 0.0), DomainError);
}

TEST_CASE("hausdorff distance") {
  const ReuleauxPolygon p = build_optimal(Inradius(0.48));
  CHECK(hausdorff_distance(p, p, false) < 1e-12);
  const ReuleauxPolygon moved = p.rotated(0.7).translated({0.05, -0.02});
  CHECK(hausdorff_distance(p, moved, false) > 0.01);
  CHECK(hausdorff_distance(p, moved, true) < 1e-6);
  CHECK(hausdorff_distance(p, p.reflected().rotated(2.0), true) < 1e-6);

  // Against the disk-like regular 7-gon of the nearby inradius.
  const ReuleauxPolygon q = build_regular(3);
  const double d = hausdorff_distance(p, q, true);
  CHECK(d > 1e-4);
  CHECK(d < 0.05);
  CHECK(hausdorff_distance(q, p, true) == doctest::Approx(d).epsilon(1e-6));
}
