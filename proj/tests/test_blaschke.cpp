#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "orbiform/blaschke.hpp"
#include "orbiform/errors.hpp"
#include "orbiform/solver.hpp"

using namespace orbiform;

namespace {

double max_vertex_gap(const ReuleauxPolygon& p, const ReuleauxPolygon& q) {
  double worst = 0.0;
  for (int k = 0; k < p.size(); ++k) worst = std::max(worst, norm(p.vertex(k) - q.vertex(k)));
  return worst;
}

bool well_conditioned(const ReuleauxPolygon& p, int k) {
  for (int j = k - 1; j <= k + 2; ++j) {
    if (p.arc_length(j) < kDerivativeMinArc) return false;
  }
  return true;
}

std::vector<ReuleauxPolygon> sample_shapes() {
  std::vector<ReuleauxPolygon> out = {build_regular(1), build_regular(2), build_regular(4),
                                      build_optimal(Inradius(0.45)), build_optimal(Inradius(0.48)),
                                      build_optimal(Inradius(0.493))};
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Inradius r(std::uniform_real_distribution<double>(0.43, 0.49)(rng));
    out.push_back(random_feasible_start(r, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("zero move and reversibility") {
  for (const ReuleauxPolygon& p : sample_shapes()) {
    for (int k = 0; k < p.size(); ++k) {
      CHECK(max_vertex_gap(apply_move(p, {k, 0.0}), p) < 1e-12);
      for (double eps : {1e-3, -1e-3}) {
        std::optional<ReuleauxPolygon> there;
        try {
          there = apply_move(p, {k, eps});
        } catch (const GeometryError&) {
          continue;  // move collapses a short arc of this shape
        }
        CHECK(max_vertex_gap(apply_move(*there, {k, -eps}), p) < 1e-12);
      }
    }
  }
}

TEST_CASE("moves preserve the polygon invariants") {
  for (const ReuleauxPolygon& p : sample_shapes()) {
    for (int k = 0; k < p.size(); ++k) {
      for (double eps : {1e-2, -1e-2, 3e-3}) {
        try {
          const ReuleauxPolygon q = apply_move(p, {k, eps});
          CHECK(validate(q).passed());
          for (int j = 0; j < p.size(); ++j) {
            if (j != q.wrap(k) && j != q.wrap(k + 1)) CHECK(norm(q.vertex(j) - p.vertex(j)) == 0.0);
          }
          CHECK(angle_difference(q.alpha(k - 1), p.alpha(k - 1)) == doctest::Approx(eps).epsilon(1e-9));
        } catch (const GeometryError&) {
        }
      }
    }
  }
}

TEST_CASE("move errors") {
  const ReuleauxPolygon p = build_regular(2);
  CHECK_THROWS_AS(apply_move(p, {0, 0.7}), GeometryError);
  CHECK_THROWS_AS(apply_move(p, {0, -0.7}), GeometryError);
}

TEST_CASE("regular polygons are local area maxima") {
  const ReuleauxPolygon p = build_regular(2);
  const double area = exact_area(p);
  for (int k = 0; k < 5; ++k) {
    CHECK(std::abs(area_derivative(p, k)) < 1e-15);
    CHECK(exact_area(apply_move(p, {k, 1e-3})) < area);
    CHECK(exact_area(apply_move(p, {k, -1e-3})) < area);
  }
}

TEST_CASE("first-order coefficients") {
  for (int n = 1; n <= 5; ++n) {
    const ReuleauxPolygon p = build_regular(n);
    const double j = std::numbers::pi / (2 * n + 1);
    for (int k = 0; k < p.size(); ++k) {
      const FirstOrderCoefficients c = first_order_coefficients(p, k);
      CHECK(c.sigma == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(c.tau == doctest::Approx(2.0 * std::cos(j)).epsilon(1e-12));
    }
  }
  const FirstOrderCoefficients t = first_order_coefficients(build_regular(1), 0);
  CHECK(t.sigma == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.tau == doctest::Approx(1.0).epsilon(1e-12));

  for (const ReuleauxPolygon& p : sample_shapes()) {
    for (int k = 0; k < p.size(); ++k) {
      if (!well_conditioned(p, k)) continue;
      const FirstOrderCoefficients c = first_order_coefficients(p, k);
      for (double e : {1e-6, 1e-5, 1e-4}) {
        try {
          const ReuleauxPolygon plus = apply_move(p, {k, e});
          const ReuleauxPolygon minus = apply_move(p, {k, -e});
          CHECK(std::abs(angle_difference(plus.alpha(k), minus.alpha(k)) / (2 * e) - c.tau) < 1e-4);
          CHECK(std::abs(angle_difference(plus.alpha(k + 1), minus.alpha(k + 1)) / (2 * e) - c.sigma) < 1e-4);
        } catch (const GeometryError&) {
        }
      }
    }
  }
}

TEST_CASE("singular coefficients are rejected") {
  const ReuleauxPolygon p = build_regular(2);
  // Arc 1 forced down to 1e-10.
  const ReuleauxPolygon q = ReuleauxPolygon::from_parts(
      {p.vertices().begin(), p.vertices().end()}, {p.alphas().begin(), p.alphas().end()},
      [&] {
        std::vector<double> b(p.betas().begin(), p.betas().end());
        b[1] = p.alpha(1) + 1e-10;
        return b;
      }());
  CHECK_THROWS_AS(first_order_coefficients(q, 0), DomainError);
}

TEST_CASE("area derivative forms") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 1.5);
  for (int i = 0; i < 10000; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    CHECK(std::abs(area_derivative(a, b) - area_derivative_expanded(a, b)) < 1e-12);
  }
  CHECK(area_derivative(0.4, 0.4) == 0.0);
  CHECK(area_derivative(0.3, 0.5) < 0.0);
  CHECK(area_derivative(0.5, 0.3) > 0.0);
}

TEST_CASE("area derivative against central differences") {
  for (const ReuleauxPolygon& p : sample_shapes()) {
    for (int k = 0; k < p.size(); ++k) {
      if (!well_conditioned(p, k)) continue;
      auto central = [&](double e) {
        return (exact_area(apply_move(p, {k, e})) - exact_area(apply_move(p, {k, -e}))) / (2 * e);
      };
      const double d = area_derivative(p, k);
      const double e1 = std::abs(central(1e-4) - d);
      CHECK(e1 < 1e-6);
      if (e1 > kRatioFloor) {
        const double ratio = e1 / std::abs(central(5e-5) - d);
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
      }
    }
  }
  const DerivativeCheckReport report = derivative_check(100, 1);
  CHECK(report.max_error < 1e-6);
  CHECK(report.ratio_samples > 50);
  CHECK(report.min_ratio >= 3.5);
  CHECK(report.max_ratio <= 4.5);
  CHECK(report.max_coefficient_error < 1e-6);
}

TEST_CASE("feasibility") {
  for (double rv : {0.45, 0.48, 0.493}) {
    const Inradius r(rv);
    const ReuleauxPolygon p = build_optimal(r);
    CHECK(is_feasible(p, r));
    std::vector<Point2> scaled(p.vertices().begin(), p.vertices().end());
    for (Point2& v : scaled) v = 1.001 * v;
    CHECK_FALSE(is_feasible(ReuleauxPolygon::from_vertices(scaled), r));
    CHECK(max_vertex_radius(p) == doctest::Approx(r.outer()).epsilon(1e-12));
  }
  for (int n = 1; n <= 5; ++n) {
    const ReuleauxPolygon p = build_regular(n);
    CHECK(is_feasible(p, Inradius(regular_inradius(n))));
    CHECK_FALSE(is_feasible(p, Inradius(regular_inradius(n) + 1e-4)));
  }
}

TEST_CASE("descent from the optimal shape stays put") {
  for (double rv : {0.45, 0.48, 0.493}) {
    const Inradius r(rv);
    const DescentResult res = descend(r, build_optimal(r));
    CHECK(res.trace.records.empty());
    CHECK(res.trace.certificate.rigid);
    CHECK_FALSE(res.trace.certificate.arc_floor_blocked);
  }
  CHECK_THROWS_AS(descend(Inradius(0.48), build_optimal(Inradius(0.45))), DomainError);
}

TEST_CASE("descent traces") {
  const Inradius r(0.48);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const ReuleauxPolygon start = random_feasible_start(r, rng);
    const DescentResult res = descend(r, start);
    double prev = exact_area(start);
    for (const TraceRecord& rec : res.trace.records) {
      CHECK(rec.area < prev);
      CHECK(rec.max_vertex_radius <= r.outer() + 1e-12);
      CHECK(rec.sense * rec.derivative < 0.0);
      prev = rec.area;
    }
    CHECK(res.trace.certificate.rigid);
    CHECK(exact_area(res.polygon) >= minimal_area(r) - 1e-9);
    for (const CertificateEntry& e : res.trace.certificate.entries) CHECK(e.feasible_step == 0.0);

    // Deterministic.
    const DescentResult again = descend(r, start);
    CHECK(again.trace.records.size() == res.trace.records.size());
    CHECK(max_vertex_gap(again.polygon, res.polygon) == 0.0);
  }
}

TEST_CASE("non-rigid shapes fail the certificate") {
  const ReuleauxPolygon p = apply_move(build_regular(2), {0, -1e-3});
  const RigidityCertificate cert = rigidity_certificate(p, Inradius(0.46));
  CHECK_FALSE(cert.rigid);
}

TEST_CASE("iteration cap") {
  DescentOptions options;
  options.max_iterations = 2;
  std::mt19937_64 rng(3);
  const Inradius r(0.48);
  CHECK_THROWS_AS(descend(r, random_feasible_start(r, rng), options), ConvergenceError);
}

TEST_CASE("structure of rigid shapes") {
  const Inradius r(0.45);
  const RigidStructure s = detect_structure(build_optimal(r), r);
  REQUIRE(s.clusters.size() == 1);
  CHECK(std::abs(s.clusters[0].h - optimal_h(r)) < 1e-9);
  CHECK(s.extremal_arcs.size() == 2);
  CHECK(std::abs(s.sector_area_sum - s.area) < 1e-12);

  const RigidStructure reg = detect_structure(build_regular(2), Inradius(regular_inradius(2)));
  CHECK(reg.clusters.empty());
  CHECK(reg.extremal_arcs.size() == 5);

  const Inradius t(0.493);
  const double h1 = 0.2;
  const double h2 = optimal_h(t) + extremal_arc_length(t) - h1;
  const std::vector<double> two = {h1, h2, 0, 0, 0, 0, 0};
  const RigidStructure st = detect_structure(build_rigid(t, two), t);
  REQUIRE(st.clusters.size() == 2);
  std::vector<double> hs = {st.clusters[0].h, st.clusters[1].h};
  std::sort(hs.begin(), hs.end());
  CHECK(std::abs(hs[0] - std::min(h1, h2)) < 1e-9);
  CHECK(std::abs(hs[1] - std::max(h1, h2)) < 1e-9);
  CHECK(std::abs(st.sector_area_sum - st.area) < 1e-8);

  // Every vertex strictly inside the outer circle.
  CHECK_THROWS_AS(detect_structure(build_regular(2), Inradius(0.47)), GeometryError);
}

TEST_CASE("lemma gap") {
  CHECK(lemma_gap(Inradius(0.46), 0.0, 0.0) == 0.0);
  const Inradius r(0.46);
  const double l = extremal_arc_length(r);
  CHECK(std::abs(lemma_gap(r, l, l)) < 1e-12);
  double worst = -1.0;
  for (int i = 0; i < 500; ++i) {
    for (int j = 0; j < 500; ++j) worst = std::max(worst, lemma_gap(r, l * i / 499, l * j / 499));
  }
  CHECK(worst <= 1e-12);
  CHECK_THROWS_AS(lemma_gap(r, l + 1e-6, 0.0), DomainError);
}

TEST_CASE("terminal shapes decompose into clusters") {
  int floor_free = 0;
  for (double rv : {0.45, 0.48, 0.493}) {
    const Inradius r(rv);
    for (std::uint64_t i = 0; i < 20; ++i) {
      std::seed_seq seq{std::uint64_t{1}, i};
      std::mt19937_64 rng(seq);
      const DescentResult res = descend(r, random_feasible_start(r, rng));
      if (res.trace.certificate.arc_floor_blocked) continue;
      ++floor_free;
      const RigidStructure s = detect_structure(res.polygon, r);
      CHECK(std::abs(s.sector_area_sum - s.area) <= 1e-8);
      CHECK(s.area >= minimal_area(r) - 1e-9);
    }
  }
  CHECK(floor_free > 0);
  MESSAGE("terminals free of the arc floor: " << floor_free << "/60");
}
