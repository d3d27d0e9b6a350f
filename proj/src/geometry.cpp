#include "orbiform/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "orbiform/errors.hpp"

namespace orbiform {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kMinArcLength = 1e-9;
constexpr double kMembershipTol = 1e-7;

void require_well_formed(const ReuleauxPolygon& poly) {
  const int m = poly.size();
  if (m < 3 || m % 2 == 0) {
    throw GeometryError("a Reuleaux polygon needs an odd number (>= 3) of arcs, got " + std::to_string(m));
  }
  double perimeter = 0.0;
  for (double j : poly.arc_lengths()) {
    if (!(j > 0.0 && j < kPi)) throw GeometryError("arc length outside (0, pi)");
    perimeter += j;
  }
  if (std::abs(perimeter - kPi) > 1e-6) throw GeometryError("perimeter differs from pi");
}

// Arc k with its endpoint directions cached for fast distance queries.
struct ArcView {
  Point2 center;
  Point2 start_dir;
  Point2 end_dir;
  Point2 start;
  Point2 end;
};

std::vector<ArcView> arc_views(const ReuleauxPolygon& poly) {
  std::vector<ArcView> arcs;
  arcs.reserve(poly.size());
  for (int k = 0; k < poly.size(); ++k) {
    ArcView a;
    a.center = poly.vertex(k);
    a.start_dir = unit_vector(poly.alpha(k));
    a.end_dir = unit_vector(poly.beta(k));
    a.start = a.center + a.start_dir;
    a.end = a.center + a.end_dir;
    arcs.push_back(a);
  }
  return arcs;
}

// Arcs are shorter than pi, so the angular sector test reduces to two
// cross products.
double distance_to_arc(const ArcView& arc, Point2 p) {
  const Point2 d = p - arc.center;
  if (cross(arc.start_dir, d) >= 0.0 && cross(d, arc.end_dir) >= 0.0) {
    return std::abs(norm(d) - 1.0);
  }
  return std::min(norm(p - arc.start), norm(p - arc.end));
}

double distance_to_arcs(std::span<const ArcView> arcs, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& arc : arcs) best = std::min(best, distance_to_arc(arc, p));
  return best;
}

Circle circle_from(Point2 a, Point2 b) { return {0.5 * (a + b), 0.5 * norm(a - b)}; }

Circle circle_from(Point2 a, Point2 b, Point2 c) {
  const Point2 ab = b - a;
  const Point2 ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (std::abs(d) < 1e-300) {
    // Collinear: the widest pair spans the circle.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point2 offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + offset, norm(offset)};
}

bool inside(const Circle& c, Point2 p) { return norm(p - c.center) <= c.radius * (1.0 + 1e-13) + 1e-15; }

ReuleauxPolygon rotate_to(const ReuleauxPolygon& poly, int vertex, double target_angle) {
  const double current = angle_of(poly.vertex(vertex));
  return poly.rotated(target_angle - current);
}

}  // namespace

double normalize_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double angle_of(Point2 p) { return normalize_angle(std::atan2(p.y, p.x)); }

double angle_difference(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -kPi) d += kTwoPi;
  return d;
}

// ---------------------------------------------------------------------------
// ReuleauxPolygon

ReuleauxPolygon::ReuleauxPolygon(std::vector<Point2> v, std::vector<double> a, std::vector<double> b)
    : vertices_(std::move(v)), alphas_(std::move(a)), betas_(std::move(b)) {
  lengths_.resize(vertices_.size());
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    alphas_[k] = normalize_angle(alphas_[k]);
    betas_[k] = normalize_angle(betas_[k]);
    lengths_[k] = normalize_angle(betas_[k] - alphas_[k]);
  }
}

ReuleauxPolygon ReuleauxPolygon::from_vertices(std::vector<Point2> vertices) {
  const int m = static_cast<int>(vertices.size());
  if (m == 0) throw GeometryError("polygon without vertices");
  std::vector<double> alphas(m), betas(m);
  for (int k = 0; k < m; ++k) {
    const Point2 p = vertices[k];
    alphas[k] = angle_of(vertices[(k + 1) % m] - p);
    betas[k] = angle_of(vertices[(k + m - 1) % m] - p);
  }
  return ReuleauxPolygon(std::move(vertices), std::move(alphas), std::move(betas));
}

ReuleauxPolygon ReuleauxPolygon::from_parts(std::vector<Point2> vertices, std::vector<double> alphas,
                                            std::vector<double> betas) {
  if (vertices.empty() || alphas.size() != vertices.size() || betas.size() != vertices.size()) {
    throw GeometryError("vertex and angle lists must be non-empty and of equal length");
  }
  return ReuleauxPolygon(std::move(vertices), std::move(alphas), std::move(betas));
}

std::vector<int> ReuleauxPolygon::boundary_order() const {
  std::vector<int> order(size());
  for (int i = 0; i < size(); ++i) order[i] = wrap(-2 * i);
  return order;
}

ReuleauxPolygon ReuleauxPolygon::translated(Point2 offset) const {
  std::vector<Point2> v(vertices_);
  for (auto& p : v) p = p + offset;
  return ReuleauxPolygon(std::move(v), alphas_, betas_);
}

ReuleauxPolygon ReuleauxPolygon::rotated(double angle) const {
  std::vector<Point2> v(vertices_);
  std::vector<double> a(alphas_), b(betas_);
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = rotate(v[k], angle);
    a[k] += angle;
    b[k] += angle;
  }
  return ReuleauxPolygon(std::move(v), std::move(a), std::move(b));
}

ReuleauxPolygon ReuleauxPolygon::reflected() const {
  const int m = size();
  std::vector<Point2> v(m);
  std::vector<double> a(m), b(m);
  for (int i = 0; i < m; ++i) {
    const int k = wrap(-i);
    v[i] = {-vertices_[k].x, vertices_[k].y};
    a[i] = kPi - betas_[k];
    b[i] = kPi - alphas_[k];
  }
  return ReuleauxPolygon(std::move(v), std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Construction

ArcWalk walk_arc_lengths(std::span<const double> lengths, double orientation, Point2 anchor) {
  const std::size_t m = lengths.size();
  ArcWalk walk;
  walk.vertices.reserve(m + 1);
  walk.alphas.reserve(m);
  walk.vertices.push_back(anchor);
  double alpha = orientation;
  for (std::size_t k = 0; k < m; ++k) {
    walk.alphas.push_back(alpha);
    walk.vertices.push_back(walk.vertices.back() + unit_vector(alpha));
    if (k + 1 < m) alpha += kPi - lengths[k + 1];
  }
  walk.closure_defect = norm(walk.vertices.back() - walk.vertices.front());
  return walk;
}

ReuleauxPolygon build_from_arc_lengths(std::span<const double> lengths, double orientation, Point2 anchor) {
  const std::size_t m = lengths.size();
  if (m < 3 || m % 2 == 0) {
    throw GeometryError("a Reuleaux polygon needs an odd number (>= 3) of arcs, got " + std::to_string(m));
  }
  for (double j : lengths) {
    if (!(j > kMinArcLength)) throw GeometryError("arc length " + std::to_string(j) + " is not positive");
  }
  const double perimeter = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  if (std::abs(perimeter - kPi) > kGeometryTol) {
    throw GeometryError("arc lengths sum to " + std::to_string(perimeter) + ", not pi");
  }
  ArcWalk walk = walk_arc_lengths(lengths, orientation, anchor);
  if (walk.closure_defect > kGeometryTol) {
    throw GeometryError("arc lengths do not close: defect " + std::to_string(walk.closure_defect));
  }
  walk.vertices.pop_back();
  std::vector<double> betas(m);
  for (std::size_t k = 0; k < m; ++k) betas[k] = walk.alphas[(k + m - 1) % m] + kPi;
  return ReuleauxPolygon::from_parts(std::move(walk.vertices), std::move(walk.alphas), std::move(betas));
}

ReuleauxPolygon build_regular(int n) {
  if (n < 1) throw DomainError("regular polygon index must be >= 1");
  const int m = 2 * n + 1;
  const std::vector<double> lengths(m, kPi / m);
  return rotate_to(recentered(build_from_arc_lengths(lengths)), 0, 0.5 * kPi);
}

RigidLayout rigid_layout(Inradius r, std::span<const double> h) {
  if (r.is_disk()) throw DegenerateDisk();
  const double ell = extremal_arc_length(r);
  RigidLayout layout;
  for (double hi : h) {
    hi = checked_cluster_parameter(r, hi);
    const auto arcs = cluster_arcs(r, hi);
    if (arcs.a <= kMinArcLength) {
      layout.lengths.push_back(ell);
    } else if (hi >= ell - kIdentityTol) {
      layout.lengths.insert(layout.lengths.end(), {ell, ell, ell});
    } else {
      layout.cluster_vertices.push_back(static_cast<int>(layout.lengths.size()) + 1);
      layout.lengths.insert(layout.lengths.end(), {arcs.b, arcs.a, arcs.b});
    }
  }
  return layout;
}

ReuleauxPolygon build_rigid(Inradius r, std::span<const double> h) {
  if (r.is_disk()) throw DegenerateDisk();
  if (h.empty()) throw DomainError("a rigid shape needs at least one cluster slot");
  const double ell = extremal_arc_length(r);
  double total = 0.0;
  for (double hi : h) total += 2.0 * checked_cluster_parameter(r, hi) + ell;
  if (std::abs(total - kPi) > kGeometryTol) {
    throw DomainError("cluster parameters violate sum(2 h_i + l) = pi (got " + std::to_string(total) + ")");
  }
  const RigidLayout layout = rigid_layout(r, h);
  if (layout.lengths.size() % 2 == 0) {
    throw DomainError("cluster slots describe an even number of arcs; the slot count must be odd");
  }
  const ReuleauxPolygon centred = recentered(build_from_arc_lengths(layout.lengths));
  if (layout.cluster_vertices.empty()) return rotate_to(centred, 0, 0.5 * kPi);
  return rotate_to(centred, layout.cluster_vertices.front(), 1.5 * kPi);
}

ReuleauxPolygon build_optimal(Inradius r) {
  const int n = optimal_n(r);
  if (is_regular_value(r)) return build_regular(n);
  std::vector<double> h(2 * n - 1, 0.0);
  h.front() = optimal_h(r);
  return build_rigid(r, h);
}

ReuleauxPolygon recentered(const ReuleauxPolygon& poly) {
  const Circle c = smallest_enclosing_circle(poly.vertices());
  return poly.translated(-c.center);
}

// ---------------------------------------------------------------------------
// Measurement

double exact_area(const ReuleauxPolygon& poly) {
  require_well_formed(poly);
  const auto order = poly.boundary_order();
  double twice_shoelace = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    twice_shoelace += cross(poly.vertex(order[i]), poly.vertex(order[(i + 1) % order.size()]));
  }
  double segments = 0.0;
  for (double j : poly.arc_lengths()) segments += j - std::sin(j);
  return 0.5 * (twice_shoelace + segments);
}

Circle smallest_enclosing_circle(std::span<const Point2> points) {
  if (points.empty()) throw GeometryError("no points to enclose");
  std::vector<Point2> p(points.begin(), points.end());
  std::mt19937_64 rng(0x5eedc1c1eULL);
  std::shuffle(p.begin(), p.end(), rng);
  Circle c{p[0], 0.0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (inside(c, p[i])) continue;
    c = {p[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, p[j])) continue;
      c = circle_from(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!inside(c, p[k])) c = circle_from(p[i], p[j], p[k]);
      }
    }
  }
  return c;
}

AnnulusReport minimal_annulus(const ReuleauxPolygon& poly) {
  require_well_formed(poly);
  AnnulusReport report;
  report.center = smallest_enclosing_circle(poly.vertices()).center;
  for (const Point2& v : poly.vertices()) report.vertex_radii.push_back(norm(v - report.center));
  report.outer_radius = *std::max_element(report.vertex_radii.begin(), report.vertex_radii.end());
  report.inner_radius = 1.0 - report.outer_radius;
  for (double radius : report.vertex_radii) {
    report.on_outer.push_back(radius >= report.outer_radius - kMembershipTol);
  }
  return report;
}

double support_function(const ReuleauxPolygon& poly, double theta) {
  const Point2 u = unit_vector(theta);
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < poly.size(); ++k) {
    const Point2 c = poly.vertex(k);
    double value;
    if (normalize_angle(theta - poly.alpha(k)) <= poly.arc_length(k)) {
      value = dot(c, u) + 1.0;
    } else {
      value = std::max(dot(c + unit_vector(poly.alpha(k)), u), dot(c + unit_vector(poly.beta(k)), u));
    }
    best = std::max(best, value);
  }
  return best;
}

double support_width(const ReuleauxPolygon& poly, double theta) {
  return support_function(poly, theta) + support_function(poly, theta + kPi);
}

bool contains(const ReuleauxPolygon& poly, Point2 p, double tol) {
  for (const Point2& v : poly.vertices()) {
    if (norm(p - v) > 1.0 + tol) return false;
  }
  return true;
}

double distance_to_boundary(const ReuleauxPolygon& poly, Point2 p) {
  const auto arcs = arc_views(poly);
  return distance_to_arcs(arcs, p);
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate(const ReuleauxPolygon& poly, std::optional<Inradius> r) {
  ValidationReport report;
  auto add = [&](std::string name, double defect, double tolerance) {
    report.checks.push_back({std::move(name), defect, tolerance, defect <= tolerance});
  };
  const int m = poly.size();
  add("odd_arc_count", (m >= 3 && m % 2 == 1) ? 0.0 : 1.0, 0.0);

  double chord = 0.0, endpoints = 0.0, relation = 0.0, perimeter = 0.0;
  double shortest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k) {
    const Point2 p = poly.vertex(k);
    chord = std::max(chord, std::abs(norm(poly.vertex(k + 1) - p) - 1.0));
    endpoints = std::max(endpoints, norm(p + unit_vector(poly.alpha(k)) - poly.vertex(k + 1)));
    endpoints = std::max(endpoints, norm(p + unit_vector(poly.beta(k)) - poly.vertex(k - 1)));
    relation = std::max(relation, std::abs(angle_difference(poly.beta(k + 1), poly.alpha(k) + kPi)));
    perimeter += poly.arc_length(k);
    shortest = std::min(shortest, poly.arc_length(k));
  }
  add("unit_chords", chord, kGeometryTol);
  add("arc_endpoints", endpoints, kGeometryTol);
  add("angle_relation", relation, kGeometryTol);
  add("perimeter", std::abs(perimeter - kPi), kGeometryTol);
  add("positive_arcs", std::max(0.0, kMinArcLength - shortest), 0.0);

  double width = 0.0;
  constexpr int kDirections = 360;
  for (int i = 0; i < kDirections; ++i) {
    width = std::max(width, std::abs(support_width(poly, kPi * i / kDirections) - 1.0));
  }
  add("constant_width", width, kGeometryTol);

  if (r) {
    const Circle c = smallest_enclosing_circle(poly.vertices());
    double farthest = 0.0;
    for (const Point2& v : poly.vertices()) {
      const double radius = norm(v - c.center);
      farthest = std::max(farthest, radius);
      if (radius >= r->outer() - kMembershipTol) ++report.outer_vertex_count;
    }
    add("annulus", std::max(0.0, farthest - r->outer()), kGeometryTol);
  }
  return report;
}

BoundarySample sample_boundary(const ReuleauxPolygon& poly, double step) {
  if (!(step > 0.0)) throw DomainError("sampling step must be positive");
  BoundarySample sample;
  const int m = poly.size();
  int k = -1;
  for (int i = 0; i < m; ++i, k -= 2) {
    const int arc = poly.wrap(k);
    const double length = poly.arc_length(arc);
    const int segments = std::max(1, static_cast<int>(std::ceil(length / step)));
    const Point2 c = poly.vertex(arc);
    for (int s = 0; s < segments; ++s) {
      sample.points.push_back(c + unit_vector(poly.alpha(arc) + length * s / segments));
      sample.arc_index.push_back(arc);
    }
  }
  const int last = poly.wrap(k + 2);
  sample.points.push_back(poly.vertex(last) + unit_vector(poly.beta(last)));
  sample.arc_index.push_back(last);
  return sample;
}

namespace {

double directed_distance(std::span<const Point2> samples, std::span<const ArcView> arcs, double cos_t = 1.0,
                         double sin_t = 0.0) {
  double worst = 0.0;
  for (const Point2& s : samples) {
    const Point2 p{cos_t * s.x - sin_t * s.y, sin_t * s.x + cos_t * s.y};
    worst = std::max(worst, distance_to_arcs(arcs, p));
  }
  return worst;
}

// Hausdorff distance between p and q rotated by angle, with samples of q
// given in q's own frame.
double rotated_distance(std::span<const Point2> p_samples, std::span<const ArcView> p_arcs,
                        std::span<const Point2> q_samples, const ReuleauxPolygon& q, double angle) {
  const auto q_arcs = arc_views(q.rotated(angle));
  const double c = std::cos(angle), s = std::sin(angle);
  return std::max(directed_distance(p_samples, q_arcs), directed_distance(q_samples, p_arcs, c, s));
}

}  // namespace

double hausdorff_distance(const ReuleauxPolygon& p, const ReuleauxPolygon& q, bool align,
                          const HausdorffOptions& options) {
  if (!align) {
    const auto sp = sample_boundary(p, options.step);
    const auto sq = sample_boundary(q, options.step);
    return std::max(directed_distance(sp.points, arc_views(q)), directed_distance(sq.points, arc_views(p)));
  }

  const ReuleauxPolygon pc = recentered(p);
  const auto p_arcs = arc_views(pc);
  const auto p_coarse = sample_boundary(pc, options.coarse_step).points;
  const auto p_fine = sample_boundary(pc, options.step).points;
  const double bracket = kTwoPi / options.coarse_angles;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);

  double best = std::numeric_limits<double>::infinity();
  const ReuleauxPolygon qc = recentered(q);
  for (const ReuleauxPolygon& candidate : {qc, qc.reflected()}) {
    const auto q_coarse = sample_boundary(candidate, options.coarse_step).points;
    const auto q_fine = sample_boundary(candidate, options.step).points;

    // Coarse scan, keeping the two best seeds.
    std::array<std::pair<double, double>, 2> seeds{{{std::numeric_limits<double>::infinity(), 0.0},
                                                    {std::numeric_limits<double>::infinity(), 0.0}}};
    for (int i = 0; i < options.coarse_angles; ++i) {
      const double angle = bracket * i;
      const double d = rotated_distance(p_coarse, p_arcs, q_coarse, candidate, angle);
      if (d < seeds[0].first) {
        seeds[1] = seeds[0];
        seeds[0] = {d, angle};
      } else if (d < seeds[1].first) {
        seeds[1] = {d, angle};
      }
    }

    // Golden-section refinement on the coarse samples; the fine samples are
    // only evaluated at the refined angle and at the seed.
    for (const auto& [unused, seed] : seeds) {
      auto f = [&](double angle) { return rotated_distance(p_coarse, p_arcs, q_coarse, candidate, angle); };
      double lo = seed - bracket, hi = seed + bracket;
      double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
      double f1 = f(x1), f2 = f(x2);
      while (hi - lo > 1e-7) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - inv_phi * (hi - lo);
          f1 = f(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + inv_phi * (hi - lo);
          f2 = f(x2);
        }
      }
      auto fine = [&](double angle) { return rotated_distance(p_fine, p_arcs, q_fine, candidate, angle); };
      best = std::min({best, fine(f1 < f2 ? x1 : x2), fine(seed)});
    }
  }
  return best;
}

}  // namespace orbiform
