#include "orbiform/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <tuple>

#include "orbiform/errors.hpp"

namespace orbiform {

ReuleauxPolygon apply_move(const ReuleauxPolygon& poly, BlaschkeMove move) {
  const int m = poly.size();
  const int k = poly.wrap(move.k);
  std::vector<Point2> v(poly.vertices().begin(), poly.vertices().end());

  const Point2 moved = poly.vertex(k - 1) + unit_vector(poly.alpha(k - 1) + move.epsilon);
  const Point2 pivot = poly.vertex(k + 2);
  const Point2 diff = pivot - moved;
  const double d = norm(diff);
  if (!(d > 1e-12) || d > 2.0) {
    throw GeometryError("Blaschke move leaves no intersection of the unit circles (step too large)");
  }
  const Point2 mid = 0.5 * (moved + pivot);
  const double offset = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
  const Point2 normal{-diff.y / d, diff.x / d};
  const Point2 old_next = poly.vertex(k + 1);
  const Point2 c1 = mid + offset * normal;
  const Point2 c2 = mid - offset * normal;
  v[k] = moved;
  v[poly.wrap(k + 1)] = norm(c1 - old_next) <= norm(c2 - old_next) ? c1 : c2;

  ReuleauxPolygon result = ReuleauxPolygon::from_vertices(std::move(v));
  double perimeter = 0.0;
  for (double j : result.arc_lengths()) {
    if (!(j > kMinMoveArc) || j >= kPi) throw ArcCollapse("Blaschke move collapses an arc");
    perimeter += j;
  }
  if (std::abs(perimeter - kPi) > kGeometryTol || m != result.size()) {
    throw GeometryError("Blaschke move breaks the arc structure");
  }
  return result;
}

FirstOrderCoefficients first_order_coefficients(const ReuleauxPolygon& poly, int k) {
  const double next = poly.arc_length(k + 1);
  if (next < kGeometryTol || next > kPi - kGeometryTol) {
    throw DomainError("first-order coefficients are singular for an arc of length ~0 or ~pi");
  }
  const double s = std::sin(next);
  return {std::sin(poly.arc_length(k)) / s, std::sin(poly.alpha(k - 1) - poly.alpha(k + 1)) / s};
}

double area_derivative(double jk, double jk1) {
  return 2.0 * std::sin(0.5 * jk) / std::cos(0.5 * jk1) * std::sin(0.5 * (jk - jk1));
}

double area_derivative_expanded(double jk, double jk1) {
  return 1.0 - std::cos(jk) - std::sin(jk) / std::sin(jk1) * (1.0 - std::cos(jk1));
}

double area_derivative(const ReuleauxPolygon& poly, int k) {
  return area_derivative(poly.arc_length(k), poly.arc_length(k + 1));
}

double max_vertex_radius(const ReuleauxPolygon& poly) {
  double worst = 0.0;
  for (const Point2& v : poly.vertices()) worst = std::max(worst, norm(v));
  return worst;
}

bool is_feasible(const ReuleauxPolygon& poly, Inradius r, double tol) {
  return max_vertex_radius(poly) <= r.outer() + tol;
}

namespace {

struct Trial {
  ReuleauxPolygon polygon;
  double step;
  double area;
};

struct SearchResult {
  std::optional<Trial> trial;
  bool hit_arc_floor = false;
};

// Backtracking search for an admissible step in the given sense: feasible,
// structure-preserving and lowering the area by more than min_decrease.
SearchResult line_search(const ReuleauxPolygon& poly, double area, int k, int sense, Inradius r,
                         const DescentOptions& options) {
  SearchResult result;
  for (double t = options.step0; t >= options.min_step; t *= 0.5) {
    try {
      ReuleauxPolygon next = apply_move(poly, {k, sense * t});
      if (!is_feasible(next, r, options.feasibility_tol)) continue;
      const double next_area = exact_area(next);
      if (next_area < area - options.min_decrease) {
        result.trial = Trial{std::move(next), t, next_area};
        return result;
      }
    } catch (const ArcCollapse&) {
      result.hit_arc_floor = true;
    } catch (const GeometryError&) {
      // Too far for this step; halve.
    }
  }
  return result;
}

struct Candidate {
  double rate;
  int k;
  int sense;
  double derivative;
};

// Descent directions, steepest first; ties by k, then the positive sense.
std::vector<Candidate> descent_candidates(const ReuleauxPolygon& poly, const DescentOptions& options) {
  std::vector<Candidate> out;
  for (int k = 0; k < poly.size(); ++k) {
    const double d = area_derivative(poly, k);
    for (int sense : {+1, -1}) {
      const double rate = sense * d;
      if (rate < -options.derivative_tol) out.push_back({rate, k, sense, d});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.rate, a.k, b.sense) < std::tie(b.rate, b.k, a.sense);
  });
  return out;
}

}  // namespace

RigidityCertificate rigidity_certificate(const ReuleauxPolygon& poly, Inradius r, const DescentOptions& options) {
  RigidityCertificate cert;
  cert.rigid = true;
  const double area = exact_area(poly);
  for (int k = 0; k < poly.size(); ++k) {
    const double d = area_derivative(poly, k);
    for (int sense : {+1, -1}) {
      CertificateEntry entry{k, sense, sense * d, 0.0, 0.0};
      if (entry.rate < -options.derivative_tol) {
        const SearchResult search = line_search(poly, area, k, sense, r, options);
        if (search.trial) {
          entry.feasible_step = search.trial->step;
          entry.decrease = area - search.trial->area;
          cert.rigid = false;
        } else if (search.hit_arc_floor) {
          entry.blocked_by_arc_floor = true;
          cert.arc_floor_blocked = true;
        }
      }
      cert.entries.push_back(entry);
    }
  }
  return cert;
}

DescentResult descend(Inradius r, const ReuleauxPolygon& start, const DescentOptions& options) {
  if (!is_feasible(start, r, options.feasibility_tol)) {
    throw DomainError("descent start lies outside the annulus of inradius " + std::to_string(r.value()));
  }
  ReuleauxPolygon current = start;
  double area = exact_area(current);
  DescentTrace trace;
  for (long step = 1;; ++step) {
    std::optional<Trial> accepted;
    Candidate chosen{};
    for (const Candidate& c : descent_candidates(current, options)) {
      accepted = line_search(current, area, c.k, c.sense, r, options).trial;
      if (accepted) {
        chosen = c;
        break;
      }
    }
    if (!accepted) break;
    if (step > options.max_iterations) {
      throw ConvergenceError("Blaschke descent exceeded " + std::to_string(options.max_iterations) + " moves");
    }
    current = std::move(accepted->polygon);
    area = accepted->area;
    trace.records.push_back({step, chosen.k, chosen.sense, chosen.sense * accepted->step, area,
                             max_vertex_radius(current), chosen.derivative});
  }
  trace.certificate = rigidity_certificate(current, r, options);
  return {std::move(current), std::move(trace)};
}

RigidStructure detect_structure(const ReuleauxPolygon& poly, Inradius r, double tol) {
  const int m = poly.size();
  const double outer_radius = r.outer();
  const double ell = extremal_arc_length(r);
  std::vector<bool> outer(m);
  for (int k = 0; k < m; ++k) outer[k] = norm(poly.vertex(k)) >= outer_radius - tol;
  auto on_outer = [&](int k) { return static_cast<bool>(outer[poly.wrap(k)]); };

  RigidStructure s;
  std::vector<bool> in_cluster(m, false);
  for (int k = 0; k < m; ++k) {
    if (on_outer(k)) continue;
    if (!on_outer(k - 1) || !on_outer(k + 1)) {
      throw GeometryError("vertices " + std::to_string(k) + " and a neighbour are both interior: not rigid");
    }
    if (!on_outer(k - 2) || !on_outer(k + 2)) {
      throw GeometryError("interior vertices two apart around vertex " + std::to_string(k) + ": not rigid");
    }
    const Point2 next = poly.vertex(k + 1);
    const Point2 prev = poly.vertex(k - 1);
    const double h = 0.5 * std::atan2(std::abs(cross(next, prev)), dot(next, prev));
    s.clusters.push_back({k, std::clamp(h, 0.0, ell)});
    for (int j : {k - 1, k, k + 1}) in_cluster[poly.wrap(j)] = true;
  }
  for (int k = 0; k < m; ++k) {
    if (!in_cluster[k]) s.extremal_arcs.push_back(k);
  }
  for (const auto& c : s.clusters) s.sector_area_sum += sector_area(r, c.h);
  s.sector_area_sum += static_cast<double>(s.extremal_arcs.size()) * sector_area(r, 0.0);
  s.area = exact_area(poly);
  return s;
}

double lemma_gap(Inradius r, double x, double y) {
  x = checked_cluster_parameter(r, x);
  y = checked_cluster_parameter(r, y);
  const double outer = r.outer();
  auto lift = [outer](double t) { return std::asin(std::min(1.0, std::sin(0.5 * t) / outer)); };
  return lift(x) + lift(y) - 0.5 * (x + y) - std::max(x, y);
}

}  // namespace orbiform
