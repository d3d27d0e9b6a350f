#pragma once

// Reuleaux polygons of width 1.
//
// A polygon with M = 2N+1 vertices P_0..P_{M-1} is stored in *index order*:
// consecutive vertices are unit-chord neighbours,
//
//   P_{k+1} = P_k + e^{i alpha_k},   P_{k-1} = P_k + e^{i beta_k},
//
// and the arc Gamma_k is centred at P_k and spans [alpha_k, beta_k]
// counterclockwise, from P_{k+1} to P_{k-1}. Its length is
// j_k = beta_k - alpha_k and beta_{k+1} = alpha_k + pi (mod 2 pi).
//
// Index-consecutive vertices are not boundary neighbours: walking the
// boundary counterclockwise visits P_0, P_{-2}, P_{-4}, ... (indices mod M),
// i.e. arcs Gamma_{M-1}, Gamma_{M-3}, ..., Gamma_0, Gamma_{M-2}, ...

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbiform/formulas.hpp"

namespace orbiform {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Maps an angle to [0, 2 pi).
double normalize_angle(double angle);
/// Direction of p as an angle in [0, 2 pi).
double angle_of(Point2 p);
/// Smallest signed difference a - b, in (-pi, pi].
double angle_difference(double a, double b);

class ReuleauxPolygon {
 public:
  /// Angles and arc lengths are recomputed from the vertex positions.
  static ReuleauxPolygon from_vertices(std::vector<Point2> vertices);

  /// Takes the stored representation verbatim (angles are normalized, arc
  /// lengths derived as beta - alpha mod 2 pi). No consistency checks; use
  /// validate() to audit the result.
  static ReuleauxPolygon from_parts(std::vector<Point2> vertices, std::vector<double> alphas,
                                    std::vector<double> betas);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(vertices_.size()); }
  [[nodiscard]] std::span<const Point2> vertices() const noexcept { return vertices_; }
  [[nodiscard]] std::span<const double> alphas() const noexcept { return alphas_; }
  [[nodiscard]] std::span<const double> betas() const noexcept { return betas_; }
  [[nodiscard]] std::span<const double> arc_lengths() const noexcept { return lengths_; }

  // Cyclic accessors: any integer k is reduced mod size().
  [[nodiscard]] int wrap(int k) const noexcept {
    const int m = size();
    return ((k % m) + m) % m;
  }
  [[nodiscard]] Point2 vertex(int k) const { return vertices_[wrap(k)]; }
  [[nodiscard]] double alpha(int k) const { return alphas_[wrap(k)]; }
  [[nodiscard]] double beta(int k) const { return betas_[wrap(k)]; }
  [[nodiscard]] double arc_length(int k) const { return lengths_[wrap(k)]; }

  /// Vertex indices in counterclockwise boundary order, starting at 0.
  [[nodiscard]] std::vector<int> boundary_order() const;

  [[nodiscard]] ReuleauxPolygon translated(Point2 offset) const;
  /// Rotation about the origin.
  [[nodiscard]] ReuleauxPolygon rotated(double angle) const;
  /// Mirror image under x -> -x, re-indexed to stay counterclockwise.
  [[nodiscard]] ReuleauxPolygon reflected() const;

 private:
  ReuleauxPolygon(std::vector<Point2> v, std::vector<double> a, std::vector<double> b);

  std::vector<Point2> vertices_;
  std::vector<double> alphas_;
  std::vector<double> betas_;
  std::vector<double> lengths_;
};

// ---------------------------------------------------------------------------
// Construction

/// Result of walking alpha_{k+1} = alpha_k + pi - j_{k+1} from an anchor.
struct ArcWalk {
  std::vector<Point2> vertices;  ///< P_0..P_M; P_M should coincide with P_0
  std::vector<double> alphas;    ///< alpha_0..alpha_{M-1}
  double closure_defect = 0.0;   ///< |P_M - P_0|
};

ArcWalk walk_arc_lengths(std::span<const double> lengths, double orientation, Point2 anchor);

/// Builds the polygon with arc lengths j_0..j_{M-1} in index order,
/// alpha_0 = orientation and P_0 = anchor. Throws GeometryError for an even
/// or short length list, arcs <= 1e-9, perimeter off pi by more than 1e-9,
/// or closure defect above 1e-9.
ReuleauxPolygon build_from_arc_lengths(std::span<const double> lengths, double orientation = 0.0,
                                       Point2 anchor = {});

/// Regular Reuleaux (2n+1)-gon centred at the origin with P_0 on the
/// positive y-axis.
ReuleauxPolygon build_regular(int n);

/// Arc lengths of a rigid shape described by cluster slots, in index order.
/// A slot with h = 0 contributes one extremal arc, h = l(r) three extremal
/// arcs, anything in between the cluster triple (b, a, b).
struct RigidLayout {
  std::vector<double> lengths;
  /// Index of the interior vertex of each non-degenerate cluster.
  std::vector<int> cluster_vertices;
};

RigidLayout rigid_layout(Inradius r, std::span<const double> h);

/// Rigid shape with the given cluster parameters, centred at the origin.
/// The first cluster's interior vertex sits on the negative y-axis; with no
/// proper cluster P_0 sits on the positive y-axis. Throws DomainError when
/// sum(2 h_i + l) differs from pi by more than 1e-9 or an h_i is out of
/// range.
ReuleauxPolygon build_rigid(Inradius r, std::span<const double> h);

/// The optimal shape for inradius r: the regular (2N+1)-gon at regular
/// values, the single-cluster rigid shape otherwise. Throws DegenerateDisk
/// at r = 1/2.
ReuleauxPolygon build_optimal(Inradius r);

/// Same polygon translated so its minimal-annulus centre is the origin.
ReuleauxPolygon recentered(const ReuleauxPolygon& poly);

// ---------------------------------------------------------------------------
// Measurement

/// Area = shoelace over the boundary-ordered vertices plus the circular
/// segments (j - sin j)/2. Throws GeometryError on malformed input.
double exact_area(const ReuleauxPolygon& poly);

struct Circle {
  Point2 center;
  double radius = 0.0;
};

/// Smallest circle enclosing the points (randomized incremental, fixed
/// shuffle seed, so results are deterministic).
Circle smallest_enclosing_circle(std::span<const Point2> points);

struct AnnulusReport {
  Point2 center;
  double outer_radius = 0.0;  ///< R
  double inner_radius = 0.0;  ///< rho = 1 - R
  std::vector<double> vertex_radii;
  std::vector<bool> on_outer;  ///< |P_k - center| >= R - 1e-7
};

/// Minimal annulus. For a width-1 Reuleaux polygon the circumcircle is the
/// smallest circle around the vertices: along an arc the distance to an
/// interior centre O is unimodal with its minimum 1 - |P_k - O| at the
/// point opposite P_k, so the maximum sits at vertices and the inradius is
/// 1 - max_k |P_k - O|.
AnnulusReport minimal_annulus(const ReuleauxPolygon& poly);

/// Support function h(theta) = max over the boundary of <x, e^{i theta}>,
/// evaluated arc by arc.
double support_function(const ReuleauxPolygon& poly, double theta);
/// Width in direction theta: h(theta) + h(theta + pi).
double support_width(const ReuleauxPolygon& poly, double theta);

/// Closed-body membership: the body is the intersection of the unit disks
/// about its vertices.
bool contains(const ReuleauxPolygon& poly, Point2 p, double tol = 0.0);

/// Euclidean distance from p to the boundary curve.
double distance_to_boundary(const ReuleauxPolygon& poly, Point2 p);

struct ValidationCheck {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  /// Vertices on the outercircle (within 1e-7), when an inradius was given.
  int outer_vertex_count = 0;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] const ValidationCheck* find(std::string_view name) const;
};

/// Audits the polygon invariants (odd count, unit chords, angle relation,
/// perimeter pi, positive arcs, constant width) and, with r, the annulus
/// membership max_k |P_k - O| <= 1 - r + 1e-9 about the minimal-annulus
/// centre O.
ValidationReport validate(const ReuleauxPolygon& poly, std::optional<Inradius> r = std::nullopt);

struct BoundarySample {
  std::vector<Point2> points;  ///< closed trace, first == last
  std::vector<int> arc_index;  ///< arc each point was sampled from
};

/// Counterclockwise trace of the boundary with spacing at most step.
BoundarySample sample_boundary(const ReuleauxPolygon& poly, double step);

struct HausdorffOptions {
  double step = 1e-4;         ///< boundary sampling for the final value
  double coarse_step = 2e-3;  ///< boundary sampling during the rotation scan
  int coarse_angles = 1024;
};

/// Symmetric Hausdorff distance between the boundaries, from boundary
/// samples of each curve to the exact other curve. With align, both
/// polygons are recentred and the distance is minimized over rotations and
/// a reflection of q.
double hausdorff_distance(const ReuleauxPolygon& p, const ReuleauxPolygon& q, bool align,
                          const HausdorffOptions& options = {});

}  // namespace orbiform
