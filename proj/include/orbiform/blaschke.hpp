#pragma once

// Blaschke deformations of Reuleaux polygons under an annulus constraint.
//
// The move (k, eps) slides P_k along the arc Gamma_{k-1} (centred at
// P_{k-1}) by eps radians: alpha_{k-1} -> alpha_{k-1} + eps. P_{k+1} then
// follows as the intersection of the unit circles about the new P_k and
// P_{k+2}; all other vertices stay put. The annulus is centred at the origin
// throughout.

#include <vector>

#include "orbiform/formulas.hpp"
#include "orbiform/geometry.hpp"

namespace orbiform {

/// Shortest arc a deformation may leave behind.
inline constexpr double kMinMoveArc = 1e-7;

struct BlaschkeMove {
  int k = 0;
  double epsilon = 0.0;
};

/// Exact finite move. Throws GeometryError when the circles about P_k' and
/// P_{k+2} do not meet, ArcCollapse when an arc would drop below
/// kMinMoveArc.
ReuleauxPolygon apply_move(const ReuleauxPolygon& poly, BlaschkeMove move);

struct FirstOrderCoefficients {
  double sigma = 0.0;  ///< d alpha_{k+1} / d eps
  double tau = 0.0;    ///< d alpha_k / d eps
};

/// sigma = sin j_k / sin j_{k+1}, tau = sin(alpha_{k-1} - alpha_{k+1}) / sin j_{k+1}.
/// Throws DomainError when j_{k+1} is within 1e-9 of 0 or pi.
FirstOrderCoefficients first_order_coefficients(const ReuleauxPolygon& poly, int k);

/// d(area)/d(eps) for the move at P_k, in terms of the arc lengths:
/// 2 sin(j_k/2) / cos(j_{k+1}/2) * sin((j_k - j_{k+1})/2).
double area_derivative(double jk, double jk1);
/// The same derivative in its unsimplified form
/// 1 - cos j_k - (sin j_k / sin j_{k+1}) (1 - cos j_{k+1}).
double area_derivative_expanded(double jk, double jk1);
double area_derivative(const ReuleauxPolygon& poly, int k);

/// Largest vertex distance from the origin.
double max_vertex_radius(const ReuleauxPolygon& poly);

/// The boundary lies in the closed annulus r <= |x| <= 1 - r about the
/// origin iff every vertex lies within the outer circle: the distance from
/// the origin to Gamma_k ranges over [1 - |P_k|, max of its endpoint radii],
/// and endpoints are vertices.
bool is_feasible(const ReuleauxPolygon& poly, Inradius r, double tol = 1e-9);

struct DescentOptions {
  double step0 = 1e-2;            ///< first trial |eps| of the line search
  double min_step = 1e-10;        ///< line-search floor
  double min_decrease = 1e-12;    ///< an accepted move lowers the area by more than this
  double derivative_tol = 1e-12;  ///< rates above -derivative_tol do not count as descent
  double feasibility_tol = 1e-12;
  long max_iterations = 1'000'000;
};

struct TraceRecord {
  long step = 0;
  int k = 0;
  int sense = 0;  ///< +1 or -1
  double epsilon = 0.0;
  double area = 0.0;
  double max_vertex_radius = 0.0;
  double derivative = 0.0;  ///< d(area)/d(eps) at the pre-move polygon
};

struct CertificateEntry {
  int k = 0;
  int sense = 0;
  double rate = 0.0;           ///< sense * d(area)/d(eps)
  double feasible_step = 0.0;  ///< largest admissible descent step found, 0 if none
  double decrease = 0.0;       ///< area drop at feasible_step
  /// A descent direction without an admissible step for which some trial
  /// step would push an arc below kMinMoveArc.
  bool blocked_by_arc_floor = false;
};

/// Per-move table backing the rigidity claim. A move is harmless when its
/// rate is >= -derivative_tol or no step >= min_step is feasible and lowers
/// the area by more than min_decrease.
struct RigidityCertificate {
  std::vector<CertificateEntry> entries;
  bool rigid = false;
  /// Some descent direction is held back by the arc floor rather than by
  /// the annulus; the shape would shed two arcs if topology changes were
  /// allowed.
  bool arc_floor_blocked = false;
};

RigidityCertificate rigidity_certificate(const ReuleauxPolygon& poly, Inradius r, const DescentOptions& options = {});

struct DescentTrace {
  std::vector<TraceRecord> records;
  RigidityCertificate certificate;
};

struct DescentResult {
  ReuleauxPolygon polygon;
  DescentTrace trace;
};

/// Greedy steepest descent over Blaschke moves: each step takes the move
/// with the most negative rate among those admitting a feasible,
/// area-lowering step (halving from step0); ties go to the smaller k, then
/// the positive sense. Stops when no such move exists. Throws DomainError
/// for an infeasible start and ConvergenceError past max_iterations.
DescentResult descend(Inradius r, const ReuleauxPolygon& start, const DescentOptions& options = {});

struct ClusterInfo {
  int vertex = 0;  ///< interior vertex P_k; the cluster is Gamma_{k-1}, Gamma_k, Gamma_{k+1}
  double h = 0.0;  ///< half the angle P_{k+1} O P_{k-1}
};

struct RigidStructure {
  std::vector<ClusterInfo> clusters;
  std::vector<int> extremal_arcs;
  double sector_area_sum = 0.0;  ///< sum of F(r, h_i) plus F(r, 0) per extremal arc
  double area = 0.0;             ///< exact_area of the polygon
};

/// Splits a rigid shape (centred at the origin) into clusters and extremal
/// arcs. A vertex counts as on the outer circle when |P_k| >= 1 - r - tol.
/// Throws GeometryError when interior vertices are adjacent or two apart in
/// index order, which no rigid shape allows.
RigidStructure detect_structure(const ReuleauxPolygon& poly, Inradius r, double tol = 1e-7);

/// asin(sin(x/2)/(1-r)) + asin(sin(y/2)/(1-r)) - (x+y)/2 - max(x, y), for
/// x, y in [0, l(r)]. Never positive.
double lemma_gap(Inradius r, double x, double y);

}  // namespace orbiform
