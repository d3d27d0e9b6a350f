#pragma once

// Closed-form scalar functions for width-1 bodies of constant width with a
// prescribed inradius: extremal arc length, cluster arc lengths, the area of
// cluster sectors and its derivatives, and the minimal area A(r).
//
// Conventions: r is the inradius, R = 1 - r the circumradius, h the
// characteristic half-angle of a cluster, all angles in radians.

#include <numbers>

namespace orbiform {

inline constexpr double kPi = std::numbers::pi;
/// Inradius of the Reuleaux triangle, the smallest possible inradius.
inline constexpr double kMinInradius = 1.0 - std::numbers::inv_sqrt3;
/// Inradius of the disk, the largest possible inradius.
inline constexpr double kMaxInradius = 0.5;

/// Tolerance for algebraic identities and endpoint snapping.
inline constexpr double kIdentityTol = 1e-12;
/// Tolerance for constructed geometry (closure, chords, perimeter).
inline constexpr double kGeometryTol = 1e-9;

/// Inradius of a width-1 body; always within [1 - 1/sqrt(3), 1/2].
class Inradius {
 public:
  /// Throws DomainError outside the closed admissible interval.
  explicit Inradius(double value);

  [[nodiscard]] double value() const noexcept { return value_; }
  /// Circumradius 1 - r.
  [[nodiscard]] double outer() const noexcept { return 1.0 - value_; }
  [[nodiscard]] bool is_disk() const noexcept { return value_ == kMaxInradius; }

 private:
  double value_;
};

struct ArcLengthTriple {
  double ell = 0.0;  ///< extremal arc
  double a = 0.0;    ///< arc opposite the interior cluster vertex
  double b = 0.0;    ///< the two arcs meeting at the interior cluster vertex
};

/// l(r) = 2 atan(sqrt(4(1-r)^2 - 1)).
double extremal_arc_length(Inradius r);

/// Validates a cluster parameter against [0, l(r)]. Values within 1e-12
/// outside the interval are clamped; anything further out throws DomainError.
double checked_cluster_parameter(Inradius r, double h);

/// a(r,h) = 2 asin((1-r) sin h).
double cluster_arc_a(Inradius r, double h);
/// b(r,h) = h + (l(r) - a(r,h)) / 2.
double cluster_arc_b(Inradius r, double h);
ArcLengthTriple cluster_arcs(Inradius r, double h);

/// F(r,h): area of the three origin-based sectors of a cluster with
/// parameter h. F(r,0) is the sector of a single extremal arc.
double sector_area(Inradius r, double h);
/// F(r,0) in its reduced form (1-r)^2 sin l cos l + (l - sin l)/2.
double extremal_sector_area(Inradius r);
/// dF/dh.
double sector_area_dh(Inradius r, double h);
/// d2F/dh2. Vanishes at h = 0, negative on (0, l(r)].
double sector_area_d2h(Inradius r, double h);

/// Inradius of the regular Reuleaux (2n+1)-gon, n >= 1.
double regular_inradius(int n);

/// N(r) = ceil(pi/(2 l(r)) - 1/2): the optimal shape has 2N(r)+1 arcs.
/// Throws DegenerateDisk at r = 1/2.
int optimal_n(Inradius r);

/// True when r is within 1e-12 of the inradius of the regular
/// (2N(r)+1)-gon.
bool is_regular_value(Inradius r);

/// h(r) = (pi - (2N(r)-1) l(r)) / 2, the parameter of the single cluster of
/// the optimal shape. Equals l(r) at regular values. Throws DegenerateDisk
/// at r = 1/2.
double optimal_h(Inradius r);

/// A(r): minimal area among width-1 bodies with inradius r.
double minimal_area(Inradius r);

}  // namespace orbiform
