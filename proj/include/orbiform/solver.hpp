#pragma once

// The analytic optimizer: optimal shapes and areas, the extreme points of the
// cluster-parameter polytope, and numeric audits of the concavity and
// continuity facts the optimality argument rests on.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "orbiform/blaschke.hpp"
#include "orbiform/formulas.hpp"
#include "orbiform/geometry.hpp"

namespace orbiform {

struct OptimalShapeReport {
  double r = 0.0;
  int n = 0;  ///< the shape has 2n+1 arcs
  double ell = 0.0;
  double h = 0.0;
  double a = 0.0;
  double b = 0.0;
  double area = 0.0;
  bool regular = false;
  bool disk = false;  ///< r = 1/2: area pi/4 and no polygon
  std::optional<ReuleauxPolygon> polygon;
};

/// Optimal shape and area for inradius r. At r = 1/2 returns the disk
/// variant.
OptimalShapeReport solve(Inradius r);

struct SlotRange {
  int min = 0;
  int max = 0;
};

/// Odd slot counts m compatible with sum(2 h_i + l) = pi and h_i in [0, l]:
/// pi/(3l) <= m <= floor(pi/l). Throws DegenerateDisk at r = 1/2.
SlotRange m_range(Inradius r);

struct ExtremeConfig {
  int m_tilde = 0;
  int q = 0;  ///< one plus the number of zero slots
  double h1 = 0.0;
  double delta = 0.0;
  /// h1, then q-1 zeros, then m_tilde-q copies of l(r).
  std::vector<double> h;
};

/// The unique extreme point of the slot polytope for m_tilde slots.
/// Throws DomainError for even or out-of-range m_tilde and at regular
/// values, where h1 degenerates to 0 or l.
ExtremeConfig extreme_config(Inradius r, int m_tilde);

/// Number of arcs of the shape an extreme configuration describes:
/// 3 + (q - 1) + 3 (m_tilde - q).
int extreme_side_count(const ExtremeConfig& config);

/// sum F(r, h_i) over all slots (degenerate ones included). Throws
/// DomainError when sum(2 h_i + l) differs from pi by more than 1e-9.
double multi_cluster_area(Inradius r, std::span<const double> h);

/// Uniform sample of the slot polytope for an odd slot count drawn
/// uniformly from m_range: a uniform point of the simplex
/// {h >= 0, sum h = (pi - m l)/2}, rejected until every h_i <= l.
std::vector<double> random_cluster_vector(Inradius r, std::mt19937_64& rng);

/// Descent start: the rigid shape of a random_cluster_vector, then up to
/// `jiggles` random moves (|eps| <= max_epsilon; eps, then -eps, halved
/// until feasible with tolerance 1e-12, skipped after 20 halvings). Always
/// feasible for r.
ReuleauxPolygon random_feasible_start(Inradius r, std::mt19937_64& rng, int jiggles = 8, double max_epsilon = 0.05);

/// Random feasible moves applied to poly, as in random_feasible_start.
ReuleauxPolygon jiggle(const ReuleauxPolygon& poly, Inradius r, std::mt19937_64& rng, int moves, double max_epsilon);

struct ConcavityReport {
  double max_value = 0.0;         ///< max d2F/dh2 over grid points with h >= 1e-3
  double max_abs_at_zero = 0.0;   ///< max |d2F/dh2(r, 0)|
  double max_fd_mismatch = 0.0;   ///< vs second differences of F (step 1e-4)
  std::size_t points = 0;
  [[nodiscard]] bool passed() const { return max_value < 0.0 && max_abs_at_zero <= 1e-12; }
};

/// Evaluates d2F/dh2 on an r_steps x h_steps grid over
/// r in [r_3, 0.4999], h in [1e-3, l(r)], plus the h = 0 column.
ConcavityReport scan_concavity(int r_steps, int h_steps);

struct ContinuityRow {
  int n = 0;
  double r = 0.0;
  double delta = 0.0;
  double gap_left = 0.0;   ///< |A(r - delta) - A(r)|
  double gap_right = 0.0;  ///< |A(r + delta) - A(r)|
};

struct ContinuityReport {
  std::vector<ContinuityRow> rows;
  double worst_branch_mismatch = 0.0;  ///< |(2n+1)F(r,0) - ((2n-2)F(r,0) + F(r,l))| at r_{2n+1}
  double worst_limit_identity = 0.0;   ///< |F(r, l(r)) - 3 F(r, 0)|
  [[nodiscard]] bool passed() const;
};

/// Compares A(r_{2n+1} +- delta) with A(r_{2n+1}) for n = 1..n_max and
/// delta in {1e-6, 1e-8}; thresholds 1e-4 and 1e-5 respectively.
ContinuityReport continuity_scan(int n_max);

struct LemmaScanReport {
  double max_gap = 0.0;
  std::size_t points = 0;
};

/// Max of lemma_gap over grid x grid points of [0, l(r)]^2 for r_count
/// values of r evenly spaced over [r_3, 0.4999].
LemmaScanReport lemma_gap_scan(int r_count, int grid);

/// Shortest arc next to a sampled move in derivative_check.
inline constexpr double kDerivativeMinArc = 0.05;
inline constexpr double kRatioFloor = 1e-10;

struct DerivativeCheckReport {
  int samples = 0;
  double max_error = 0.0;  ///< |area_derivative - central difference| at epsilon
  /// error(epsilon) / error(epsilon/2) over the samples whose error at
  /// epsilon exceeds kRatioFloor; below it rounding dominates the quotient.
  int ratio_samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double max_coefficient_error = 0.0;  ///< sigma, tau vs one-sided differences at 1e-6
};

/// Compares area_derivative and first_order_coefficients with differences
/// of the exact move on random feasible shapes (random r in [0.43, 0.49],
/// random k). Deterministic in seed.
DerivativeCheckReport derivative_check(int samples, std::uint64_t seed, double epsilon = 1e-4);

struct AreaRow {
  double r = 0.0;
  int n = 0;
  double ell = 0.0;
  double h = 0.0;
  double a = 0.0;
  double b = 0.0;
  double area = 0.0;
};

/// Rows at steps evenly spaced r in [r_min, r_max] (a single row at r_min
/// when steps == 1). Throws DomainError for an inverted range. The disk
/// row (r = 1/2) reports n = 0 and zero lengths.
std::vector<AreaRow> area_table(double r_min, double r_max, int steps);

}  // namespace orbiform
