#include "orbiform/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "orbiform/errors.hpp"
#include "parallel.hpp"

namespace orbiform {

namespace {

// Rounds x to the nearest integer when it lies within 1e-9 of it, so that
// pi/l at regular values does not fall on the wrong side of floor/ceil.
double snap(double x) {
  const double nearest = std::round(x);
  return std::abs(x - nearest) <= 1e-9 ? nearest : x;
}

}  // namespace

OptimalShapeReport solve(Inradius r) {
  OptimalShapeReport report;
  report.r = r.value();
  if (r.is_disk()) {
    report.disk = true;
    report.area = minimal_area(r);
    return report;
  }
  report.n = optimal_n(r);
  report.ell = extremal_arc_length(r);
  report.h = optimal_h(r);
  report.a = cluster_arc_a(r, report.h);
  report.b = cluster_arc_b(r, report.h);
  report.area = minimal_area(r);
  report.regular = is_regular_value(r);
  report.polygon = build_optimal(r);
  return report;
}

SlotRange m_range(Inradius r) {
  if (r.is_disk()) throw DegenerateDisk();
  const double ell = extremal_arc_length(r);
  auto lo = static_cast<int>(std::ceil(snap(kPi / (3.0 * ell))));
  auto hi = static_cast<int>(std::floor(snap(kPi / ell)));
  if (lo % 2 == 0) ++lo;
  if (hi % 2 == 0) --hi;
  // A single slot fits only at r_3, where it is the triangle again.
  lo = std::max(lo, 3);
  return {lo, hi};
}

ExtremeConfig extreme_config(Inradius r, int m_tilde) {
  const SlotRange range = m_range(r);
  if (m_tilde % 2 == 0 || m_tilde < range.min || m_tilde > range.max) {
    throw DomainError("slot count " + std::to_string(m_tilde) + " is not an odd value in [" +
                      std::to_string(range.min) + ", " + std::to_string(range.max) + "]");
  }
  const double ell = extremal_arc_length(r);
  const double x = 1.5 * m_tilde - kPi / (2.0 * ell);
  const double whole = std::floor(x);
  const double delta = x - whole;
  if (is_regular_value(r) || delta < kIdentityTol || delta > 1.0 - kIdentityTol) {
    throw DomainError("regular inradius: the extreme point degenerates (h1 = 0 or l)");
  }
  ExtremeConfig c;
  c.m_tilde = m_tilde;
  c.q = 1 + static_cast<int>(whole);
  c.delta = delta;
  c.h1 = ell * (1.0 - delta);
  c.h.assign(static_cast<std::size_t>(m_tilde), ell);
  c.h[0] = c.h1;
  std::fill(c.h.begin() + 1, c.h.begin() + c.q, 0.0);
  return c;
}

int extreme_side_count(const ExtremeConfig& config) { return 3 + (config.q - 1) + 3 * (config.m_tilde - config.q); }

double multi_cluster_area(Inradius r, std::span<const double> h) {
  if (r.is_disk()) throw DegenerateDisk();
  const double ell = extremal_arc_length(r);
  double constraint = 0.0;
  double area = 0.0;
  for (double hi : h) {
    const double checked = checked_cluster_parameter(r, hi);
    constraint += 2.0 * checked + ell;
    area += sector_area(r, checked);
  }
  if (std::abs(constraint - kPi) > kGeometryTol) {
    throw DomainError("cluster parameters violate sum(2 h_i + l) = pi (got " + std::to_string(constraint) + ")");
  }
  return area;
}

std::vector<double> random_cluster_vector(Inradius r, std::mt19937_64& rng) {
  const SlotRange range = m_range(r);
  const double ell = extremal_arc_length(r);
  std::uniform_int_distribution<int> pick(0, (range.max - range.min) / 2);
  const int m = range.min + 2 * pick(rng);
  const double total = 0.5 * (kPi - m * ell);
  // Sampling the complement l - h_i when the budget exceeds half of m*l keeps
  // the acceptance rate up; the reflection preserves uniformity.
  const bool flip = total > 0.5 * m * ell;
  const double budget = flip ? m * ell - total : total;
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> h(static_cast<std::size_t>(m));
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    double sum = 0.0;
    for (double& x : h) sum += (x = expo(rng));
    bool ok = true;
    for (double& x : h) {
      x = budget * x / sum;
      if (x > ell) ok = false;
    }
    if (!ok) continue;
    if (flip) {
      for (double& x : h) x = ell - x;
    }
    for (double& x : h) x = std::clamp(x, 0.0, ell);
    return h;
  }
  throw ConvergenceError("rejection sampling of cluster parameters did not accept a sample");
}

ReuleauxPolygon jiggle(const ReuleauxPolygon& poly, Inradius r, std::mt19937_64& rng, int moves, double max_epsilon) {
  ReuleauxPolygon current = poly;
  std::uniform_int_distribution<int> pick(0, poly.size() - 1);
  std::uniform_real_distribution<double> amount(-max_epsilon, max_epsilon);
  for (int i = 0; i < moves; ++i) {
    const int k = pick(rng);
    double eps = amount(rng);
    bool moved = false;
    for (int halving = 0; halving < 20 && !moved; ++halving, eps *= 0.5) {
      for (double e : {eps, -eps}) {
        try {
          ReuleauxPolygon next = apply_move(current, {k, e});
          if (is_feasible(next, r, 1e-12)) {
            current = std::move(next);
            moved = true;
            break;
          }
        } catch (const GeometryError&) {
        }
      }
    }
  }
  return current;
}

ReuleauxPolygon random_feasible_start(Inradius r, std::mt19937_64& rng, int jiggles, double max_epsilon) {
  const std::vector<double> h = random_cluster_vector(r, rng);
  return jiggle(build_rigid(r, h), r, rng, jiggles, max_epsilon);
}

ConcavityReport scan_concavity(int r_steps, int h_steps) {
  if (r_steps < 2 || h_steps < 2) throw DomainError("concavity scan needs at least a 2x2 grid");
  constexpr double kHMin = 1e-3;
  constexpr double kRMax = 0.4999;
  constexpr double kFd = 1e-4;
  struct Row {
    double max_value;
    double at_zero;
    double fd;
  };
  std::vector<Row> rows(static_cast<std::size_t>(r_steps));
  detail::parallel_for(rows.size(), [&](std::size_t i) {
    const Inradius r(kMinInradius + (kRMax - kMinInradius) * static_cast<double>(i) / (r_steps - 1));
    const double ell = extremal_arc_length(r);
    Row row{-std::numeric_limits<double>::infinity(), std::abs(sector_area_d2h(r, 0.0)), 0.0};
    for (int j = 0; j < h_steps; ++j) {
      const double h = kHMin + (ell - kHMin) * j / (h_steps - 1);
      row.max_value = std::max(row.max_value, sector_area_d2h(r, h));
      const double c = std::clamp(h, kFd, ell - kFd);
      const double fd =
          (sector_area(r, c + kFd) - 2.0 * sector_area(r, c) + sector_area(r, c - kFd)) / (kFd * kFd);
      row.fd = std::max(row.fd, std::abs(fd - sector_area_d2h(r, c)));
    }
    rows[i] = row;
  });
  ConcavityReport report;
  report.max_value = -std::numeric_limits<double>::infinity();
  for (const Row& row : rows) {
    report.max_value = std::max(report.max_value, row.max_value);
    report.max_abs_at_zero = std::max(report.max_abs_at_zero, row.at_zero);
    report.max_fd_mismatch = std::max(report.max_fd_mismatch, row.fd);
  }
  report.points = static_cast<std::size_t>(r_steps) * static_cast<std::size_t>(h_steps);
  return report;
}

bool ContinuityReport::passed() const {
  for (const ContinuityRow& row : rows) {
    const double limit = row.delta >= 1e-6 ? 1e-4 : 1e-5;
    if (row.gap_left > limit || row.gap_right > limit) return false;
  }
  return worst_branch_mismatch <= 1e-10 && worst_limit_identity <= 1e-10;
}

ContinuityReport continuity_scan(int n_max) {
  if (n_max < 1) throw DomainError("continuity scan needs n_max >= 1");
  ContinuityReport report;
  for (int n = 1; n <= n_max; ++n) {
    const double rn = regular_inradius(n);
    const Inradius r(rn);
    const double at = minimal_area(r);
    const double f0 = sector_area(r, 0.0);
    const double fl = sector_area(r, extremal_arc_length(r));
    report.worst_branch_mismatch =
        std::max(report.worst_branch_mismatch, std::abs((2 * n + 1) * f0 - ((2 * n - 2) * f0 + fl)));
    report.worst_limit_identity = std::max(report.worst_limit_identity, std::abs(fl - 3.0 * f0));
    for (double delta : {1e-6, 1e-8}) {
      ContinuityRow row{n, rn, delta, 0.0, 0.0};
      // Below r_3 there is nothing to compare with.
      if (rn - delta >= kMinInradius) row.gap_left = std::abs(minimal_area(Inradius(rn - delta)) - at);
      if (rn + delta <= kMaxInradius) row.gap_right = std::abs(minimal_area(Inradius(rn + delta)) - at);
      report.rows.push_back(row);
    }
  }
  return report;
}

LemmaScanReport lemma_gap_scan(int r_count, int grid) {
  if (r_count < 2 || grid < 2) throw DomainError("lemma scan needs at least two r values and a 2x2 grid");
  std::vector<double> worst(static_cast<std::size_t>(r_count));
  detail::parallel_for(worst.size(), [&](std::size_t i) {
    const Inradius r(kMinInradius + (0.4999 - kMinInradius) * static_cast<double>(i) / (r_count - 1));
    const double ell = extremal_arc_length(r);
    double w = -std::numeric_limits<double>::infinity();
    for (int p = 0; p < grid; ++p) {
      const double x = ell * p / (grid - 1);
      for (int q = 0; q < grid; ++q) w = std::max(w, lemma_gap(r, x, ell * q / (grid - 1)));
    }
    worst[i] = w;
  });
  LemmaScanReport report;
  report.max_gap = *std::max_element(worst.begin(), worst.end());
  report.points = static_cast<std::size_t>(r_count) * static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
  return report;
}

DerivativeCheckReport derivative_check(int samples, std::uint64_t seed, double epsilon) {
  struct Sample {
    double error;
    double ratio;
    double coefficient_error;
  };
  std::vector<Sample> out(static_cast<std::size_t>(samples));
  detail::parallel_for(out.size(), [&](std::size_t i) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(seq);
    // Redraw until the arcs touched by the move are at least kDerivativeMinArc.
    std::optional<ReuleauxPolygon> drawn;
    int k = 0;
    for (;;) {
      const Inradius r(std::uniform_real_distribution<double>(0.43, 0.49)(rng));
      drawn = random_feasible_start(r, rng);
      k = std::uniform_int_distribution<int>(0, drawn->size() - 1)(rng);
      bool ok = true;
      for (int j = k - 1; j <= k + 2; ++j) ok = ok && drawn->arc_length(j) >= kDerivativeMinArc;
      if (ok) break;
    }
    const ReuleauxPolygon& poly = *drawn;
    const double d = area_derivative(poly, k);
    auto central = [&](double e) {
      return (exact_area(apply_move(poly, {k, e})) - exact_area(apply_move(poly, {k, -e}))) / (2.0 * e);
    };
    const double e1 = std::abs(central(epsilon) - d);
    const double e2 = std::abs(central(0.5 * epsilon) - d);

    constexpr double kStep = 1e-6;
    const ReuleauxPolygon plus = apply_move(poly, {k, kStep});
    const ReuleauxPolygon minus = apply_move(poly, {k, -kStep});
    const FirstOrderCoefficients c = first_order_coefficients(poly, k);
    const double tau = angle_difference(plus.alpha(k), minus.alpha(k)) / (2.0 * kStep);
    const double sigma = angle_difference(plus.alpha(k + 1), minus.alpha(k + 1)) / (2.0 * kStep);
    out[i] = {e1, e1 / e2, std::max(std::abs(tau - c.tau), std::abs(sigma - c.sigma))};
  });
  DerivativeCheckReport report;
  report.samples = samples;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  for (const Sample& s : out) {
    report.max_error = std::max(report.max_error, s.error);
    if (s.error > kRatioFloor) {
      ++report.ratio_samples;
      report.min_ratio = std::min(report.min_ratio, s.ratio);
      report.max_ratio = std::max(report.max_ratio, s.ratio);
    }
    report.max_coefficient_error = std::max(report.max_coefficient_error, s.coefficient_error);
  }
  return report;
}

std::vector<AreaRow> area_table(double r_min, double r_max, int steps) {
  const Inradius lo(r_min);
  const Inradius hi(r_max);
  if (steps < 1) throw DomainError("area table needs at least one step");
  if (lo.value() > hi.value()) {
    throw DomainError("inverted inradius range: r_min " + std::to_string(r_min) + " > r_max " + std::to_string(r_max));
  }
  std::vector<AreaRow> rows(static_cast<std::size_t>(steps));
  detail::parallel_for(rows.size(), [&](std::size_t i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    const Inradius r(i + 1 == rows.size() && steps > 1 ? hi.value() : lo.value() + (hi.value() - lo.value()) * t);
    AreaRow row;
    row.r = r.value();
    row.area = minimal_area(r);
    if (!r.is_disk()) {
      row.n = optimal_n(r);
      row.ell = extremal_arc_length(r);
      row.h = optimal_h(r);
      row.a = cluster_arc_a(r, row.h);
      row.b = cluster_arc_b(r, row.h);
    }
    rows[i] = row;
  });
  return rows;
}

}  // namespace orbiform
