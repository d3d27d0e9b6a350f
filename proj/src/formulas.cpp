#include "orbiform/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbiform/errors.hpp"

namespace orbiform {

namespace {

std::string interval_message(double r) {
  return "inradius " + std::to_string(r) + " outside the admissible interval [1 - 1/sqrt(3), 1/2] = [" +
         std::to_string(kMinInradius) + ", 0.5]";
}

}  // namespace

Inradius::Inradius(double value) : value_(value) {
  if (!std::isfinite(value)) throw DomainError("inradius must be finite");
  if (value < kMinInradius) {
    if (value < kMinInradius - kIdentityTol) throw DomainError(interval_message(value));
    value_ = kMinInradius;
  } else if (value > kMaxInradius) {
    if (value > kMaxInradius + kIdentityTol) throw DomainError(interval_message(value));
    value_ = kMaxInradius;
  }
}

double extremal_arc_length(Inradius r) {
  const double outer = r.outer();
  const double radicand = std::max(0.0, 4.0 * outer * outer - 1.0);
  return 2.0 * std::atan(std::sqrt(radicand));
}

double checked_cluster_parameter(Inradius r, double h) {
  const double ell = extremal_arc_length(r);
  if (!std::isfinite(h) || h < -kIdentityTol || h > ell + kIdentityTol) {
    throw DomainError("cluster parameter " + std::to_string(h) + " outside [0, " + std::to_string(ell) + "]");
  }
  return std::clamp(h, 0.0, ell);
}

double cluster_arc_a(Inradius r, double h) {
  h = checked_cluster_parameter(r, h);
  const double s = std::min(1.0, r.outer() * std::sin(h));
  return 2.0 * std::asin(s);
}

double cluster_arc_b(Inradius r, double h) {
  h = checked_cluster_parameter(r, h);
  return h + 0.5 * (extremal_arc_length(r) - cluster_arc_a(r, h));
}

ArcLengthTriple cluster_arcs(Inradius r, double h) {
  h = checked_cluster_parameter(r, h);
  ArcLengthTriple t;
  t.ell = extremal_arc_length(r);
  t.a = cluster_arc_a(r, h);
  t.b = h + 0.5 * (t.ell - t.a);
  return t;
}

double sector_area(Inradius r, double h) {
  h = checked_cluster_parameter(r, h);
  const double x = r.outer();
  const auto [ell, a, b] = cluster_arcs(r, h);
  // Isosceles triangle and segment under the a-arc, then twice the
  // (triangle + segment) under each b-arc.
  return x * x * std::sin(h) * std::cos(h) + 0.5 * (a - std::sin(a)) +
         x * (std::cos(0.5 * a) - x * std::cos(h)) * std::sin(h + ell) + b - std::sin(b);
}

double extremal_sector_area(Inradius r) {
  const double x = r.outer();
  const double ell = extremal_arc_length(r);
  return x * x * std::sin(ell) * std::cos(ell) + 0.5 * (ell - std::sin(ell));
}

double sector_area_dh(Inradius r, double h) {
  h = checked_cluster_parameter(r, h);
  const double x = r.outer();
  const double half_a_cos = std::cos(0.5 * cluster_arc_a(r, h));
  const double s = std::sin(h);
  return 1.0 + 2.0 * x * x * std::cos(2.0 * h) + 2.0 * x * std::cos(h) / half_a_cos * (2.0 * x * x * s * s - 1.0);
}

double sector_area_d2h(Inradius r, double h) {
  h = checked_cluster_parameter(r, h);
  const double x = r.outer();
  const double c = std::cos(0.5 * cluster_arc_a(r, h));
  const double s = std::sin(h);
  const double co = std::cos(h);
  const double x2 = x * x;
  return -4.0 * x2 * std::sin(2.0 * h) + 2.0 * x2 * x2 * x * s * s * s * co * co / (c * c * c) +
         2.0 * x * s / c * (1.0 - 2.0 * x2 * s * s + 3.0 * x2 * co * co);
}

double regular_inradius(int n) {
  if (n < 1) throw DomainError("regular polygon index must be >= 1");
  return 1.0 - 1.0 / (2.0 * std::cos(kPi / (2.0 * (2.0 * n + 1.0))));
}

int optimal_n(Inradius r) {
  if (r.is_disk()) throw DegenerateDisk();
  const double x = kPi / (2.0 * extremal_arc_length(r)) - 0.5;
  int n = std::max(1, static_cast<int>(std::ceil(x)));
  // Roundoff can push x just above an integer at r = r_{2n-1}.
  if (n > 1 && std::abs(r.value() - regular_inradius(n - 1)) <= kIdentityTol) --n;
  return n;
}

bool is_regular_value(Inradius r) {
  if (r.is_disk()) return false;
  return std::abs(r.value() - regular_inradius(optimal_n(r))) <= kIdentityTol;
}

double optimal_h(Inradius r) {
  const int n = optimal_n(r);
  const double ell = extremal_arc_length(r);
  if (std::abs(r.value() - regular_inradius(n)) <= kIdentityTol) return ell;
  return checked_cluster_parameter(r, 0.5 * (kPi - (2.0 * n - 1.0) * ell));
}

double minimal_area(Inradius r) {
  if (r.is_disk()) return 0.25 * kPi;
  const int n = optimal_n(r);
  const double f0 = sector_area(r, 0.0);
  if (is_regular_value(r)) return (2.0 * n + 1.0) * f0;
  return (2.0 * n - 2.0) * f0 + sector_area(r, optimal_h(r));
}

}  // namespace orbiform
