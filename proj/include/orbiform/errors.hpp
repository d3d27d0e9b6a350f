#pragma once

#include <stdexcept>
#include <string>

namespace orbiform {

/// An argument lies outside the admissible range of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// r = 1/2: the only body in the annulus is the disk, which is not a
/// Reuleaux polygon.
class DegenerateDisk : public DomainError {
 public:
  DegenerateDisk() : DomainError("inradius 1/2 describes the disk of radius 1/2, not a Reuleaux polygon") {}
};

/// A construction or deformation produced (or was handed) an inconsistent
/// polygon: closure failure, vanishing arcs, missing circle intersections.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A deformation would shrink an arc below the minimum arc length.
class ArcCollapse : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// An iterative procedure hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbiform
