#pragma once

// Serialization: polygon JSON, CSV tables, SVG figures.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbiform/blaschke.hpp"
#include "orbiform/geometry.hpp"
#include "orbiform/solver.hpp"

namespace orbiform {

/// printf("%.17g"); -0 prints as 0.
std::string format_real(double value);

/// Polygon JSON: width (always 1), n_arcs, vertices ([x, y] in index
/// order), alphas, betas, arc_lengths and, when given, annulus {center, R,
/// rho}. Doubles are written in shortest round-trip form.
std::string polygon_to_json(const ReuleauxPolygon& poly, const std::optional<AnnulusReport>& annulus = std::nullopt);

/// Inverse of polygon_to_json; the stored angles are taken verbatim. Throws
/// DomainError on malformed documents or inconsistent array lengths.
ReuleauxPolygon polygon_from_json(std::string_view text);

/// Header r,N,ell,h,a,b,A; LF line endings.
std::string area_table_csv(const std::vector<AreaRow>& rows);

/// Header step,k,sense,epsilon,area,max_vertex_radius,derivative.
std::string trace_csv(const DescentTrace& trace);

struct RenderSpec {
  double view_min = -1.1;  ///< square view box, width units
  double view_max = 1.1;
  int pixels = 640;
  double stroke_width = 0.008;
  double guide_stroke_width = 0.004;
  bool incircle = true;
  bool outercircle = true;
  bool vertex_markers = false;
  bool cluster_highlight = false;  ///< overlay arcs around vertices strictly inside the annulus
  int precision = 9;               ///< significant digits of coordinates
};

/// SVG 1.1 document. The boundary is one path of unit-radius arcs; the
/// y-axis points up. Annulus circles are dashed and drawn only when an
/// annulus is given.
std::string render_svg(const ReuleauxPolygon& poly, const std::optional<AnnulusReport>& annulus,
                       const RenderSpec& spec = {});

/// Writes text to path; throws std::runtime_error on failure.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace orbiform
