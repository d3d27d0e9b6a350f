#include "orbiform/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "orbiform/errors.hpp"

namespace orbiform {

namespace {

std::string format_digits(double value, int digits) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

struct SvgWriter {
  const RenderSpec& spec;

  // Coordinates very close to zero print as 0 so that rounding noise does
  // not leak into the document.
  [[nodiscard]] std::string num(double v) const {
    if (std::abs(v) < 1e-12) v = 0.0;
    return format_digits(v, spec.precision);
  }
  [[nodiscard]] std::string point(Point2 p) const { return num(p.x) + " " + num(-p.y); }
  [[nodiscard]] std::string arc_to(Point2 p) const { return "A 1 1 0 0 0 " + point(p); }
};

}  // namespace

std::string format_real(double value) { return format_digits(value, 17); }

std::string polygon_to_json(const ReuleauxPolygon& poly, const std::optional<AnnulusReport>& annulus) {
  nlohmann::ordered_json doc;
  doc["width"] = 1;
  doc["n_arcs"] = poly.size();
  auto vertices = nlohmann::ordered_json::array();
  for (const Point2& v : poly.vertices()) vertices.push_back({v.x, v.y});
  doc["vertices"] = std::move(vertices);
  doc["alphas"] = std::vector<double>(poly.alphas().begin(), poly.alphas().end());
  doc["betas"] = std::vector<double>(poly.betas().begin(), poly.betas().end());
  doc["arc_lengths"] = std::vector<double>(poly.arc_lengths().begin(), poly.arc_lengths().end());
  if (annulus) {
    doc["annulus"] = {{"center", {annulus->center.x, annulus->center.y}},
                      {"R", annulus->outer_radius},
                      {"rho", annulus->inner_radius}};
  }
  return doc.dump(2) + "\n";
}

ReuleauxPolygon polygon_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("width").get<double>() != 1.0) throw DomainError("polygon JSON: width must be 1");
    const auto n = doc.at("n_arcs").get<int>();
    std::vector<Point2> vertices;
    for (const auto& v : doc.at("vertices")) {
      if (v.size() != 2) throw DomainError("polygon JSON: vertices must be [x, y] pairs");
      vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    auto alphas = doc.at("alphas").get<std::vector<double>>();
    auto betas = doc.at("betas").get<std::vector<double>>();
    const auto size = static_cast<std::size_t>(n);
    if (n < 3 || vertices.size() != size || alphas.size() != size || betas.size() != size) {
      throw DomainError("polygon JSON: n_arcs disagrees with the array lengths");
    }
    return ReuleauxPolygon::from_parts(std::move(vertices), std::move(alphas), std::move(betas));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("polygon JSON: ") + e.what());
  }
}

std::string area_table_csv(const std::vector<AreaRow>& rows) {
  std::string out = "r,N,ell,h,a,b,A\n";
  for (const AreaRow& row : rows) {
    out += format_real(row.r) + "," + std::to_string(row.n) + "," + format_real(row.ell) + "," +
           format_real(row.h) + "," + format_real(row.a) + "," + format_real(row.b) + "," + format_real(row.area) +
           "\n";
  }
  return out;
}

std::string trace_csv(const DescentTrace& trace) {
  std::string out = "step,k,sense,epsilon,area,max_vertex_radius,derivative\n";
  for (const TraceRecord& rec : trace.records) {
    out += std::to_string(rec.step) + "," + std::to_string(rec.k) + "," + std::to_string(rec.sense) + "," +
           format_real(rec.epsilon) + "," + format_real(rec.area) + "," + format_real(rec.max_vertex_radius) + "," +
           format_real(rec.derivative) + "\n";
  }
  return out;
}

std::string render_svg(const ReuleauxPolygon& poly, const std::optional<AnnulusReport>& annulus,
                       const RenderSpec& spec) {
  const SvgWriter w{spec};
  const double extent = spec.view_max - spec.view_min;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.pixels << "\" height=\""
      << spec.pixels << "\" viewBox=\"" << w.num(spec.view_min) << " " << w.num(-spec.view_max) << " "
      << w.num(extent) << " " << w.num(extent) << "\">\n";

  if (annulus) {
    const std::string dash = w.num(4.0 * spec.guide_stroke_width);
    auto circle = [&](double radius, const char* cls) {
      svg << "  <circle class=\"" << cls << "\" cx=\"" << w.num(annulus->center.x) << "\" cy=\""
          << w.num(-annulus->center.y) << "\" r=\"" << w.num(radius)
          << "\" fill=\"none\" stroke=\"#777777\" stroke-width=\"" << w.num(spec.guide_stroke_width)
          << "\" stroke-dasharray=\"" << dash << " " << dash << "\"/>\n";
    };
    if (spec.incircle) circle(annulus->inner_radius, "incircle");
    if (spec.outercircle) circle(annulus->outer_radius, "outercircle");
  }

  // Arc Gamma_k runs counterclockwise from P_{k+1} to P_{k-1}, so the
  // boundary visits P_0, P_{-2}, P_{-4}, ...
  const auto order = poly.boundary_order();
  svg << "  <path class=\"boundary\" d=\"M " << w.point(poly.vertex(order.front()));
  for (std::size_t i = 1; i <= order.size(); ++i) svg << " " << w.arc_to(poly.vertex(order[i % order.size()]));
  svg << " Z\" fill=\"#dde6f2\" stroke=\"#1f3b73\" stroke-width=\"" << w.num(spec.stroke_width) << "\"/>\n";

  if (spec.cluster_highlight && annulus) {
    std::set<int> arcs;
    for (int k = 0; k < poly.size(); ++k) {
      if (!annulus->on_outer[static_cast<std::size_t>(k)]) {
        for (int j : {k - 1, k, k + 1}) arcs.insert(poly.wrap(j));
      }
    }
    if (!arcs.empty()) {
      svg << "  <path class=\"cluster\" d=\"";
      bool first = true;
      for (int k : arcs) {
        svg << (first ? "" : " ") << "M " << w.point(poly.vertex(k + 1)) << " " << w.arc_to(poly.vertex(k - 1));
        first = false;
      }
      svg << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"" << w.num(1.5 * spec.stroke_width) << "\"/>\n";
    }
  }

  if (spec.vertex_markers) {
    for (const Point2& v : poly.vertices()) {
      svg << "  <circle class=\"vertex\" cx=\"" << w.num(v.x) << "\" cy=\"" << w.num(-v.y) << "\" r=\""
          << w.num(2.0 * spec.stroke_width) << "\" fill=\"#1f3b73\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace orbiform
