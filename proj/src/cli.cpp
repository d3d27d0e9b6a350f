#include "orbiform/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "orbiform/blaschke.hpp"
#include "orbiform/errors.hpp"
#include "orbiform/io.hpp"
#include "orbiform/solver.hpp"
#include "parallel.hpp"

namespace orbiform {

namespace {

SuiteResult suite(std::string name, double worst, double tolerance, bool extra = true) {
  return {std::move(name), worst, tolerance, extra && worst <= tolerance};
}

double grid_r(int i, int n) { return kMinInradius + (0.4999 - kMinInradius) * i / std::max(1, n - 1); }

SuiteResult identity_suite(int grid) {
  const int n = std::clamp(grid, 2, 400);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Inradius r(grid_r(i, n));
    const double ell = extremal_arc_length(r);
    const double f0 = sector_area(r, 0.0);
    worst = std::max(worst, std::abs(sector_area(r, ell) - 3.0 * f0));
    worst = std::max(worst, std::abs(extremal_sector_area(r) - f0));
    for (int j = 0; j < n; ++j) {
      const double h = ell * j / (n - 1);
      // a <= b on [0, l]; only a violation counts as a defect.
      worst = std::max(worst, cluster_arc_a(r, h) - cluster_arc_b(r, h));
    }
  }
  return suite("sector_identities", worst, 1e-12);
}

SuiteResult first_derivative_suite(int grid) {
  const int n = std::clamp(grid, 2, 100);
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Inradius r(grid_r(i, n));
    const double ell = extremal_arc_length(r);
    for (int j = 0; j < n; ++j) {
      const double h = std::clamp(ell * j / (n - 1), kStep, ell - kStep);
      const double fd = (sector_area(r, h + kStep) - sector_area(r, h - kStep)) / (2.0 * kStep);
      worst = std::max(worst, std::abs(fd - sector_area_dh(r, h)));
    }
  }
  return suite("first_derivative", worst, 1e-6);
}

SuiteResult construction_suite(int grid, bool corrupt) {
  const int n = std::clamp(grid, 2, 1000);
  std::vector<double> defect(static_cast<std::size_t>(n));
  std::vector<char> ok(static_cast<std::size_t>(n));
  detail::parallel_for(defect.size(), [&](std::size_t i) {
    const Inradius r(grid_r(static_cast<int>(i), n));
    ReuleauxPolygon poly = build_optimal(r);
    if (corrupt) poly = apply_move(poly, {0, 1e-3});
    const ValidationReport report = validate(poly, r);
    const AnnulusReport annulus = minimal_annulus(poly);
    defect[i] = std::max(std::abs(exact_area(poly) - minimal_area(r)), std::abs(annulus.inner_radius - r.value()));
    ok[i] = report.passed() && poly.size() == 2 * optimal_n(r) + 1;
  });
  const bool all = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  return suite("construction", *std::max_element(defect.begin(), defect.end()), 1e-9, all);
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  const int grid = std::max(2, options.grid);
  std::vector<SuiteResult> out;

  ConcavityReport concavity = scan_concavity(grid, grid);
  if (options.corrupt == "concavity") concavity.max_value = 1e-3;
  // Strict negativity: the defect is the largest value itself.
  out.push_back({"concavity", concavity.max_value, 0.0,
                 concavity.passed() && concavity.max_fd_mismatch <= 1e-5});
  out.push_back(suite("concavity_second_difference", concavity.max_fd_mismatch, 1e-5));

  const LemmaScanReport lemma = lemma_gap_scan(20, grid);
  out.push_back(suite("lemma_gap", lemma.max_gap, 1e-12));

  const DerivativeCheckReport deriv = derivative_check(std::clamp(grid / 2, 5, 100), options.seed);
  out.push_back(suite("area_derivative", deriv.max_error, 1e-6, deriv.ratio_samples > 0 && deriv.min_ratio >= 3.5 && deriv.max_ratio <= 4.5));
  out.push_back(suite("first_order_coefficients", deriv.max_coefficient_error, 1e-6));

  const ContinuityReport continuity = continuity_scan(10);
  double gap = 0.0;
  for (const ContinuityRow& row : continuity.rows) gap = std::max({gap, row.gap_left, row.gap_right});
  out.push_back({"continuity", gap, 1e-4, continuity.passed()});

  out.push_back(identity_suite(grid));
  out.push_back(first_derivative_suite(grid));
  out.push_back(construction_suite(grid, options.corrupt == "construction"));
  return out;
}

namespace {

void print_report(std::ostream& out, const OptimalShapeReport& report) {
  out << "r = " << format_real(report.r) << "\n";
  if (report.disk) {
    out << "disk: the only admissible body is the disk of radius 1/2\n";
    out << "A = " << format_real(report.area) << "\n";
    return;
  }
  out << "N = " << report.n << " (" << 2 * report.n + 1 << " arcs)\n"
      << "ell = " << format_real(report.ell) << "\n"
      << "h = " << format_real(report.h) << "\n"
      << "a = " << format_real(report.a) << "\n"
      << "b = " << format_real(report.b) << "\n"
      << "A = " << format_real(report.area) << "\n"
      << "regular = " << (report.regular ? "yes" : "no") << "\n";
}

int cmd_solve(double r_value, const std::string& svg_path, const std::string& json_path, std::ostream& out) {
  const OptimalShapeReport report = solve(Inradius(r_value));
  if (report.disk && (!svg_path.empty() || !json_path.empty())) {
    throw DomainError("r = 1/2 gives the disk, which has no polygon to write");
  }
  print_report(out, report);
  if (report.polygon) {
    const AnnulusReport annulus = minimal_annulus(*report.polygon);
    if (!svg_path.empty()) write_text_file(svg_path, render_svg(*report.polygon, annulus));
    if (!json_path.empty()) write_text_file(json_path, polygon_to_json(*report.polygon, annulus));
  }
  return kExitOk;
}

int cmd_table(double r_min, double r_max, int steps, const std::string& csv_path, std::ostream& out) {
  const std::vector<AreaRow> rows = area_table(r_min, r_max, steps);
  const std::string csv = area_table_csv(rows);
  if (csv_path.empty() || csv_path == "-") {
    out << csv;
  } else {
    write_text_file(csv_path, csv);
    out << "wrote " << rows.size() << " rows to " << csv_path << "\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  bool all = true;
  for (const SuiteResult& s : run_verification(options)) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << " worst=" << format_real(s.worst)
        << " tolerance=" << format_real(s.tolerance) << "\n";
    all = all && s.passed;
  }
  out << (all ? "all suites passed" : "some suites failed") << "\n";
  return all ? kExitOk : kExitVerifyFailed;
}

struct DescendArgs {
  double r = 0.0;
  int starts = 1;
  std::uint64_t seed = 1;
  std::string trace_dir;
  std::string start = "random";
  int jiggle = 8;
};

struct DescendOutcome {
  DescentResult result;
  std::optional<RigidStructure> structure;
  std::string structure_error;
};

int cmd_descend(const DescendArgs& args, std::ostream& out) {
  const Inradius r(args.r);
  if (r.is_disk()) throw DegenerateDisk();
  if (args.starts < 1) throw DomainError("--starts must be positive");
  const double target = minimal_area(r);
  const ReuleauxPolygon optimal = build_optimal(r);

  std::vector<std::optional<DescendOutcome>> outcomes(static_cast<std::size_t>(args.starts));
  detail::parallel_for(outcomes.size(), [&](std::size_t i) {
    std::seed_seq seq{args.seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(seq);
    std::optional<ReuleauxPolygon> start;
    for (int attempt = 0; attempt < 100 && !start; ++attempt) {
      try {
        ReuleauxPolygon candidate = args.start == "optimal" ? jiggle(optimal, r, rng, args.jiggle, 0.05)
                                                            : random_feasible_start(r, rng, args.jiggle);
        if (is_feasible(candidate, r, 1e-12)) start = std::move(candidate);
      } catch (const GeometryError&) {
      } catch (const DomainError&) {
      }
    }
    if (!start) return;
    DescendOutcome outcome{descend(r, *start), std::nullopt, {}};
    try {
      outcome.structure = detect_structure(outcome.result.polygon, r);
    } catch (const GeometryError& e) {
      outcome.structure_error = e.what();
    }
    outcomes[i] = std::move(outcome);
  });

  if (!args.trace_dir.empty()) std::filesystem::create_directories(args.trace_dir);
  int rigid = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i]) throw ConvergenceError("no feasible start after 100 attempts for start " + std::to_string(i));
    const DescendOutcome& o = *outcomes[i];
    const double area = exact_area(o.result.polygon);
    min_gap = std::min(min_gap, area - target);
    rigid += o.result.trace.certificate.rigid ? 1 : 0;
    out << "start " << i << ": moves=" << o.result.trace.records.size() << " area=" << format_real(area)
        << " gap=" << format_real(area - target) << " rigid=" << (o.result.trace.certificate.rigid ? "yes" : "no")
        << " arc_floor=" << (o.result.trace.certificate.arc_floor_blocked ? "yes" : "no");
    if (o.structure) {
      out << " arcs=" << o.result.polygon.size() << " clusters=" << o.structure->clusters.size() << " h=[";
      for (std::size_t c = 0; c < o.structure->clusters.size(); ++c) {
        out << (c ? "," : "") << format_real(o.structure->clusters[c].h);
      }
      out << "] extremal=" << o.structure->extremal_arcs.size()
          << " sum_F_defect=" << format_real(std::abs(o.structure->sector_area_sum - o.structure->area));
    } else {
      out << " structure=\"" << o.structure_error << "\"";
    }
    out << "\n";
    if (!args.trace_dir.empty()) {
      const auto path = std::filesystem::path(args.trace_dir) / ("trace_" + std::to_string(i) + ".csv");
      write_text_file(path.string(), trace_csv(o.result.trace));
    }
  }
  out << "summary: " << rigid << "/" << args.starts << " rigid, A(r) = " << format_real(target)
      << ", min gap = " << format_real(min_gap) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal-area Reuleaux polygons of width 1 with prescribed inradius", "orbiform"};
  app.require_subcommand(1);

  double solve_r = 0.0;
  std::string svg_path;
  std::string json_path;
  auto* solve_cmd = app.add_subcommand("solve", "Optimal shape and minimal area for one inradius");
  solve_cmd->add_option("--r", solve_r, "Inradius in [1 - 1/sqrt(3), 1/2]")->required();
  solve_cmd->add_option("--svg", svg_path, "Write the shape and its annulus as SVG");
  solve_cmd->add_option("--json", json_path, "Write the polygon as JSON");

  double r_min = 0.0;
  double r_max = 0.0;
  int steps = 0;
  std::string csv_path;
  auto* table_cmd = app.add_subcommand("table", "Tabulate N, l, h, a, b and A(r)");
  table_cmd->add_option("--r-min", r_min, "Smallest inradius")->required();
  table_cmd->add_option("--r-max", r_max, "Largest inradius")->required();
  table_cmd->add_option("--steps", steps, "Number of rows")->required()->check(CLI::PositiveNumber);
  table_cmd->add_option("--csv", csv_path, "Output file ('-' or omitted: standard output)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the numeric verification suites");
  verify_cmd->add_option("--grid", verify.grid, "Grid density")->check(CLI::Range(2, 100000));
  verify_cmd->add_option("--seed", verify.seed, "Seed for random shapes");
  verify_cmd->add_option("--corrupt", verify.corrupt)->group("")->check(CLI::IsMember({"construction", "concavity"}));

  DescendArgs descend_args;
  auto* descend_cmd = app.add_subcommand("descend", "Blaschke descent from random feasible starts");
  descend_cmd->add_option("--r", descend_args.r, "Inradius")->required();
  descend_cmd->add_option("--starts", descend_args.starts, "Number of starts")->required()->check(CLI::PositiveNumber);
  descend_cmd->add_option("--seed", descend_args.seed, "Seed (mt19937_64)")->required();
  descend_cmd->add_option("--trace-dir", descend_args.trace_dir, "Directory for per-start trace CSV files");
  descend_cmd->add_option("--start", descend_args.start, "random: random rigid shape; optimal: the optimal shape")
      ->check(CLI::IsMember({"random", "optimal"}));
  descend_cmd->add_option("--jiggle", descend_args.jiggle, "Random feasible moves applied to each start")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_r, svg_path, json_path, out);
    if (*table_cmd) return cmd_table(r_min, r_max, steps, csv_path, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*descend_cmd) return cmd_descend(descend_args, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace orbiform
