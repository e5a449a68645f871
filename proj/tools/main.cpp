// hypoly-cli: track the roots of a one-parameter curve of hyperbolic monic
// polynomials (or the eigenvalues of a symmetric matrix curve) and report
// the discrete regularity of the chosen parametrization.
//
// Defaults (every flag overrides exactly one):
//   --grid         -1 1 200      uniform grid on [t_min, t_max] with M+1 points
//   --method       proof         ordered | assignment:K | proof
//   --tol          1e-9          root solver tolerance
//   --eps-e        auto          total-collision threshold on |a_2| (h^2 scale / 2)
//   --eps-f        auto          derivative-label spread threshold (1e-6 * scale)
//   --gap          auto          root cluster gap (quarter minimal distinct gap)
//   --jump-thresh  0.1           derivative-jump threshold for the report
//   --out          tracks.csv    track table
//   --report       report.json   structured report
//   --refine       off           dyadic refinement levels (>= 2, needs --family)
//
// Exit status: 0 success, 1 usage, 2 non-hyperbolic input, 3 tracker error.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypoly/curve.hpp"
#include "hypoly/diag.hpp"
#include "hypoly/errors.hpp"
#include "hypoly/families.hpp"
#include "hypoly/io.hpp"
#include "hypoly/kernels.hpp"
#include "hypoly/track.hpp"

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string input;        // CSV path; empty when a family is used
  std::string family;       // family spec; empty when a file is used
  double t_min = -1.0, t_max = 1.0;
  std::size_t grid_m = 200;
  bool grid_given = false;
  std::string method = "proof";
  double tol = 1e-9;
  double eps_e = 0.0;       // 0: auto
  double eps_f = 0.0;       // 0: auto
  double gap = 0.0;         // 0: auto
  double jump_thresh = 0.1;
  std::string out = "tracks.csv";
  std::string report = "report.json";
  int refine = 0;           // 0: off
};

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["input"] = cfg.input.empty() ? ordered_json(nullptr) : ordered_json(cfg.input);
  j["family"] = cfg.family.empty() ? ordered_json(nullptr) : ordered_json(cfg.family);
  j["grid"] = {{"t_min", cfg.t_min}, {"t_max", cfg.t_max}, {"M", cfg.grid_m}};
  j["method"] = cfg.method;
  j["tol"] = cfg.tol;
  j["eps_e"] = cfg.eps_e;
  j["eps_f"] = cfg.eps_f;
  j["gap"] = cfg.gap;
  j["jump_thresh"] = cfg.jump_thresh;
  j["out"] = cfg.out;
  j["report"] = cfg.report;
  j["refine"] = cfg.refine;
  return j;
}

// method string -> tracker call; valid forms checked during parsing
int parse_assignment_order(const std::string& method) {
  const std::string num = method.substr(std::string("assignment:").size());
  try {
    std::size_t used = 0;
    const int k = std::stoi(num, &used);
    if (used != num.size() || k < 0 || k > 2) throw std::invalid_argument(num);
    return k;
  } catch (const std::exception&) {
    throw hypoly::error(hypoly::errc::bad_input,
                        "method assignment:K needs K in {0, 1, 2}, got '" + num + "'");
  }
}

hypoly::LabeledTracks track_centered(const hypoly::CurveSamples& centered,
                                     const RunConfig& cfg) {
  if (cfg.method == "ordered") return hypoly::ordered_tracks(centered, cfg.tol);
  if (cfg.method.rfind("assignment:", 0) == 0)
    return hypoly::assignment_tracks(centered, parse_assignment_order(cfg.method), cfg.tol);
  hypoly::TrackOptions opt;
  opt.tol = cfg.tol;
  opt.eps_E = cfg.eps_e;
  opt.eps_F = cfg.eps_f;
  opt.gap = cfg.gap;
  return hypoly::proof_tracks(centered, opt);
}

hypoly::CurveSamples load_curve(const RunConfig& cfg) {
  if (!cfg.family.empty())
    return hypoly::make_family(cfg.family,
                               hypoly::uniform_grid(cfg.t_min, cfg.t_max, cfg.grid_m));
  hypoly::InputCurve in = hypoly::read_input_csv(cfg.input);
  if (in.is_matrix) return hypoly::charpoly_curve(in.matrix);
  return in.curve;
}

// Full pipeline for one grid resolution: load, scan, center, track, uncenter.
hypoly::LabeledTracks run_tracks(const RunConfig& cfg, const hypoly::CurveSamples& curve,
                                 hypoly::CurveSamples* centered_out) {
  const long bad = hypoly::first_non_hyperbolic(curve, cfg.tol);
  if (bad >= 0)
    throw hypoly::error(hypoly::errc::not_hyperbolic,
                        "curve is not hyperbolic at t = " +
                            hypoly::format_full(curve.grid[static_cast<std::size_t>(bad)]) +
                            " (grid index " + std::to_string(bad) + ")");
  hypoly::CurveSamples centered = hypoly::center_curve(curve);
  hypoly::LabeledTracks tracks = track_centered(centered, cfg);
  hypoly::uncenter_rows(centered, tracks.values);
  if (centered_out) *centered_out = std::move(centered);
  return tracks;
}

ordered_json regularity_json(const hypoly::RegularityReport& r) {
  ordered_json j;
  j["method"] = r.method;
  j["jump_thresh"] = r.jump_thresh;
  j["sup"] = {r.sup[0], r.sup[1], r.sup[2]};
  ordered_json rows = ordered_json::array();
  for (const auto& s : r.row_sup) rows.push_back({s[0], s[1], s[2]});
  j["row_sup"] = rows;
  ordered_json jumps = ordered_json::array();
  for (const auto& jr : r.jumps) {
    ordered_json one;
    one["index"] = jr.index;
    one["t"] = jr.t;
    one["magnitude"] = jr.magnitude;
    one["rows"] = jr.rows;
    jumps.push_back(std::move(one));
  }
  j["jumps"] = std::move(jumps);
  return j;
}

ordered_json degeneracy_json(const hypoly::DegeneracySets& s,
                             const hypoly::CurveSamples& centered) {
  const auto ts = [&centered](const std::vector<std::size_t>& idx) {
    ordered_json a = ordered_json::array();
    for (std::size_t m : idx) a.push_back(centered.grid[m]);
    return a;
  };
  ordered_json j;
  j["eps_e"] = s.eps_E;
  j["eps_f"] = s.eps_F;
  j["w"] = s.w;
  j["E"] = ts(s.E);
  j["Eprime"] = ts(s.Eprime);
  j["F"] = ts(s.F);
  j["Fprime"] = ts(s.Fprime);
  return j;
}

ordered_json refinement_json(const hypoly::RefinementSweep& r) {
  ordered_json j;
  j["h"] = r.h;
  j["sup"] = {r.sup[0], r.sup[1], r.sup[2]};
  j["slope"] = {r.slope[0], r.slope[1], r.slope[2]};
  j["max_dd1_gap"] = r.max_dd1_gap;
  return j;
}

int run(const RunConfig& cfg) {
  ordered_json report;
  report["config"] = config_json(cfg);
  report["resolved"] = nullptr;
  report["degeneracy"] = nullptr;
  report["regularity"] = nullptr;
  report["refinement"] = nullptr;
  report["warnings"] = ordered_json::array();
  report["error"] = nullptr;
  int status = 0;

  try {
    const hypoly::CurveSamples curve = load_curve(cfg);
    hypoly::CurveSamples centered;
    hypoly::LabeledTracks tracks = run_tracks(cfg, curve, &centered);

    const double scale = centered.coeff_scale();
    const bool uniform = centered.uniform();
    const double eps_e =
        cfg.eps_e > 0.0 ? cfg.eps_e : (uniform ? hypoly::default_eps_e(centered) : 0.0);
    const double eps_f = cfg.eps_f > 0.0 ? cfg.eps_f : 1e-6 * std::max(1.0, scale);
    report["resolved"] = {{"eps_e", eps_e}, {"eps_f", eps_f}, {"w", 3},
                          {"coeff_scale", scale}};

    report["regularity"] = regularity_json(hypoly::regularity_report(tracks, cfg.jump_thresh));

    if (centered.degree >= 2 && uniform) {
      try {
        report["degeneracy"] =
            degeneracy_json(hypoly::detect_degeneracy_sets(centered, eps_e, eps_f),
                            centered);
      } catch (const hypoly::error& e) {
        report["warnings"].push_back(std::string("degeneracy detection failed: ") + e.what());
      }
    }

    if (cfg.refine > 0) {
      const hypoly::RefinementSweep sweep = hypoly::refinement_sweep(
          [&cfg](int level) {
            RunConfig fine = cfg;
            fine.grid_m = cfg.grid_m << level;
            return run_tracks(fine, load_curve(fine), nullptr);
          },
          cfg.refine);
      report["refinement"] = refinement_json(sweep);
    }

    for (const auto& w : tracks.warnings) report["warnings"].push_back(w);
    hypoly::write_tracks_csv(cfg.out, tracks);
  } catch (const hypoly::error& e) {
    report["error"] = {{"code", hypoly::errc_name(e.code())}, {"message", e.what()}};
    std::fprintf(stderr, "error: %s\n", e.what());
    status = e.code() == hypoly::errc::not_hyperbolic ? 2 : 3;
  }

  std::FILE* f = std::fopen(cfg.report.c_str(), "w");
  if (!f) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", cfg.report.c_str());
    return status == 0 ? 3 : status;
  }
  const std::string text = report.dump(2);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fputc('\n', f);
  std::fclose(f);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth root tracks of hyperbolic polynomial curves"};
  RunConfig cfg;
  bool list = false;
  std::vector<double> grid_vals;

  auto* input = app.add_option("--input", cfg.input, "coefficient or matrix curve CSV");
  auto* family = app.add_option("--family", cfg.family, "builtin family NAME[:params]");
  input->excludes(family);
  app.add_option("--grid", grid_vals, "t_min t_max M (uniform grid, M+1 points)")
      ->expected(3);
  app.add_option("--method", cfg.method, "ordered | assignment:K | proof");
  app.add_option("--tol", cfg.tol, "root solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--eps-e", cfg.eps_e, "total-collision threshold (default: auto)")
      ->check(CLI::PositiveNumber);
  app.add_option("--eps-f", cfg.eps_f, "label-spread threshold (default: auto)")
      ->check(CLI::PositiveNumber);
  app.add_option("--gap", cfg.gap, "cluster gap (default: auto)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jump-thresh", cfg.jump_thresh, "derivative jump threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "tracks CSV path");
  app.add_option("--report", cfg.report, "report JSON path");
  app.add_option("--refine", cfg.refine, "dyadic refinement levels for the report")
      ->check(CLI::Range(2, 10));
  app.add_flag("--list-families", list, "print builtin families and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 1;     // all usage errors exit 1
  }

  if (list) {
    std::fputs(hypoly::list_families().c_str(), stdout);
    return 0;
  }
  if (cfg.input.empty() == cfg.family.empty()) {
    std::fputs("error: exactly one of --input or --family is required\n", stderr);
    return 1;
  }
  if (cfg.method != "ordered" && cfg.method != "proof") {
    if (cfg.method.rfind("assignment:", 0) != 0) {
      std::fputs("error: --method must be ordered, assignment:K, or proof\n", stderr);
      return 1;
    }
    try {
      parse_assignment_order(cfg.method);
    } catch (const hypoly::error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  if (!grid_vals.empty()) {
    cfg.grid_given = true;
    cfg.t_min = grid_vals[0];
    cfg.t_max = grid_vals[1];
    if (grid_vals[2] < 8.0 || grid_vals[2] != std::floor(grid_vals[2])) {
      std::fputs("error: --grid M must be an integer >= 8\n", stderr);
      return 1;
    }
    cfg.grid_m = static_cast<std::size_t>(grid_vals[2]);
  }
  if (!(cfg.t_min < cfg.t_max)) {
    std::fputs("error: --grid needs t_min < t_max\n", stderr);
    return 1;
  }
  if (cfg.grid_given && !cfg.input.empty()) {
    std::fputs("error: --grid applies to --family only; --input brings its own grid\n",
               stderr);
    return 1;
  }
  if (cfg.refine > 0 && cfg.family.empty()) {
    std::fputs("error: --refine needs --family (regenerates the curve per level)\n",
               stderr);
    return 1;
  }
  return run(cfg);
}
