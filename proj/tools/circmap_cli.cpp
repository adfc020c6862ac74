// Command-line front end. Talks to the library only through circmap.h.
#include <circmap/circmap.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kDegenerate = 3 };

struct CliError {
  int code;
  std::string message;
};

int exit_for(circmap_status s) {
  switch (s) {
    case CIRCMAP_OK: return kOk;
    case CIRCMAP_E_INVALID_INPUT:
    case CIRCMAP_E_IO:
    case CIRCMAP_E_INTERNAL: return kBadInput;
    default: return kDegenerate;
  }
}

void check(circmap_status s) {
  if (s == CIRCMAP_OK) return;
  std::string msg = std::string(circmap_status_name(s)) + ": " + circmap_last_error();
  if (circmap_last_error_index() >= 0) msg += " (index " + std::to_string(circmap_last_error_index()) + ")";
  throw CliError{exit_for(s), msg};
}

struct PolygonDeleter {
  void operator()(circmap_polygon* p) const { circmap_polygon_free(p); }
};
struct OrbitDeleter {
  void operator()(circmap_orbit* o) const { circmap_orbit_free(o); }
};
struct CensusDeleter {
  void operator()(circmap_census* c) const { circmap_census_free(c); }
};
using PolygonPtr = std::unique_ptr<circmap_polygon, PolygonDeleter>;
using OrbitPtr = std::unique_ptr<circmap_orbit, OrbitDeleter>;
using CensusPtr = std::unique_ptr<circmap_census, CensusDeleter>;

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  circmap_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kBadInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) throw CliError{kBadInput, "cannot write " + path};
}

PolygonPtr load_shape(const std::string& spec) {
  circmap_polygon* p = nullptr;
  if (spec.rfind("regular:", 0) == 0) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(spec.substr(8), &used);
      if (used != spec.size() - 8) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw CliError{kBadInput, "bad shape " + spec};
    }
    check(circmap_polygon_regular(n, &p));
  } else if (spec.rfind("file:", 0) == 0) {
    check(circmap_polygon_from_json(read_file(spec.substr(5)).c_str(), &p));
  } else {
    throw CliError{kBadInput, "shape must be regular:N or file:PATH"};
  }
  return PolygonPtr(p);
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CensusFlags {
  int resolution = 512;
  int refine = 4;
  double cut_radius = 4.0;
  int threads = 0;

  void add(CLI::App* app) {
    app->add_option("--resolution", resolution, "base cells per chart side")->capture_default_str();
    app->add_option("--refine", refine, "quadtree refinement depth")->capture_default_str();
    app->add_option("--cut-radius", cut_radius, "plane/inverted chart cut radius R")->capture_default_str();
    app->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
  }
  circmap_census_options options() const {
    circmap_census_options o;
    circmap_census_options_default(&o);
    o.resolution = resolution;
    o.refine_depth = refine;
    o.cut_radius = cut_radius;
    o.threads = threads;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circumcenter map toolkit"};
  app.require_subcommand(1);

  std::string shape;
  std::array<double, 2> m{0.0, 0.0};
  std::size_t steps = 0;
  std::string svg_out, json_out, csv_out, hemi_out;

  auto* it = app.add_subcommand("iterate", "iterate the map about M");
  it->add_option("--shape", shape, "regular:N or file:PATH")->required();
  it->add_option("--m", m, "M as X,Y")->delimiter(',')->required();
  it->add_option("--steps", steps, "number of applications")->required();
  it->add_option("--svg", svg_out, "write the orbit figure");
  it->add_option("--json", json_out, "write the orbit as JSON");

  auto* sim = app.add_subcommand("similarity", "similarity parameters of the n-step map");
  sim->add_option("--shape", shape, "regular:N or file:PATH")->required();
  sim->add_option("--m", m, "M as X,Y")->delimiter(',')->required();

  auto* locus = app.add_subcommand("locus", "implicit loci");
  locus->require_subcommand(1);
  std::string family;
  auto* leval = locus->add_subcommand("eval", "evaluate an implicit curve");
  leval->add_option("--family", family,
                    "equilateral-sextic, equilateral-alpha-cubic, square-octic or square-alpha-quartic")
      ->required();
  leval->add_option("--point", m, "point as X,Y")->delimiter(',')->required();
  std::array<double, 4> window{-3, -3, 3, 3};
  int trace_res = 200;
  auto* ltrace = locus->add_subcommand("trace", "trace s = 1 contours");
  ltrace->add_option("--shape", shape, "regular:N or file:PATH")->required();
  ltrace->add_option("--window", window, "X0,Y0,X1,Y1")->delimiter(',')->capture_default_str();
  ltrace->add_option("--resolution", trace_res, "grid cells per side")->capture_default_str();

  std::vector<int> ns;
  CensusFlags cflags;
  auto* cen = app.add_subcommand("census", "count contracting and expanding regions");
  cen->add_option("--n", ns, "polygon sizes, comma separated")->delimiter(',');
  cen->add_option("--shape", shape, "census of an arbitrary polygon instead of regular ones");
  cflags.add(cen);
  cen->add_option("--csv", csv_out, "write the CSV table");
  cen->add_option("--svg", svg_out, "region map (single polygon only)");
  cen->add_option("--hemisphere", hemi_out, "compactified disk figure (single polygon only)");
  cen->add_option("--json", json_out, "report with components (single polygon only)");

  double t_min = 1.0, t_max = 3.0;
  int sweep_steps = 11;
  CensusFlags sflags;
  sflags.resolution = 256;
  sflags.refine = 3;
  auto* sweep = app.add_subcommand("stretch-sweep", "census of horizontally stretched equilaterals");
  sweep->add_option("--t-min", t_min)->capture_default_str();
  sweep->add_option("--t-max", t_max)->capture_default_str();
  sweep->add_option("--steps", sweep_steps)->capture_default_str();
  sflags.add(sweep);
  sweep->add_option("--json", json_out, "write the sweep as JSON");
  sweep->add_option("--svg", svg_out, "strip of region maps");

  int reg_n = 4, trials = 20;
  std::uint64_t seed = 1;
  CensusFlags rflags;
  rflags.resolution = 256;
  rflags.refine = 3;
  auto* reg = app.add_subcommand("regularity", "compare the regular count with random perturbations");
  reg->add_option("--n", reg_n)->capture_default_str();
  reg->add_option("--trials", trials)->capture_default_str();
  reg->add_option("--seed", seed)->capture_default_str();
  rflags.add(reg);

  std::string suite;
  int n_min = 3, n_max = 8;
  CensusFlags vflags;
  auto* ver = app.add_subcommand("verify", "run an invariant suite");
  ver->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"table1", "closed-forms", "periodicity", "inverse", "lines"}));
  ver->add_option("--n-min", n_min, "table1 range")->capture_default_str();
  ver->add_option("--n-max", n_max, "table1 range")->capture_default_str();
  vflags.add(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*it) {
      auto p = load_shape(shape);
      circmap_orbit* o = nullptr;
      check(circmap_orbit_run(p.get(), m[0], m[1], steps, &o));
      OrbitPtr orbit(o);
      char* s = nullptr;
      check(circmap_orbit_to_json(orbit.get(), &s));
      const std::string json = take(s);
      if (!json_out.empty()) write_file(json_out, json + "\n");
      if (!svg_out.empty()) {
        check(circmap_orbit_to_svg(orbit.get(), &s));
        write_file(svg_out, take(s));
      }
      if (json_out.empty() && svg_out.empty()) std::cout << json << '\n';
      std::size_t fstep = 0, fvertex = 0;
      if (circmap_orbit_failure(orbit.get(), &fstep, &fvertex)) {
        std::cerr << "orbit stopped at step " << fstep << ": M on sideline " << fvertex << '\n';
        return kDegenerate;
      }
      return kOk;
    }
    if (*sim) {
      auto p = load_shape(shape);
      circmap_similarity sp;
      check(circmap_similarity_extract(p.get(), m[0], m[1], &sp));
      char* s = nullptr;
      check(circmap_similarity_to_json(&sp, &s));
      std::cout << take(s) << '\n';
      return kOk;
    }
    if (*leval) {
      double v = 0.0;
      check(circmap_locus_eval(family.c_str(), m[0], m[1], &v));
      std::cout << g17(v) << '\n';
      return kOk;
    }
    if (*ltrace) {
      auto p = load_shape(shape);
      char* s = nullptr;
      check(circmap_locus_trace(p.get(), window[0], window[1], window[2], window[3], trace_res, &s));
      std::cout << take(s) << '\n';
      return kOk;
    }
    if (*cen) {
      std::vector<PolygonPtr> polys;
      if (!shape.empty()) polys.push_back(load_shape(shape));
      for (int n : ns) polys.push_back(load_shape("regular:" + std::to_string(n)));
      if (polys.empty()) throw CliError{kBadInput, "census needs --n or --shape"};
      const bool single = polys.size() == 1;
      if (!single && (!svg_out.empty() || !hemi_out.empty() || !json_out.empty()))
        throw CliError{kBadInput, "--svg, --hemisphere and --json need a single polygon"};
      const circmap_census_options o = cflags.options();
      std::string csv = std::string(circmap_census_csv_header()) + '\n';
      for (const auto& p : polys) {
        circmap_census* c = nullptr;
        check(circmap_census_run(p.get(), &o, &c));
        CensusPtr cp(c);
        char* s = nullptr;
        check(circmap_census_csv_row(cp.get(), &s));
        csv += take(s) + '\n';
        circmap_region_counts rc;
        check(circmap_census_counts(cp.get(), &rc));
        if (!rc.stable) std::cerr << "warning: n=" << rc.n << " counts changed at the last refinement level\n";
        if (!svg_out.empty()) {
          check(circmap_census_region_svg(cp.get(), 1, &s));
          write_file(svg_out, take(s));
        }
        if (!hemi_out.empty()) {
          check(circmap_census_hemisphere_svg(cp.get(), &s));
          write_file(hemi_out, take(s));
        }
        if (!json_out.empty()) {
          check(circmap_census_report_json(cp.get(), &s));
          write_file(json_out, take(s) + "\n");
        }
      }
      if (!csv_out.empty()) write_file(csv_out, csv);
      std::cout << csv;
      return kOk;
    }
    if (*sweep) {
      const circmap_census_options o = sflags.options();
      char* js = nullptr;
      char* sv = nullptr;
      check(circmap_stretch_sweep(t_min, t_max, sweep_steps, &o, &js, svg_out.empty() ? nullptr : &sv));
      const std::string json = take(js);
      if (!svg_out.empty()) write_file(svg_out, take(sv));
      if (!json_out.empty()) write_file(json_out, json + "\n");
      std::cout << json << '\n';
      return kOk;
    }
    if (*reg) {
      const circmap_census_options o = rflags.options();
      char* js = nullptr;
      check(circmap_regularity_comparison(reg_n, trials, seed, &o, &js));
      std::cout << take(js) << '\n';
      return kOk;
    }
    if (*ver) {
      const circmap_census_options o = vflags.options();
      int passed = 0;
      char* rep = nullptr;
      check(circmap_verify(suite.c_str(), n_min, n_max, &o, &passed, &rep));
      std::cout << take(rep);
      return passed ? kOk : kVerifyFailed;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
  return kBadInput;
}
