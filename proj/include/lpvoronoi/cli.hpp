#pragma once

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "lpvoronoi/bisector.hpp"
#include "lpvoronoi/canonical.hpp"
#include "lpvoronoi/convergence.hpp"
#include "lpvoronoi/errors.hpp"
#include "lpvoronoi/norms.hpp"
#include "lpvoronoi/raster.hpp"

namespace lpv {

// Bad flags, malformed numbers, missing required options: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Subcommand { Render, Bisector, Converge, Circle, Faces };

struct RunConfig {
  Subcommand sub = Subcommand::Render;
  std::vector<Vec2> sites;
  std::optional<Exponent> exponent;
  std::optional<Grid> grid;
  std::string out;  // empty = stdout (render/circle require a path)
  std::vector<double> p_list;
  double tol = 1e-12;
  double final_threshold = 0.05;
  std::optional<double> u;
  std::optional<double> radius;
  Vec2 center{0.0, 0.0};
  std::string line_filter;      // bisector --line: y=-1 y=1 x=u x=-u all
  std::vector<Cell> cells;      // bisector sampling subset; empty = all grey
  std::vector<double> xs;       // bisector sampling abscissae; empty = default
  bool verdicts = false;
};

namespace cli_detail {

inline double parse_real(const std::string& s, const std::string& what) {
  if (s.empty()) throw UsageError(what + ": empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw UsageError(what + ": malformed number '" + s + "'");
  }
  return v;
}

inline long parse_int(const std::string& s, const std::string& what) {
  if (s.empty()) throw UsageError(what + ": empty integer");
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw UsageError(what + ": malformed integer '" + s + "'");
  }
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline Exponent parse_exponent(const std::string& spec) {
  if (spec == "inf" || spec == "+inf") return Exponent::pos_infinity();
  if (spec == "-inf") return Exponent::neg_infinity();
  const double v = parse_real(spec, "p");
  if (v == 0.0) return Exponent::geometric_zero();  // p=0 and p=0.0 alias L_0
  return Exponent::finite(v);
}

inline Vec2 parse_site(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("--site expects 'x,y', got '" + s + "'");
  return Vec2{parse_real(parts[0], "--site x"), parse_real(parts[1], "--site y")};
}

inline Cell parse_cell(const std::string& s) {
  for (Cell c : {Cell::H1, Cell::H2, Cell::H3, Cell::H4, Cell::S1, Cell::S2,
                 Cell::S3, Cell::S4}) {
    if (s == to_string(c)) return c;
  }
  throw UsageError("--cell expects one of H1..H4,S1..S4, got '" + s + "'");
}

inline void write_text(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + out + " for writing");
  file << text;
  if (!file.flush()) throw IoError("write to " + out + " failed");
}

}  // namespace cli_detail

inline RunConfig parse_args(const std::vector<std::string>& args) {
  if (args.empty()) {
    throw UsageError(
        "expected a subcommand: render | bisector | converge | circle | faces");
  }

  RunConfig cfg;
  if (args[0] == "render") cfg.sub = Subcommand::Render;
  else if (args[0] == "bisector") cfg.sub = Subcommand::Bisector;
  else if (args[0] == "converge") cfg.sub = Subcommand::Converge;
  else if (args[0] == "circle") cfg.sub = Subcommand::Circle;
  else if (args[0] == "faces") cfg.sub = Subcommand::Faces;
  else throw UsageError("unknown subcommand '" + args[0] + "'");

  std::optional<std::pair<int, int>> dims;
  std::optional<std::array<double, 4>> window;

  std::size_t i = 1;
  const auto next = [&](const std::string& flag) -> const std::string& {
    if (i + 1 >= args.size()) throw UsageError(flag + ": missing value");
    return args[++i];
  };
  for (; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("p=", 0) == 0) {
      cfg.exponent = cli_detail::parse_exponent(arg.substr(2));
    } else if (arg == "--site") {
      cfg.sites.push_back(cli_detail::parse_site(next(arg)));
    } else if (arg == "--grid") {
      const auto parts = cli_detail::split(next(arg), 'x');
      if (parts.size() != 2) throw UsageError("--grid expects 'WxH'");
      const long w = cli_detail::parse_int(parts[0], "--grid width");
      const long h = cli_detail::parse_int(parts[1], "--grid height");
      if (w <= 0 || h <= 0 || w > 1 << 16 || h > 1 << 16) {
        throw UsageError("--grid dimensions must be in [1, 65536]");
      }
      dims = {static_cast<int>(w), static_cast<int>(h)};
    } else if (arg == "--window") {
      const auto parts = cli_detail::split(next(arg), ',');
      if (parts.size() != 4) {
        throw UsageError("--window expects 'xmin,ymin,xmax,ymax'");
      }
      window = {cli_detail::parse_real(parts[0], "--window xmin"),
                cli_detail::parse_real(parts[1], "--window ymin"),
                cli_detail::parse_real(parts[2], "--window xmax"),
                cli_detail::parse_real(parts[3], "--window ymax")};
    } else if (arg == "-o" || arg == "--out") {
      cfg.out = next(arg);
    } else if (arg == "--plist") {
      for (const std::string& part : cli_detail::split(next(arg), ',')) {
        const double p = cli_detail::parse_real(part, "--plist");
        if (p == 0.0) throw UsageError("--plist: p values must be nonzero");
        cfg.p_list.push_back(p);
      }
    } else if (arg == "--tol") {
      cfg.tol = cli_detail::parse_real(next(arg), "--tol");
      if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
    } else if (arg == "--final-threshold") {
      cfg.final_threshold = cli_detail::parse_real(next(arg), "--final-threshold");
      if (!(cfg.final_threshold > 0.0)) {
        throw UsageError("--final-threshold must be positive");
      }
    } else if (arg == "--u") {
      cfg.u = cli_detail::parse_real(next(arg), "--u");
      if (!(*cfg.u >= 1.0)) throw UsageError("--u must be >= 1");
    } else if (arg == "--r") {
      cfg.radius = cli_detail::parse_real(next(arg), "--r");
      if (!(*cfg.radius > 0.0)) throw UsageError("--r must be positive");
    } else if (arg == "--center") {
      cfg.center = cli_detail::parse_site(next(arg));
    } else if (arg == "--line") {
      const std::string& v = next(arg);
      if (v != "y=-1" && v != "y=1" && v != "x=u" && v != "x=-u" && v != "all") {
        throw UsageError("--line expects y=-1 | y=1 | x=u | x=-u | all");
      }
      cfg.line_filter = v;
    } else if (arg == "--cell") {
      cfg.cells.push_back(cli_detail::parse_cell(next(arg)));
    } else if (arg == "--x") {
      cfg.xs.push_back(cli_detail::parse_real(next(arg), "--x"));
    } else if (arg == "--verdicts") {
      cfg.verdicts = true;
    } else {
      throw UsageError("unknown flag '" + arg + "'");
    }
  }

  if (dims || window) {
    if (!dims || !window) {
      throw UsageError("--grid and --window must be given together");
    }
    const auto& w = *window;
    if (!(w[2] > w[0]) || !(w[3] > w[1])) {
      throw UsageError("--window must satisfy xmax > xmin and ymax > ymin");
    }
    cfg.grid = make_grid(dims->first, dims->second, w[0], w[1], w[2], w[3]);
  }

  switch (cfg.sub) {
    case Subcommand::Render:
      if (!cfg.exponent) throw UsageError("render: missing p=<spec>");
      if (!cfg.grid) throw UsageError("render: missing --grid/--window");
      if (cfg.out.empty()) throw UsageError("render: missing -o <path>");
      break;
    case Subcommand::Circle:
      if (!cfg.exponent) throw UsageError("circle: missing p=<spec>");
      if (!cfg.grid) throw UsageError("circle: missing --grid/--window");
      if (!cfg.radius) throw UsageError("circle: missing --r <radius>");
      if (cfg.out.empty()) throw UsageError("circle: missing -o <path>");
      break;
    case Subcommand::Faces:
      if (!cfg.exponent) throw UsageError("faces: missing p=<spec>");
      if (!cfg.grid) throw UsageError("faces: missing --grid/--window");
      break;
    case Subcommand::Bisector:
      if (!cfg.exponent) throw UsageError("bisector: missing p=<spec>");
      if (cfg.exponent->kind() == Exponent::Kind::GeometricZero) {
        if (cfg.sites.size() != 2) {
          throw UsageError("bisector p=0: exactly two --site pairs required");
        }
      } else if (cfg.exponent->kind() != Exponent::Kind::Finite) {
        throw UsageError("bisector: p must be finite or 0");
      } else if (!cfg.u) {
        throw UsageError("bisector p=<finite>: missing --u");
      }
      break;
    case Subcommand::Converge:
      if (!cfg.u && cfg.sites.size() != 2) {
        throw UsageError("converge: give --u or exactly two --site pairs");
      }
      if (cfg.p_list.empty()) {
        cfg.p_list = {0.2, 0.1, 0.05, 0.02, 0.01};
      }
      break;
  }
  return cfg;
}

namespace cli_detail {

inline int run_render(const RunConfig& cfg) {
  const OwnerMap map = render_owners(cfg.sites, *cfg.exponent, *cfg.grid);
  if (cfg.out.size() >= 4 && cfg.out.substr(cfg.out.size() - 4) == ".pgm") {
    write_pgm(map, cfg.out);
  } else {
    const std::vector<Rgb> palette = default_palette(map.site_count);
    write_ppm(map, palette, cfg.out);
  }
  return 0;
}

inline int run_bisector(const RunConfig& cfg) {
  if (cfg.exponent->kind() == Exponent::Kind::GeometricZero) {
    const L0Bisector b = l0_bisector(cfg.sites[0], cfg.sites[1]);
    std::string text;
    if (b.degenerate != L0Bisector::Degenerate::None) {
      text += std::string("degenerate,") +
              (b.degenerate == L0Bisector::Degenerate::SharedX ? "SharedX"
                                                               : "SharedY") +
              "\n";
      text += "midpoint," + detail::g17(b.midpoint.x) + "," +
              detail::g17(b.midpoint.y) + "\n";
      text += "line,vertical," + detail::g17(b.midpoint.x) + "\n";
      text += "line,horizontal," + detail::g17(b.midpoint.y) + "\n";
    } else {
      text += "line," + detail::g17(b.line_a) + "," + detail::g17(b.line_b) +
              "," + detail::g17(b.line_c) + "\n";
      text += "hyperbola," + detail::g17(b.center_x) + "," +
              detail::g17(b.center_y) + "," + detail::g17(b.k) + "\n";
      text += "lambda," + detail::g17(b.lambda.x) + "," +
              detail::g17(b.lambda.y) + "\n";
      text += "rho," + detail::g17(b.rho.x) + "," + detail::g17(b.rho.y) + "\n";
    }
    write_text(cfg.out, text);
    return 0;
  }

  const double p = cfg.exponent->p();
  const double u = *cfg.u;
  if (!cfg.line_filter.empty()) {
    std::string text;
    for (const SpecialLinePoint& pt : special_line_points(p, u)) {
      if (cfg.line_filter != "all" && cfg.line_filter != to_string(pt.line)) {
        continue;
      }
      text += std::string(to_string(pt.line)) + "," + detail::g17(pt.point.x) +
              "," + detail::g17(pt.point.y) + "\n";
    }
    write_text(cfg.out, text);
    return 0;
  }

  std::vector<Cell> cells = cfg.cells;
  if (cells.empty()) {
    cells = {Cell::H1, Cell::H2, Cell::H3, Cell::H4,
             Cell::S1, Cell::S2, Cell::S3, Cell::S4};
  }
  std::vector<BisectorSample> samples;
  for (Cell cell : cells) {
    const std::vector<double> xs =
        cfg.xs.empty() ? default_x_grid(cell, u) : cfg.xs;
    for (double x : xs) {
      if (!cell_x_interval(cell, u).contains(x)) continue;
      try {
        samples.push_back(sample_bisector_y(x, p, cell, u, cfg.tol));
      } catch (const NoRootInCell&) {
        // no sample to dump for this abscissa
      }
    }
  }
  write_text(cfg.out, samples_to_csv(samples));
  return 0;
}

inline int run_converge(const RunConfig& cfg) {
  const double u =
      cfg.u ? *cfg.u : canonicalize(cfg.sites[0], cfg.sites[1]).u();
  std::vector<double> plist;
  for (double p : cfg.p_list) {  // both signs, Theorem-1 style
    plist.push_back(std::abs(p));
    plist.push_back(-std::abs(p));
  }
  std::sort(plist.begin(), plist.end(), [](double a, double b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) > std::abs(b) : a > b;
  });
  plist.erase(std::unique(plist.begin(), plist.end()), plist.end());

  const SweepReport report =
      converge_sweep(u, default_x_grids(u), plist, cfg.tol);
  write_text(cfg.out, report_to_csv(report));
  if (cfg.verdicts) {
    std::string text;
    for (const MonotoneVerdict& v : check_monotone(report, cfg.final_threshold)) {
      text += std::string("verdict,") + to_string(v.cell) + "," +
              detail::g17(v.x) + "," + (v.sign > 0 ? "+" : "-") + "," +
              to_string(v.verdict) + "," + detail::g17(v.final_deviation) + "\n";
    }
    std::fputs(text.c_str(), stdout);
  }
  return 0;
}

inline int run_circle(const RunConfig& cfg) {
  const BitMask mask =
      render_circle(cfg.center, *cfg.radius, *cfg.exponent, *cfg.grid);
  write_pgm(mask, cfg.out);
  return 0;
}

inline int run_faces(const RunConfig& cfg) {
  const OwnerMap map = render_owners(cfg.sites, *cfg.exponent, *cfg.grid);
  std::string lines;
  for (int k = 0; k < map.site_count; ++k) {
    lines += std::to_string(k) + "," + std::to_string(count_faces(map, k)) + "\n";
  }
  std::fputs(lines.c_str(), stdout);
  if (!cfg.out.empty()) write_text(cfg.out, face_counts_csv(map));
  return 0;
}

}  // namespace cli_detail

inline int run(const RunConfig& cfg) {
  switch (cfg.sub) {
    case Subcommand::Render: return cli_detail::run_render(cfg);
    case Subcommand::Bisector: return cli_detail::run_bisector(cfg);
    case Subcommand::Converge: return cli_detail::run_converge(cfg);
    case Subcommand::Circle: return cli_detail::run_circle(cfg);
    case Subcommand::Faces: return cli_detail::run_faces(cfg);
  }
  return 1;
}

inline int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    return run(parse_args(args));
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace lpv
