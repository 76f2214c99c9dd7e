#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lpvoronoi/bisector.hpp"
#include "lpvoronoi/canonical.hpp"

namespace lpv {

// Target curve of a grey cell: h for H-cells, s for S-cells.
inline double cell_target(Cell cell, double x, double u) {
  if (is_hyperbola_cell(cell)) return h(x, u);
  if (is_line_cell(cell)) return s(x, u);
  throw InvalidCell(std::string(to_string(cell)) + " has no target curve");
}

struct SweepRow {
  double p;
  double x;
  Cell cell;
  double y_p;        // NaN when flagged noroot
  double target;
  double deviation;  // |y_p - target|, NaN when flagged noroot
  bool ok;
};

struct SweepMeta {
  double tol = 1e-12;
  std::vector<double> p_list;
  std::string x_grid_spec;
};

// Rows are sorted by (cell, x, |p| descending, p descending), so the report
// is identical however the samples were computed.
struct SweepReport {
  double u = 1.0;
  SweepMeta meta;
  std::vector<SweepRow> rows;
};

// Nine sampling abscissae per cell at relative positions 0.1 .. 0.9 of the
// cell's X-interval; unbounded intervals are truncated at |x| = 5u.
inline std::vector<double> default_x_grid(Cell cell, double u) {
  const Interval iv = cell_x_interval(cell, u);
  const double lo = std::isfinite(iv.lo) ? iv.lo : -5.0 * u;
  const double hi = std::isfinite(iv.hi) ? iv.hi : 5.0 * u;
  std::vector<double> xs;
  xs.reserve(9);
  for (int t = 1; t <= 9; ++t) {
    xs.push_back(lo + 0.1 * t * (hi - lo));
  }
  return xs;
}

inline std::map<Cell, std::vector<double>> default_x_grids(double u) {
  std::map<Cell, std::vector<double>> grids;
  for (Cell c : {Cell::H1, Cell::H2, Cell::H3, Cell::H4, Cell::S1, Cell::S2,
                 Cell::S3, Cell::S4}) {
    grids[c] = default_x_grid(c, u);
  }
  return grids;
}

inline SweepReport converge_sweep(double u,
                                  const std::map<Cell, std::vector<double>>& xs,
                                  std::span<const double> p_list, double tol) {
  if (!(u >= 1.0)) throw std::invalid_argument("converge_sweep: u must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("converge_sweep: tol must be positive");
  if (p_list.empty()) throw std::invalid_argument("converge_sweep: empty p list");

  SweepReport report;
  report.u = u;
  report.meta.tol = tol;
  report.meta.p_list.assign(p_list.begin(), p_list.end());
  for (const auto& [cell, grid] : xs) {
    if (!report.meta.x_grid_spec.empty()) report.meta.x_grid_spec += ";";
    report.meta.x_grid_spec +=
        std::string(to_string(cell)) + ":" + std::to_string(grid.size());
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [cell, grid] : xs) {
    for (double x : grid) {
      const double target = cell_target(cell, x, u);
      for (double p : p_list) {
        SweepRow row{p, x, cell, nan, target, nan, false};
        try {
          const BisectorSample smp = sample_bisector_y(x, p, cell, u, tol);
          row.y_p = smp.y;
          row.deviation = std::abs(smp.y - target);
          row.ok = true;
        } catch (const NoRootInCell&) {
          // recorded with the noroot flag, not dropped
        }
        report.rows.push_back(row);
      }
    }
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const SweepRow& a, const SweepRow& b) {
              if (a.cell != b.cell) return a.cell < b.cell;
              if (a.x != b.x) return a.x < b.x;
              if (std::abs(a.p) != std::abs(b.p))
                return std::abs(a.p) > std::abs(b.p);
              return a.p > b.p;
            });
  return report;
}

enum class Verdict { Pass, Fail, Insufficient };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Insufficient: return "INSUFFICIENT";
  }
  return "?";
}

struct MonotoneVerdict {
  Cell cell;
  double x;
  int sign;  // +1 / -1
  Verdict verdict;
  double final_deviation;  // at the smallest |p| of the series
};

// Per (cell, x, sign of p): PASS iff the deviation series is non-increasing
// as |p| decreases and the last deviation is at most final_threshold. Rows
// flagged noroot are excluded first; groups left with fewer than two
// distinct |p| values come back as Insufficient.
inline std::vector<MonotoneVerdict> check_monotone(const SweepReport& report,
                                                   double final_threshold = 0.05) {
  std::vector<double> abs_ps;
  for (double p : report.meta.p_list) abs_ps.push_back(std::abs(p));
  std::sort(abs_ps.begin(), abs_ps.end());
  abs_ps.erase(std::unique(abs_ps.begin(), abs_ps.end()), abs_ps.end());
  if (report.rows.empty() || abs_ps.size() < 2) {
    throw InsufficientData("check_monotone needs >= 2 distinct |p| values");
  }

  std::vector<MonotoneVerdict> verdicts;
  std::size_t i = 0;
  while (i < report.rows.size()) {
    const Cell cell = report.rows[i].cell;
    const double x = report.rows[i].x;
    std::size_t j = i;
    while (j < report.rows.size() && report.rows[j].cell == cell &&
           report.rows[j].x == x) {
      ++j;
    }
    for (int sign : {+1, -1}) {
      std::vector<double> devs;  // |p| descending by row order
      for (std::size_t k = i; k < j; ++k) {
        const SweepRow& row = report.rows[k];
        if (!row.ok || (sign > 0) != (row.p > 0.0)) continue;
        devs.push_back(row.deviation);
      }
      MonotoneVerdict v{cell, x, sign, Verdict::Insufficient,
                        std::numeric_limits<double>::quiet_NaN()};
      if (devs.size() >= 2) {
        v.verdict = Verdict::Pass;
        for (std::size_t k = 1; k < devs.size(); ++k) {
          if (devs[k] > devs[k - 1]) v.verdict = Verdict::Fail;
        }
        v.final_deviation = devs.back();
        if (!(devs.back() <= final_threshold)) v.verdict = Verdict::Fail;
      }
      verdicts.push_back(v);
    }
    i = j;
  }
  return verdicts;
}

struct ErrorBudget {
  double f;       // (1/p)(1 - base^-p) v_p(x); base = |x| for h, u for s
  double zbound;  // cell upper bound on |z_p(y*)|^-1
  double budget;  // zbound * |f|
};

// Mean-value bound on |y_p - target|: the middle-row cells use the global
// maximum 1/2 of |z_p|^-1 on (-1,1); the outer-row cells evaluate |z_p|^-1
// at 2|target|+3, the far end of the interval the samples provably stay in
// once |p| is small.
inline ErrorBudget lemma5_error_budget(double x, double p, double u, Cell cell) {
  if (p == 0.0 || !std::isfinite(p)) {
    throw std::invalid_argument("lemma5_error_budget: p must be a nonzero real");
  }
  if (!(u >= 1.0)) {
    throw std::invalid_argument("lemma5_error_budget: u must be >= 1");
  }
  if (!is_grey_cell(cell) || !cell_x_interval(cell, u).contains(x)) {
    throw std::invalid_argument(
        "lemma5_error_budget: x outside the open X-interval of " +
        std::string(to_string(cell)));
  }

  const double target = cell_target(cell, x, u);
  const double base = is_hyperbola_cell(cell) ? std::abs(x) : u;
  const double f = (-std::expm1(-p * std::log(base)) / p) * v_p(x, u, p);

  double zbound;
  switch (cell) {
    case Cell::H2:
    case Cell::S1:
    case Cell::H3:
    case Cell::S4:
      zbound = z_p_inv(2.0 * std::abs(target) + 3.0, p);
      break;
    default:
      zbound = 0.5;
      break;
  }
  return ErrorBudget{f, zbound, zbound * std::abs(f)};
}

inline std::string report_to_csv(const SweepReport& report) {
  std::string csv = "p,x,cell,y_p,target,deviation,flag\n";
  for (const SweepRow& row : report.rows) {
    csv += detail::g17(row.p) + "," + detail::g17(row.x) + "," +
           to_string(row.cell) + "," + detail::g17(row.y_p) + "," +
           detail::g17(row.target) + "," + detail::g17(row.deviation) + "," +
           (row.ok ? "ok" : "noroot") + "\n";
  }
  return csv;
}

}  // namespace lpv
