// Acceptance suite: runs every acceptance criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lpvoronoi/lpvoronoi.hpp"
#include "support.hpp"

using lpv::BisectorSample;
using lpv::BitMask;
using lpv::Cell;
using lpv::compare_distance;
using lpv::count_faces;
using lpv::Exponent;
using lpv::Grid;
using lpv::L0Bisector;
using lpv::lp_norm;
using lpv::make_grid;
using lpv::Ordering;
using lpv::OwnerMap;
using lpv::render_circle;
using lpv::render_owners;
using lpv::SpecialLine;
using lpv::SweepReport;
using lpv::SweepRow;
using lpv::Vec2;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_equidistance() {
  testsupport::Rng rng(9001);
  const Exponent l0 = Exponent::geometric_zero();
  double worst = 0.0;
  int pairs = 0;
  while (pairs < 1000) {
    const Vec2 a{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    const Vec2 b{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    if (a.x == b.x || a.y == b.y) continue;
    ++pairs;
    const L0Bisector bis = lpv::l0_bisector(a, b);
    const double spread =
        std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), 1.0});
    for (int t = 0; t < 100; ++t) {
      const double lx = bis.center_x + rng.uniform(-3.0, 3.0) * spread;
      const Vec2 lq{lx, (bis.line_c - bis.line_a * lx) / bis.line_b};
      const double la = lp_norm(lq - a, l0);
      const double lb = lp_norm(lq - b, l0);
      worst = std::max(worst, std::abs(la - lb) / std::max(1.0, la));

      const double dx =
          rng.sign() * rng.log_uniform(0.05 * spread, 5.0 * spread);
      const Vec2 hq{bis.center_x + dx, bis.center_y + bis.k / dx};
      const double ha = lp_norm(hq - a, l0);
      const double hb = lp_norm(hq - b, l0);
      worst = std::max(worst, std::abs(ha - hb) / std::max(1.0, ha));
    }
  }
  report(1, "analytic equidistance on line and hyperbola", worst <= 1e-9,
         "1000 pairs x 200 samples, worst residual " + fmt(worst));
}

// --- criterion 2 -----------------------------------------------------------

void criterion_special_roots() {
  const auto pts = lpv::special_line_points(0.5, 2.0);
  double x_in = 0.0, x_out = 0.0;
  int found = 0;
  for (const auto& pt : pts) {
    if (pt.line == SpecialLine::YMinusOne) {
      (found == 0 ? x_in : x_out) = pt.point.x;
      ++found;
    }
  }
  const double err_in = std::abs(x_in - std::sqrt(3.0));
  const double err_out = std::abs(x_out - 2.5);
  report(2, "exact y=-1 roots sqrt(3) and 2.5 at u=2, p=0.5",
         found == 2 && err_in <= 1e-12 && err_out <= 1e-12,
         "|x_p-sqrt3|=" + fmt(err_in) + ", |x'_p-2.5|=" + fmt(err_out));
}

// --- criterion 3 -----------------------------------------------------------

void criterion_symmetric_point() {
  double worst = 0.0;
  for (double ap : {0.9, 0.5, 0.1, 0.05, 0.01}) {
    for (double p : {ap, -ap}) {
      const double residual = std::abs(lpv::w_p(-2.0, p) - lpv::v_p(1.0, 2.0, p));
      worst = std::max(worst, residual);
    }
  }
  report(3, "(1,-2) lies on B_p for u=2 at all tested p", worst <= 1e-12,
         "worst residual " + fmt(worst));
}

// --- criteria 4, 6, 7 share the default sweep ------------------------------

SweepReport default_sweep() {
  const std::vector<double> ps{0.2,  -0.2,  0.1,  -0.1, 0.05,
                               -0.05, 0.02, -0.02, 0.01, -0.01};
  return lpv::converge_sweep(2.0, lpv::default_x_grids(2.0), ps, 1e-12);
}

void criterion_sweep(const SweepReport& sweep) {
  // Final threshold pinned from the bisection oracle: the largest deviation
  // on the default grid at |p| = 0.01 is 0.16282 (H-cells near the
  // asymptote), so 0.165 is the frozen anchor.
  const double kFinalThreshold = 0.165;

  bool all_ok = true;
  for (const SweepRow& row : sweep.rows) all_ok &= row.ok;

  bool monotone = true;
  for (const auto& v : lpv::check_monotone(sweep, kFinalThreshold)) {
    monotone &= v.verdict == lpv::Verdict::Pass;
  }

  double max_01 = 0.0, max_001 = 0.0;
  for (const SweepRow& row : sweep.rows) {
    if (!row.ok) continue;
    if (std::abs(row.p) == 0.1) max_01 = std::max(max_01, row.deviation);
    if (std::abs(row.p) == 0.01) max_001 = std::max(max_001, row.deviation);
  }

  const bool pass = all_ok && monotone && max_001 < max_01 &&
                    max_001 <= kFinalThreshold;
  report(4, "convergence sweep monotone toward h/s", pass,
         "max dev " + fmt(max_01) + " at |p|=0.1 -> " + fmt(max_001) +
             " at |p|=0.01, threshold " + fmt(kFinalThreshold));
}

void criterion_containment(const SweepReport& sweep) {
  bool pass = true;
  int checked = 0;
  for (const SweepRow& row : sweep.rows) {
    if (!row.ok || std::abs(row.p) > 0.05) continue;
    if (row.cell == Cell::H2) {
      ++checked;
      pass &= row.y_p > 1.0 && row.y_p < 2.0 * row.target + 3.0;
    } else if (row.cell == Cell::S1) {
      ++checked;
      pass &= row.y_p < 2.0 * row.target + 3.0;
    }
  }
  report(6, "H2 samples in (1, 2h+3), S1 samples below 2s+3", pass,
         std::to_string(checked) + " rows at |p| <= 0.05");
}

void criterion_budget(const SweepReport& sweep) {
  bool pass = true;
  double min_margin = std::numeric_limits<double>::infinity();
  int checked = 0;
  for (const SweepRow& row : sweep.rows) {
    if (!row.ok || std::abs(row.p) > 0.05) continue;
    ++checked;
    const auto eb = lpv::lemma5_error_budget(row.x, row.p, sweep.u, row.cell);
    if (row.deviation > eb.budget * (1.0 + 1e-9)) pass = false;
    if (eb.budget > 0.0) {
      min_margin = std::min(min_margin, (eb.budget - row.deviation) / eb.budget);
    }
  }
  report(7, "measured deviation within the mean-value budget", pass,
         std::to_string(checked) + " rows, min relative margin " +
             fmt(min_margin));
}

// --- criterion 5 -----------------------------------------------------------

void criterion_factor_out() {
  testsupport::Rng rng(9005);
  double worst = 0.0;
  int triples = 0;
  while (triples < 10000) {
    const double u = rng.uniform(1.0, 10.0);
    const double x = rng.sign() * rng.log_uniform(1e-3 * u, 5.0 * u);
    if (std::abs(std::abs(x) - u) < 1e-6 * u) continue;
    const double p = rng.sign() * rng.log_uniform(1e-3, 0.9);
    ++triples;
    const double v = lpv::v_p(x, u, p);
    const double lhs_h = lpv::w_p(lpv::h(x, u), p) * std::pow(std::abs(x), p);
    const double lhs_s = lpv::w_p(lpv::s(x, u), p) * std::pow(u, p);
    const double scale_h = std::max({std::abs(v), std::abs(lhs_h), 1e-300});
    const double scale_s = std::max({std::abs(v), std::abs(lhs_s), 1e-300});
    worst = std::max(worst, std::abs(lhs_h - v) / scale_h);
    worst = std::max(worst, std::abs(lhs_s - v) / scale_s);
  }
  report(5, "factor-out identities w_p(h)|x|^p = v_p = w_p(s)u^p",
         worst <= 1e-9, "10^4 triples, worst relative error " + fmt(worst));
}

// --- criterion 8 -----------------------------------------------------------

void criterion_six_faces() {
  const std::vector<Vec2> sites{{-2.0, -1.0}, {2.0, 1.0}};
  const Grid grid = make_grid(512, 512, -6.0, -3.0, 6.0, 3.0);
  const OwnerMap l0 = render_owners(sites, Exponent::geometric_zero(), grid);
  const OwnerMap l2 = render_owners(sites, Exponent::finite(2.0), grid);
  const int f0 = count_faces(l0, 0), f1 = count_faces(l0, 1);
  const int e0 = count_faces(l2, 0), e1 = count_faces(l2, 1);
  report(8, "three L0 faces per site, one euclidean face",
         f0 == 3 && f1 == 3 && e0 == 1 && e1 == 1,
         "L0: " + std::to_string(f0) + "+" + std::to_string(f1) +
             ", L2: " + std::to_string(e0) + "+" + std::to_string(e1));
}

// --- criterion 9 -----------------------------------------------------------

std::vector<std::uint8_t> dilate_chebyshev2(const BitMask& mask) {
  const Grid& g = mask.grid;
  std::vector<std::uint8_t> out(g.size(), 0);
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      if (!mask.get(i, j)) continue;
      for (int dj = -2; dj <= 2; ++dj) {
        for (int di = -2; di <= 2; ++di) {
          const int ni = i + di, nj = j + dj;
          if (ni < 0 || ni >= g.width || nj < 0 || nj >= g.height) continue;
          out[g.index(ni, nj)] = 1;
        }
      }
    }
  }
  return out;
}

void criterion_raster_convergence() {
  const double u = 2.0;
  const std::vector<Vec2> sites{{-u, -1.0}, {u, 1.0}};
  const Grid grid = make_grid(512, 512, -6.0, -3.0, 6.0, 3.0);

  const OwnerMap base = render_owners(sites, Exponent::geometric_zero(), grid);

  // pixels within ~2 pixel diagonals of B_*(a,b): sign crossings of the
  // line x + u y and the hyperbola x y + u, dilated by a Chebyshev radius
  // of 2
  const BitMask near_line =
      lpv::mark_sign_crossings([&](Vec2 q) { return q.x + u * q.y; }, grid);
  const BitMask near_hyp =
      lpv::mark_sign_crossings([&](Vec2 q) { return q.x * q.y + u; }, grid);
  BitMask near{grid, near_line.bits};
  for (std::size_t t = 0; t < near.bits.size(); ++t) {
    near.bits[t] = near_line.bits[t] || near_hyp.bits[t];
  }
  const std::vector<std::uint8_t> excluded = dilate_chebyshev2(near);

  bool pass = true;
  std::string detail;
  for (double p : {0.05, -0.05}) {
    const OwnerMap lp = render_owners(sites, Exponent::finite(p), grid);
    long included = 0, agree = 0;
    for (std::size_t t = 0; t < grid.size(); ++t) {
      if (excluded[t]) continue;
      ++included;
      if (lp.owners[t] == base.owners[t]) ++agree;
    }
    const double frac = static_cast<double>(agree) / included;
    pass &= frac >= 0.99;
    if (!detail.empty()) detail += ", ";
    detail += "p=" + fmt(p) + ": " + fmt(100.0 * frac) + "%";
  }
  report(9, "owner maps at p=+/-0.05 match the L0 map off-bisector", pass,
         detail);
}

// --- criterion 10 ----------------------------------------------------------

void criterion_circles() {
  const double r = 2.0;
  // axes sampled exactly (column/row 128 at 0), window wide enough for the
  // p = -0.5 branches that bend at (8, 8)
  const Grid grid =
      make_grid(257, 257, -12.046875, -12.046875, 12.046875, 12.046875);
  const double hx = grid.pixel_width(), hy = grid.pixel_height();

  bool centre_clear = true;
  const BitMask neg = render_circle({0.0, 0.0}, r, Exponent::finite(-0.5), grid);
  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      if (!neg.get(i, j)) continue;
      const double ax = std::abs(grid.world_x(i));
      const double ay = std::abs(grid.world_y(j));
      if (ax <= r - hx && ay <= r - hy) centre_clear = false;
    }
  }

  bool corners_on = true;
  for (double p : {0.5, 2.0}) {
    const BitMask mask = render_circle({0.0, 0.0}, r, Exponent::finite(p), grid);
    for (Vec2 c : {Vec2{r, 0.0}, Vec2{-r, 0.0}, Vec2{0.0, r}, Vec2{0.0, -r}}) {
      const int ci = static_cast<int>((c.x - grid.xmin) / hx);
      const int cj = static_cast<int>((grid.ymax - c.y) / hy);
      bool near = false;
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int ni = ci + di, nj = cj + dj;
          if (ni < 0 || ni >= grid.width || nj < 0 || nj >= grid.height)
            continue;
          near |= mask.get(ni, nj);
        }
      }
      corners_on &= near;
    }
  }
  report(10, "p<0 circle avoids the centre square; corners on curve for p>0",
         centre_clear && corners_on,
         std::string("centre ") + (centre_clear ? "clear" : "hit") +
             ", corners " + (corners_on ? "on" : "off"));
}

// --- criterion 11 ----------------------------------------------------------

void criterion_special_line_exclusions() {
  bool pass = true;
  for (double p : {0.5, 0.1}) {
    for (const auto& pt : lpv::special_line_points(p, 2.0)) {
      if (pt.line == SpecialLine::XPlusU || pt.line == SpecialLine::XMinusU) {
        pass = false;
      }
    }
  }
  for (double p : {-0.5, -0.1}) {
    int on_xu = 0, on_xnu = 0, on_ym = 0;
    Vec2 xu{}, xnu{}, ym{};
    for (const auto& pt : lpv::special_line_points(p, 2.0)) {
      if (pt.line == SpecialLine::XPlusU) { ++on_xu; xu = pt.point; }
      if (pt.line == SpecialLine::XMinusU) { ++on_xnu; xnu = pt.point; }
      if (pt.line == SpecialLine::YMinusOne) { ++on_ym; ym = pt.point; }
    }
    pass &= on_xu == 1 && xu == Vec2{2.0, -1.0};
    pass &= on_xnu == 1 && xnu == Vec2{-2.0, 1.0};
    pass &= on_ym == 1 && ym == Vec2{2.0, -1.0};
  }
  report(11, "x=+/-u carries no points for p>0 and only corners for p<0",
         pass, "u=2, p in {0.5, 0.1, -0.5, -0.1}");
}

// --- criterion 12 ----------------------------------------------------------

void criterion_witnesses() {
  const double u = 2.0;
  const Vec2 a{-u, -1.0}, b{u, 1.0};
  const Vec2 gamma{-u, 2.0}, delta{2.0 * u, -1.0};
  bool pass = true;
  for (double p : {-0.1, -0.01, 0.01, 0.1}) {
    const Exponent e = Exponent::finite(p);
    pass &= compare_distance(gamma, a, b, e) == Ordering::CloserToA;
    pass &= compare_distance(delta, a, b, e) == Ordering::CloserToA;
  }
  report(12, "gamma and delta witnesses stay in a's region", pass,
         "p in {-0.1, -0.01, 0.01, 0.1}");
}

}  // namespace

int main() {
  criterion_equidistance();
  criterion_special_roots();
  criterion_symmetric_point();
  const SweepReport sweep = default_sweep();
  criterion_sweep(sweep);
  criterion_factor_out();
  criterion_containment(sweep);
  criterion_budget(sweep);
  criterion_six_faces();
  criterion_raster_convergence();
  criterion_circles();
  criterion_special_line_exclusions();
  criterion_witnesses();

  std::printf("%s: %d of 12 criteria failed\n",
              g_failures == 0 ? "OK" : "FAILED", g_failures);
  return g_failures;
}
