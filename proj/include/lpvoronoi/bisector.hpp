#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lpvoronoi/canonical.hpp"
#include "lpvoronoi/errors.hpp"
#include "lpvoronoi/norms.hpp"

namespace lpv {

namespace detail {

// Shortest round-trip decimal form (17 significant digits).
inline std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Analytic description of the geometric-L0 bisector of two sites.
//
// General position: the line  line_a*x + line_b*y = line_c  together with
// the hyperbola  (x - center_x)(y - center_y) = k.  The bounding-box
// corners lambda and rho lie on both curves.
//
// Shared coordinate: k degenerates to 0, i.e. the bisector is the pair of
// axis-parallel lines x = center_x and y = center_y through the midpoint.
struct L0Bisector {
  enum class Degenerate { None, SharedX, SharedY };

  double line_a = 0.0;
  double line_b = 0.0;
  double line_c = 0.0;
  double center_x = 0.0;
  double center_y = 0.0;
  double k = 0.0;
  Vec2 lambda{};
  Vec2 rho{};
  Degenerate degenerate = Degenerate::None;
  Vec2 midpoint{};
};

inline L0Bisector l0_bisector(Vec2 a, Vec2 b) {
  detail::require_finite(a, "l0_bisector");
  detail::require_finite(b, "l0_bisector");
  if (a == b) throw IdenticalSites();

  L0Bisector r;
  r.line_a = a.y - b.y;
  r.line_b = a.x - b.x;
  r.line_c = a.x * a.y - b.x * b.y;
  r.center_x = 0.5 * (a.x + b.x);
  r.center_y = 0.5 * (a.y + b.y);
  r.k = -0.25 * (a.x - b.x) * (a.y - b.y);
  r.lambda = {a.x, b.y};
  r.rho = {b.x, a.y};
  r.midpoint = {r.center_x, r.center_y};
  if (a.x == b.x) {
    r.degenerate = L0Bisector::Degenerate::SharedX;
  } else if (a.y == b.y) {
    r.degenerate = L0Bisector::Degenerate::SharedY;
  }
  return r;
}

// One of the six faces cut out of the plane by the L_0 bisector. index 0 is
// the face containing the owner's site; 1 and 2 are its satellite faces in
// counterclockwise order starting from the owner face.
struct FaceLabel {
  enum class Owner { A, B };

  Owner owner;
  int index;

  friend bool operator==(FaceLabel l, FaceLabel r) {
    return l.owner == r.owner && l.index == r.index;
  }
};

// Face classification under the geometric L_0 distance; nullopt means q lies
// on the bisector.
inline std::optional<FaceLabel> l0_face(Vec2 q, Vec2 a, Vec2 b) {
  detail::require_finite(q, "l0_face");
  if (a == b) throw IdenticalSites();
  if (a.x == b.x || a.y == b.y) throw DegeneratePair();

  const Ordering cmp = compare_distance(q, a, b, Exponent::geometric_zero());
  if (cmp == Ordering::Equidistant) return std::nullopt;
  const auto owner =
      cmp == Ordering::CloserToA ? FaceLabel::Owner::A : FaceLabel::Owner::B;

  const L0Bisector bis = l0_bisector(a, b);
  const auto f_hyp = [&](Vec2 t) {
    return (t.x - bis.center_x) * (t.y - bis.center_y) - bis.k;
  };
  // f_hyp has the same sign at both sites; matching that sign puts q between
  // the hyperbola branches, i.e. in one of the two site faces.
  if (f_hyp(q) * f_hyp(a) >= 0.0) return FaceLabel{owner, 0};

  const CanonicalFrame frame = canonicalize(a, b);
  Vec2 qc = frame.apply(q);
  const Vec2 owner_img = frame.apply(owner == FaceLabel::Owner::A ? a : b);
  if (owner_img.x > 0.0) qc = {-qc.x, -qc.y};  // put the owner at (-u, -1)
  int index = qc.x > 0.0 ? 1 : 2;
  if (frame.flips_orientation()) index = 3 - index;
  return FaceLabel{owner, index};
}

// A numeric bisector point (x, y) with w_p(y) = v_p(x) up to residual.
struct BisectorSample {
  double x;
  double y;
  double p;
  Cell cell;
  double residual;
};

namespace detail {

inline int sign_of(double t) { return t > 0.0 ? 1 : (t < 0.0 ? -1 : 0); }

// Plain bisection on an established sign-change bracket; returns the probe
// with the smallest |g| as {y, |g(y)|}.
template <class G>
std::pair<double, double> bisect_bracketed(G&& g, double lo, double hi,
                                           double g_lo, double g_hi) {
  if (g_lo == 0.0) return {lo, 0.0};
  if (g_hi == 0.0) return {hi, 0.0};
  double best_y = std::abs(g_lo) < std::abs(g_hi) ? lo : hi;
  double best_g = std::min(std::abs(g_lo), std::abs(g_hi));
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (std::abs(gm) < best_g) {
      best_g = std::abs(gm);
      best_y = mid;
    }
    if (gm == 0.0) break;
    if (sign_of(gm) == sign_of(g_lo)) {
      lo = mid;
      g_lo = gm;
    } else {
      hi = mid;
      g_hi = gm;
    }
  }
  return {best_y, best_g};
}

// Root of g on the open interval iv: brackets by sign change starting
// 1e-9 inside the finite endpoint(s) and doubling the far endpoint of
// unbounded intervals up to 1e12, then bisects. Throws NoRootInCell when no
// sign change exists; returns {y, |g(y)|}.
template <class G>
std::pair<double, double> bisect_in_interval(G&& g, Interval iv,
                                             const std::string& what) {
  constexpr double kEdge = 1e-9;
  constexpr double kFarLimit = 1e12;

  if (std::isfinite(iv.lo) && std::isfinite(iv.hi)) {
    const double lo = iv.lo + kEdge;
    const double hi = iv.hi - kEdge;
    const double glo = g(lo);
    if (glo == 0.0) return {lo, 0.0};
    const double ghi = g(hi);
    if (ghi == 0.0 || sign_of(glo) != sign_of(ghi)) {
      return bisect_bracketed(g, lo, hi, glo, ghi);
    }
    throw NoRootInCell(what);
  }
  if (std::isfinite(iv.lo)) {  // (lo, +inf)
    const double near = iv.lo + kEdge;
    const double gn = g(near);
    if (gn == 0.0) return {near, 0.0};
    for (double far = 2.0 * std::max(1.0, iv.lo); far <= kFarLimit; far *= 2.0) {
      const double gf = g(far);
      if (gf == 0.0 || sign_of(gf) != sign_of(gn)) {
        return bisect_bracketed(g, near, far, gn, gf);
      }
    }
    throw NoRootInCell(what);
  }
  // (-inf, hi)
  const double near = iv.hi - kEdge;
  const double gn = g(near);
  if (gn == 0.0) return {near, 0.0};
  for (double far = 2.0 * std::min(-1.0, iv.hi); far >= -kFarLimit; far *= 2.0) {
    const double gf = g(far);
    if (gf == 0.0 || sign_of(gf) != sign_of(gn)) {
      return bisect_bracketed(g, far, near, gf, gn);
    }
  }
  throw NoRootInCell(what);
}

}  // namespace detail

inline BisectorSample sample_bisector_y(double x, double p, Cell cell, double u,
                                        double tol = 1e-12) {
  if (p == 0.0 || !std::isfinite(p)) {
    throw std::invalid_argument("sample_bisector_y: p must be a nonzero real");
  }
  if (!(u >= 1.0)) {
    throw std::invalid_argument("sample_bisector_y: u must be >= 1");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("sample_bisector_y: tol must be positive");
  }
  if (is_white_cell(cell)) {
    throw InvalidCell(std::string(to_string(cell)) +
                      " contains no bisector points");
  }
  if (!is_grey_cell(cell)) {
    throw InvalidCell(std::string(to_string(cell)) + " is not a sampling cell");
  }
  if (!cell_x_interval(cell, u).contains(x)) {
    throw std::invalid_argument(
        "sample_bisector_y: x outside the open X-interval of " +
        std::string(to_string(cell)));
  }

  const double vx = v_p(x, u, p);
  const auto g = [&](double y) { return w_p(y, p) - vx; };
  const std::string what = "no sign change of w_p(y) - v_p(x) in " +
                           std::string(to_string(cell)) + " at x=" +
                           detail::g17(x) + ", p=" + detail::g17(p);
  const auto [y, residual] =
      detail::bisect_in_interval(g, cell_y_interval(cell, u), what);
  if (residual > tol) {
    throw Error("sample_bisector_y: residual " + detail::g17(residual) +
                " stalled above tol " + detail::g17(tol));
  }
  return BisectorSample{x, y, p, cell, residual};
}

// Lines of the canonical grid that can carry isolated bisector points.
enum class SpecialLine { Origin, YMinusOne, YPlusOne, XMinusU, XPlusU };

inline const char* to_string(SpecialLine line) {
  switch (line) {
    case SpecialLine::Origin: return "origin";
    case SpecialLine::YMinusOne: return "y=-1";
    case SpecialLine::YPlusOne: return "y=1";
    case SpecialLine::XMinusU: return "x=-u";
    case SpecialLine::XPlusU: return "x=u";
  }
  return "?";
}

struct SpecialLinePoint {
  Vec2 point;
  SpecialLine line;
};

// Bisector points on the grid lines of the canonical frame.
//
// The origin is the only bisector point on the axes, for every p. On
// y = -1 and p > 0 there are two roots x_p in (-u, u) and x'_p in (u, inf)
// of |(x+u)/2|^p - |(x-u)/2|^p = 1 (mirrored on y = 1); both collapse into
// the corner as p -> 0 and are closer to u than one ulp once |p| drops
// below roughly 0.07 for u = 2. For p < 0 only the corner (u, -1) is on
// y = -1. The lines x = +/-u carry no points for p > 0 unless u = 1; for
// p < 0 or u = 1 they contain exactly the corners.
inline std::vector<SpecialLinePoint> special_line_points(double p, double u) {
  if (p == 0.0 || !std::isfinite(p) || std::abs(p) >= 1.0) {
    throw std::invalid_argument(
        "special_line_points: p must be a nonzero real with |p| < 1");
  }
  if (!(u >= 1.0)) {
    throw std::invalid_argument("special_line_points: u must be >= 1");
  }

  std::vector<SpecialLinePoint> out;
  out.push_back({{0.0, 0.0}, SpecialLine::Origin});

  if (p > 0.0 && u > 1.0) {
    const auto f = [&](double x) {
      return detail::pow_diff(std::abs(x + u) / 2.0, std::abs(x - u) / 2.0, p) -
             1.0;
    };
    // f rises from -u^p at x = -u to its peak u^p - 1 > 0 at x = u, then
    // falls back towards -1; one root on each side of the peak. The peak
    // value f(u) itself is exact, so the brackets may close on x = u.
    const double x_in = -u + 1e-12 * u;
    const auto [xi, ri] =
        detail::bisect_bracketed(f, x_in, u, f(x_in), f(u));
    (void)ri;
    double xo = u;
    double ro = 0.0;
    bool found = false;
    for (double far = 2.0 * u; far <= 1e12; far *= 2.0) {
      const double gf = f(far);
      if (detail::sign_of(gf) != detail::sign_of(f(u)) || gf == 0.0) {
        std::tie(xo, ro) = detail::bisect_bracketed(f, u, far, f(u), gf);
        found = true;
        break;
      }
    }
    (void)ro;
    if (!found) throw NoRootInCell("outer root on y=-1 beyond 1e12");
    out.push_back({{xi, -1.0}, SpecialLine::YMinusOne});
    out.push_back({{xo, -1.0}, SpecialLine::YMinusOne});
    out.push_back({{-xi, 1.0}, SpecialLine::YPlusOne});
    out.push_back({{-xo, 1.0}, SpecialLine::YPlusOne});
  } else if (p < 0.0) {
    out.push_back({{u, -1.0}, SpecialLine::YMinusOne});
    out.push_back({{-u, 1.0}, SpecialLine::YPlusOne});
  }
  if (u == 1.0) {
    if (p > 0.0) {
      out.push_back({{u, -1.0}, SpecialLine::YMinusOne});
      out.push_back({{-u, 1.0}, SpecialLine::YPlusOne});
    }
    out.push_back({{u, -1.0}, SpecialLine::XPlusU});
    out.push_back({{-u, 1.0}, SpecialLine::XMinusU});
  } else if (p < 0.0) {
    out.push_back({{u, -1.0}, SpecialLine::XPlusU});
    out.push_back({{-u, 1.0}, SpecialLine::XMinusU});
  }
  return out;
}

inline std::string samples_to_csv(std::span<const BisectorSample> samples) {
  std::string csv = "p,x,y,cell,residual\n";
  for (const BisectorSample& s : samples) {
    csv += detail::g17(s.p) + "," + detail::g17(s.x) + "," + detail::g17(s.y) +
           "," + to_string(s.cell) + "," + detail::g17(s.residual) + "\n";
  }
  return csv;
}

}  // namespace lpv
