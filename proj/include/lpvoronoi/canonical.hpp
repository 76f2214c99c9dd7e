#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lpvoronoi/errors.hpp"
#include "lpvoronoi/norms.hpp"

namespace lpv {

// The canonical plane is split by the lines x in {-u, 0, u} and
// y in {-1, 0, 1} into twelve open cells. H-cells carry hyperbola pieces of
// the bisector, S-cells line pieces, white cells carry none. Points landing
// exactly on a grid line classify as the boundary variants.
//
// Column/row layout (columns left to right, middle row is y in (-1,1)):
//
//            x < -u     -u < x < 0    0 < x < u     u < x
//   y > 1      S1           H2         white NE      white FE
//   |y| < 1    H1           S2           S3            H4
//   y < -1   white FW     white NW       H3            S4
enum class Cell {
  H1,
  H2,
  H3,
  H4,
  S1,
  S2,
  S3,
  S4,
  WhiteUpperRightNear,  // x in (0, u),    y > 1
  WhiteUpperRightFar,   // x in (u, inf),  y > 1
  WhiteLowerLeftNear,   // x in (-u, 0),   y < -1
  WhiteLowerLeftFar,    // x in (-inf,-u), y < -1
  BoundaryXNegU,
  BoundaryXZero,
  BoundaryXPosU,
  BoundaryYNegOne,
  BoundaryYZero,
  BoundaryYPosOne,
};

inline bool is_hyperbola_cell(Cell c) {
  return c == Cell::H1 || c == Cell::H2 || c == Cell::H3 || c == Cell::H4;
}

inline bool is_line_cell(Cell c) {
  return c == Cell::S1 || c == Cell::S2 || c == Cell::S3 || c == Cell::S4;
}

inline bool is_grey_cell(Cell c) {
  return is_hyperbola_cell(c) || is_line_cell(c);
}

inline bool is_white_cell(Cell c) {
  return c == Cell::WhiteUpperRightNear || c == Cell::WhiteUpperRightFar ||
         c == Cell::WhiteLowerLeftNear || c == Cell::WhiteLowerLeftFar;
}

inline bool is_boundary(Cell c) {
  return !is_grey_cell(c) && !is_white_cell(c);
}

inline const char* to_string(Cell c) {
  switch (c) {
    case Cell::H1: return "H1";
    case Cell::H2: return "H2";
    case Cell::H3: return "H3";
    case Cell::H4: return "H4";
    case Cell::S1: return "S1";
    case Cell::S2: return "S2";
    case Cell::S3: return "S3";
    case Cell::S4: return "S4";
    case Cell::WhiteUpperRightNear: return "W_UR_NEAR";
    case Cell::WhiteUpperRightFar: return "W_UR_FAR";
    case Cell::WhiteLowerLeftNear: return "W_LL_NEAR";
    case Cell::WhiteLowerLeftFar: return "W_LL_FAR";
    case Cell::BoundaryXNegU: return "x=-u";
    case Cell::BoundaryXZero: return "x=0";
    case Cell::BoundaryXPosU: return "x=u";
    case Cell::BoundaryYNegOne: return "y=-1";
    case Cell::BoundaryYZero: return "y=0";
    case Cell::BoundaryYPosOne: return "y=1";
  }
  return "?";
}

// Open interval; lo/hi may be +/-infinity.
struct Interval {
  double lo;
  double hi;

  bool contains(double t) const { return lo < t && t < hi; }
};

inline Interval cell_x_interval(Cell c, double u) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (c) {
    case Cell::H1:
    case Cell::S1: return {-inf, -u};
    case Cell::H2:
    case Cell::S2: return {-u, 0.0};
    case Cell::H3:
    case Cell::S3: return {0.0, u};
    case Cell::H4:
    case Cell::S4: return {u, inf};
    default:
      throw InvalidCell(std::string(to_string(c)) + " has no sampling X-interval");
  }
}

inline Interval cell_y_interval(Cell c, double u) {
  (void)u;
  const double inf = std::numeric_limits<double>::infinity();
  switch (c) {
    case Cell::H2:
    case Cell::S1: return {1.0, inf};
    case Cell::H1:
    case Cell::H4:
    case Cell::S2:
    case Cell::S3: return {-1.0, 1.0};
    case Cell::H3:
    case Cell::S4: return {-inf, -1.0};
    default:
      throw InvalidCell(std::string(to_string(c)) + " has no sampling Y-interval");
  }
}

inline Cell classify_cell(double x, double y, double u) {
  if (!(u >= 1.0)) {
    throw std::invalid_argument("classify_cell: u must be >= 1");
  }
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("classify_cell: non-finite point");
  }
  // Boundary classification wins ties exactly; x-lines take precedence at
  // grid crossings.
  if (x == -u) return Cell::BoundaryXNegU;
  if (x == 0.0) return Cell::BoundaryXZero;
  if (x == u) return Cell::BoundaryXPosU;
  if (y == -1.0) return Cell::BoundaryYNegOne;
  if (y == 0.0) return Cell::BoundaryYZero;
  if (y == 1.0) return Cell::BoundaryYPosOne;

  const int col = x < -u ? 0 : (x < 0.0 ? 1 : (x < u ? 2 : 3));
  const int row = y > 1.0 ? 0 : (y > -1.0 ? 1 : 2);
  static constexpr Cell kGrid[3][4] = {
      {Cell::S1, Cell::H2, Cell::WhiteUpperRightNear, Cell::WhiteUpperRightFar},
      {Cell::H1, Cell::S2, Cell::S3, Cell::H4},
      {Cell::WhiteLowerLeftFar, Cell::WhiteLowerLeftNear, Cell::H3, Cell::S4},
  };
  return kGrid[row][col];
}

// v_p(x) = |x+u|^p - |x-u|^p
inline double v_p(double x, double u, double p) {
  if (p == 0.0 || !std::isfinite(p)) {
    throw std::invalid_argument("v_p: p must be a nonzero real");
  }
  const double plus = std::abs(x + u);
  const double minus = std::abs(x - u);
  if (p < 0.0 && (plus == 0.0 || minus == 0.0)) throw PoleAtSite();
  return detail::pow_diff(plus, minus, p);
}

// w_p(y) = |y-1|^p - |y+1|^p
inline double w_p(double y, double p) {
  if (p == 0.0 || !std::isfinite(p)) {
    throw std::invalid_argument("w_p: p must be a nonzero real");
  }
  const double minus = std::abs(y - 1.0);
  const double plus = std::abs(y + 1.0);
  if (p < 0.0 && (minus == 0.0 || plus == 0.0)) throw PoleAtUnit();
  return detail::pow_diff(minus, plus, p);
}

// 1/|z_p(y)| where z_p(y) = (1/p) d/dy w_p(y). Sign-resolved closed forms:
//   |y| < 1:  1 / ((1+y)^(p-1) + (1-y)^(p-1))     (max 1/2, at y = 0)
//   |y| > 1:  1 / ((|y|-1)^(p-1) - (|y|+1)^(p-1))
inline double z_p_inv(double y, double p) {
  if (p == 0.0 || !std::isfinite(p)) {
    throw std::invalid_argument("z_p_inv: p must be a nonzero real");
  }
  const double ay = std::abs(y);
  if (ay == 1.0) throw PoleAtUnit();
  if (ay < 1.0) {
    return 1.0 / (std::pow(1.0 + y, p - 1.0) + std::pow(1.0 - y, p - 1.0));
  }
  return 1.0 / detail::pow_diff(ay - 1.0, ay + 1.0, p - 1.0);
}

// Target curves of the canonical L_0 bisector.
inline double h(double x, double u) {
  if (x == 0.0) throw AsymptoteAtZero();
  return -u / x;
}

inline double s(double x, double u) { return -x / u; }

// One primitive step of a canonical frame.
//   Translate: (x, y) -> (x + a, y + b)
//   ReflectX:  (x, y) -> (-x, y)
//   ReflectY:  (x, y) -> (x, -y)
//   SwapXY:    (x, y) -> (y, x)
//   Scale:     (x, y) -> (a x, a y),  a > 0
struct Transform {
  enum class Kind { Translate, ReflectX, ReflectY, SwapXY, Scale };

  Kind kind;
  double a = 0.0;
  double b = 0.0;

  Vec2 apply(Vec2 q) const {
    switch (kind) {
      case Kind::Translate: return {q.x + a, q.y + b};
      case Kind::ReflectX: return {-q.x, q.y};
      case Kind::ReflectY: return {q.x, -q.y};
      case Kind::SwapXY: return {q.y, q.x};
      case Kind::Scale: return {a * q.x, a * q.y};
    }
    return q;
  }

  Vec2 invert(Vec2 q) const {
    switch (kind) {
      case Kind::Translate: return {q.x - a, q.y - b};
      case Kind::ReflectX: return {-q.x, q.y};
      case Kind::ReflectY: return {q.x, -q.y};
      case Kind::SwapXY: return {q.y, q.x};
      case Kind::Scale: return {q.x / a, q.y / a};
    }
    return q;
  }
};

// Similarity mapping a general-position site pair onto a = (-u, -1),
// b = (u, 1) with u >= 1. All primitives preserve distance order for every
// member of the family (uniform scaling is degree-1 homogeneous for L_p and
// degree-2 for the geometric L_0), so bisectors map onto bisectors.
class CanonicalFrame {
 public:
  CanonicalFrame(double u, std::vector<Transform> ops)
      : u_(u), ops_(std::move(ops)) {}

  double u() const { return u_; }
  const std::vector<Transform>& ops() const { return ops_; }

  Vec2 apply(Vec2 q) const {
    for (const Transform& t : ops_) q = t.apply(q);
    return q;
  }

  Vec2 invert(Vec2 q) const {
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) q = it->invert(q);
    return q;
  }

  // True when the op sequence reverses plane orientation (odd number of
  // reflections/swaps).
  bool flips_orientation() const {
    bool flip = false;
    for (const Transform& t : ops_) {
      if (t.kind == Transform::Kind::ReflectX ||
          t.kind == Transform::Kind::ReflectY ||
          t.kind == Transform::Kind::SwapXY) {
        flip = !flip;
      }
    }
    return flip;
  }

  Vec2 site_a() const { return {-u_, -1.0}; }
  Vec2 site_b() const { return {u_, 1.0}; }

  // The two bounding-box corners that are not sites; both lie on the linear
  // part of the L_0 bisector.
  Vec2 lambda() const { return {-u_, 1.0}; }
  Vec2 rho() const { return {u_, -1.0}; }

 private:
  double u_;
  std::vector<Transform> ops_;
};

inline CanonicalFrame canonicalize(Vec2 a, Vec2 b) {
  detail::require_finite(a, "canonicalize");
  detail::require_finite(b, "canonicalize");
  if (a == b) throw IdenticalSites();
  if (a.x == b.x || a.y == b.y) throw DegeneratePair();

  const double adx = std::abs(a.x - b.x);
  const double ady = std::abs(a.y - b.y);
  const double u = std::max(adx, ady) / std::min(adx, ady);

  std::vector<Transform> ops;
  const Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  ops.push_back({Transform::Kind::Translate, -mid.x, -mid.y});
  if (adx < ady) {  // larger spread goes horizontal; ties keep axes
    ops.push_back({Transform::Kind::SwapXY, 0.0, 0.0});
  }
  // Deterministic sign choice: the site with the smaller x-coordinate lands
  // at (-u, -1).
  Vec2 lead = a.x < b.x ? a : b;
  for (const Transform& t : ops) lead = t.apply(lead);
  if (lead.x > 0.0) ops.push_back({Transform::Kind::ReflectX, 0.0, 0.0});
  if (lead.y > 0.0) ops.push_back({Transform::Kind::ReflectY, 0.0, 0.0});
  ops.push_back({Transform::Kind::Scale, 2.0 / std::min(adx, ady), 0.0});

  return CanonicalFrame(u, std::move(ops));
}

}  // namespace lpv
