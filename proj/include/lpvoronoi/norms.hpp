#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>

#include "lpvoronoi/errors.hpp"

namespace lpv {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(Vec2 a, Vec2 b) {
    return a.x == b.x && a.y == b.y;
  }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) {
    return {a.x - b.x, a.y - b.y};
  }
};

inline bool is_finite(Vec2 v) {
  return std::isfinite(v.x) && std::isfinite(v.y);
}

namespace detail {

inline void require_finite(Vec2 v, const char* who) {
  if (!is_finite(v)) {
    throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
  }
}

}  // namespace detail

// Selects a member of the distance family:
//   Finite(p), p != 0:  (|x|^p + |y|^p)^(1/p), continued by 0 on the axes
//                       when p < 0
//   GeometricZero:      |x * y|
//   PosInfinity:        max(|x|, |y|)
//   NegInfinity:        min(|x|, |y|)
class Exponent {
 public:
  enum class Kind { Finite, GeometricZero, PosInfinity, NegInfinity };

  static Exponent finite(double p) {
    if (p == 0.0 || !std::isfinite(p)) {
      throw std::invalid_argument("Exponent::finite: p must be a nonzero real");
    }
    return Exponent(Kind::Finite, p);
  }
  static Exponent geometric_zero() { return Exponent(Kind::GeometricZero, 0.0); }
  static Exponent pos_infinity() {
    return Exponent(Kind::PosInfinity, std::numeric_limits<double>::infinity());
  }
  static Exponent neg_infinity() {
    return Exponent(Kind::NegInfinity, -std::numeric_limits<double>::infinity());
  }

  Kind kind() const { return kind_; }

  // Valid for Kind::Finite only.
  double p() const { return p_; }

 private:
  Exponent(Kind kind, double p) : kind_(kind), p_(p) {}

  Kind kind_;
  double p_;
};

enum class Ordering { CloserToA, CloserToB, Equidistant };

namespace detail {

// a^p - b^p for a > b >= 0 (b > 0 required when p < 0; callers own the pole
// checks). The expm1 form keeps the difference accurate when p(ln a - ln b)
// is small, which is where the naive difference loses most digits.
inline double pow_diff_ordered(double a, double b, double p) {
  if (b == 0.0) return std::pow(a, p);
  const double la = std::log(a);
  const double lb = std::log(b);
  return std::exp(p * lb) * std::expm1(p * (la - lb));
}

// Antisymmetric by construction: pow_diff(a, b, p) == -pow_diff(b, a, p)
// holds bitwise, so distance comparisons are exactly antisymmetric in the
// two sites.
inline double pow_diff(double a, double b, double p) {
  if (a == b) return 0.0;
  return a > b ? pow_diff_ordered(a, b, p) : -pow_diff_ordered(b, a, p);
}

// |prod of components|, switching to log-space accumulation when a component
// leaves [1e-150, 1e150] or the running product overflows.
inline double abs_product(std::span<const double> values) {
  bool logspace = false;
  for (double c : values) {
    const double a = std::abs(c);
    if (a == 0.0) return 0.0;
    if (a > 1e150 || a < 1e-150) logspace = true;
  }
  if (!logspace) {
    double prod = 1.0;
    for (double c : values) prod *= std::abs(c);
    if (std::isfinite(prod) && prod != 0.0) return prod;
  }
  double logsum = 0.0;
  for (double c : values) logsum += std::log(std::abs(c));
  return std::exp(logsum);
}

}  // namespace detail

inline double lp_norm(Vec2 v, const Exponent& e) {
  detail::require_finite(v, "lp_norm");
  const double ax = std::abs(v.x);
  const double ay = std::abs(v.y);
  switch (e.kind()) {
    case Exponent::Kind::PosInfinity:
      return std::max(ax, ay);
    case Exponent::Kind::NegInfinity:
      return std::min(ax, ay);
    case Exponent::Kind::GeometricZero: {
      const double c[2] = {ax, ay};
      return detail::abs_product(c);
    }
    case Exponent::Kind::Finite:
      break;
  }
  const double p = e.p();
  if (p > 0.0) {
    const double m = std::max(ax, ay);
    if (m == 0.0) return 0.0;
    const double t = std::min(ax, ay) / m;
    const double factor = std::pow(1.0 + std::pow(t, p), 1.0 / p);
    if (std::isinf(factor)) {  // 2^(1/p) overflowed; the product may not
      return std::exp(std::log(m) + std::log1p(std::pow(t, p)) / p);
    }
    return m * factor;
  }
  // p < 0: continued by zero on the axes.
  if (ax == 0.0 || ay == 0.0) return 0.0;
  const double mn = std::min(ax, ay);
  const double mx = std::max(ax, ay);
  const double s = std::pow(mn / mx, -p);  // (mx/mn)^p, in (0, 1]
  const double factor = std::pow(1.0 + s, 1.0 / p);
  if (factor == 0.0) {  // 2^(1/p) underflowed; the product may not
    return std::exp(std::log(mn) + std::log1p(s) / p);
  }
  return mn * factor;
}

inline double l0_norm_nd(std::span<const double> v) {
  if (v.empty()) {
    throw std::invalid_argument("l0_norm_nd: empty vector");
  }
  for (double c : v) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("l0_norm_nd: non-finite component");
    }
  }
  return detail::abs_product(v);
}

// Orders the distances of q to a and b. For the finite family the comparison
// runs on the inner sums |dx|^p + |dy|^p, never on the outer 1/p power; the
// order is reversed for p < 0 since t -> t^(1/p) is then decreasing. A zero
// coordinate difference forces distance 0 for p < 0 and short-circuits the
// sum comparison.
inline Ordering compare_distance(Vec2 q, Vec2 a, Vec2 b, const Exponent& e) {
  detail::require_finite(q, "compare_distance");
  detail::require_finite(a, "compare_distance");
  detail::require_finite(b, "compare_distance");
  const double dax = std::abs(q.x - a.x);
  const double day = std::abs(q.y - a.y);
  const double dbx = std::abs(q.x - b.x);
  const double dby = std::abs(q.y - b.y);

  const auto order = [](double da, double db) {
    if (da == db) return Ordering::Equidistant;
    return da < db ? Ordering::CloserToA : Ordering::CloserToB;
  };

  switch (e.kind()) {
    case Exponent::Kind::PosInfinity:
      return order(std::max(dax, day), std::max(dbx, dby));
    case Exponent::Kind::NegInfinity:
      return order(std::min(dax, day), std::min(dbx, dby));
    case Exponent::Kind::GeometricZero: {
      const double ca[2] = {dax, day};
      const double cb[2] = {dbx, dby};
      const double pa = detail::abs_product(ca);
      const double pb = detail::abs_product(cb);
      if (std::isinf(pa) && std::isinf(pb)) {
        return order(std::log(dax) + std::log(day),
                     std::log(dbx) + std::log(dby));
      }
      return order(pa, pb);
    }
    case Exponent::Kind::Finite:
      break;
  }

  const double p = e.p();
  if (p < 0.0) {
    const bool zero_a = (dax == 0.0 || day == 0.0);
    const bool zero_b = (dbx == 0.0 || dby == 0.0);
    if (zero_a && zero_b) return Ordering::Equidistant;
    if (zero_a) return Ordering::CloserToA;
    if (zero_b) return Ordering::CloserToB;
  }

  // Scale invariance of the sign: dividing all four differences by a common
  // c > 0 scales both sums by c^p.
  const double c = std::max(std::max(dax, day), std::max(dbx, dby));
  if (c == 0.0) return Ordering::Equidistant;
  const double diff = detail::pow_diff(dax / c, dbx / c, p) +
                      detail::pow_diff(day / c, dby / c, p);
  if (std::isnan(diff)) {
    // Both stable terms overflowed with opposite signs; magnitudes this
    // extreme are decided safely by the scaled norm itself.
    return order(lp_norm(q - a, e), lp_norm(q - b, e));
  }
  if (diff == 0.0) return Ordering::Equidistant;
  if (p > 0.0) return diff < 0.0 ? Ordering::CloserToA : Ordering::CloserToB;
  return diff > 0.0 ? Ordering::CloserToA : Ordering::CloserToB;
}

}  // namespace lpv
