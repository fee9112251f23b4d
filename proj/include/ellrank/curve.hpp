#pragma once

// Short Weierstrass curves y^2 = x^3 + a x + b over an exact field of
// characteristic not 2 or 3, with the chord-tangent group law (origin at the
// point at infinity O) and local power-series charts.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ellrank/field.hpp"

namespace ellrank {

class NotOnCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <ExactField F>
struct CurvePoint {
  using Element = typename F::Element;

  bool infinity = true;
  Element x{};
  Element y{};

  static CurvePoint origin() { return CurvePoint{}; }
  static CurvePoint affine(Element x, Element y) { return CurvePoint{false, std::move(x), std::move(y)}; }

  bool is_origin() const { return infinity; }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
  /// Canonical order: affine points by (x, y), then O.
  friend bool operator<(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity) return false;
    if (q.infinity) return true;
    if (p.x == q.x) return p.y < q.y;
    return p.x < q.x;
  }
};

template <ExactField F>
std::string format_point(const F& f, const CurvePoint<F>& q) {
  if (q.infinity) return "O";
  return "(" + f.format(q.x) + "," + f.format(q.y) + ")";
}

template <ExactField F>
class Curve {
 public:
  using Element = typename F::Element;
  using Point = CurvePoint<F>;

  Curve(F field, Element a, Element b) : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {
    if (field_.is_zero(discriminant())) throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0");
  }

  const F& field() const { return field_; }
  const Element& a() const { return a_; }
  const Element& b() const { return b_; }

  /// -16 (4 a^3 + 27 b^2)
  Element discriminant() const {
    const F& f = field_;
    Element a3 = f.mul(a_, f.mul(a_, a_));
    Element s = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.mul(b_, b_)));
    return f.mul(f.from_int(-16), s);
  }

  /// x^3 + a x + b
  Element rhs(const Element& x) const {
    const F& f = field_;
    return f.add(f.mul(x, f.add(f.mul(x, x), a_)), b_);
  }

  bool contains(const Point& q) const { return q.infinity || f_eq(field_.mul(q.y, q.y), rhs(q.x)); }

  void require(const Point& q) const {
    if (!contains(q)) throw NotOnCurve("point " + format_point(field_, q) + " is not on the curve");
  }

  Point neg(const Point& q) const {
    if (q.infinity) return q;
    return Point::affine(q.x, field_.neg(q.y));
  }

  Point add(const Point& p, const Point& q) const {
    require(p);
    require(q);
    return add_unchecked(p, q);
  }

  Point sub(const Point& p, const Point& q) const { return add(p, neg(q)); }

  /// [k]Q by double-and-add; negative k allowed.
  Point multiply(std::int64_t k, const Point& q) const {
    require(q);
    Point base = k < 0 ? neg(q) : q;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
    Point acc = Point::origin();
    while (e > 0) {
      if (e & 1U) acc = add_unchecked(acc, base);
      base = add_unchecked(base, base);
      e >>= 1U;
    }
    return acc;
  }

  /// Group law without the membership checks; callers guarantee both points lie on the curve.
  Point add_unchecked(const Point& p, const Point& q) const {
    const F& f = field_;
    if (p.infinity) return q;
    if (q.infinity) return p;
    Element lambda;
    if (p.x == q.x) {
      if (f.is_zero(f.add(p.y, q.y))) return Point::origin();
      // tangent slope (3x^2 + a) / 2y
      lambda = f.div(f.add(f.mul(f.from_int(3), f.mul(p.x, p.x)), a_), f.mul(f.from_int(2), p.y));
    } else {
      lambda = f.div(f.sub(q.y, p.y), f.sub(q.x, p.x));
    }
    Element x3 = f.sub(f.sub(f.mul(lambda, lambda), p.x), q.x);
    Element y3 = f.sub(f.mul(lambda, f.sub(p.x, x3)), p.y);
    return Point::affine(std::move(x3), std::move(y3));
  }

  bool operator==(const Curve& o) const { return field_ == o.field_ && a_ == o.a_ && b_ == o.b_; }

 private:
  static bool f_eq(const Element& u, const Element& v) { return u == v; }

  F field_;
  Element a_;
  Element b_;
};

/// Sum of m_i [Q_i] in the group. An effective divisor D of degree d lies in
/// |d O| exactly when this sum is O.
template <ExactField F>
CurvePoint<F> divisor_class_sum(const Curve<F>& c, const std::vector<std::pair<CurvePoint<F>, int>>& terms) {
  CurvePoint<F> acc = CurvePoint<F>::origin();
  for (const auto& [q, m] : terms) {
    if (m < 1) throw std::invalid_argument("divisor multiplicities must be positive");
    acc = c.add_unchecked(acc, c.multiply(m, q));
  }
  return acc;
}

/// All points of the curve over a finite field, in canonical order (O last).
template <FiniteField F>
std::vector<CurvePoint<F>> enumerate_points(const Curve<F>& c) {
  const F& f = c.field();
  if (f.order() > (1ULL << 24)) throw std::invalid_argument("enumerate_points: field too large for a scan");
  using E = typename F::Element;
  std::map<E, std::vector<E>> roots;
  for (std::uint64_t i = 0; i < f.order(); ++i) {
    E y = f.element_at(i);
    roots[f.mul(y, y)].push_back(y);
  }
  std::vector<CurvePoint<F>> pts;
  for (std::uint64_t i = 0; i < f.order(); ++i) {
    E x = f.element_at(i);
    auto it = roots.find(c.rhs(x));
    if (it == roots.end()) continue;
    for (const auto& y : it->second) pts.push_back(CurvePoint<F>::affine(x, y));
  }
  std::sort(pts.begin(), pts.end());
  pts.push_back(CurvePoint<F>::origin());
  return pts;
}

// ---------------------------------------------------------------------------
// Truncated power series

template <ExactField F>
using Series = std::vector<typename F::Element>;

template <ExactField F>
Series<F> series_mul(const F& f, const Series<F>& a, const Series<F>& b, std::size_t order) {
  Series<F> r(order, f.zero());
  for (std::size_t i = 0; i < std::min(order, a.size()); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < order; ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

/// 1/a mod t^order; a[0] must be a unit.
template <ExactField F>
Series<F> series_inv(const F& f, const Series<F>& a, std::size_t order) {
  Series<F> r(order, f.zero());
  const auto c0 = f.inv(a.at(0));
  for (std::size_t k = 0; k < order; ++k) {
    auto s = k == 0 ? f.one() : f.zero();
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) s = f.sub(s, f.mul(a[i], r[k - i]));
    r[k] = f.mul(s, c0);
  }
  return r;
}

template <ExactField F>
Series<F> series_pow(const F& f, const Series<F>& a, unsigned e, std::size_t order) {
  Series<F> r(order, f.zero());
  if (order > 0) r[0] = f.one();
  for (unsigned i = 0; i < e; ++i) r = series_mul(f, r, a, order);
  return r;
}

enum class Uniformizer {
  XShift,      // t = x - x0, used when y0 != 0
  Y,           // t = y, used when y0 = 0
  AtInfinity,  // t = x / y at O
};

/// Expansion of the coordinate functions around a point, truncated mod t^order.
/// Affine charts store x(t), y(t). At O the chart stores s(t) = 1/y, so that
/// x = t / s and y = 1 / s; s = t^3 + O(t^4).
template <ExactField F>
struct LocalChart {
  CurvePoint<F> center;
  Uniformizer uniformizer = Uniformizer::AtInfinity;
  std::size_t order = 0;
  Series<F> x;
  Series<F> y;
  Series<F> s;
};

template <ExactField F>
LocalChart<F> local_chart(const Curve<F>& c, const CurvePoint<F>& q, std::size_t order) {
  if (order < 1) throw std::invalid_argument("local_chart: order must be >= 1");
  c.require(q);
  const F& f = c.field();
  LocalChart<F> ch;
  ch.center = q;
  ch.order = order;
  if (q.infinity) {
    // s = t^3 + a t s^2 + b s^3, iterated to a fixed point mod t^order.
    ch.uniformizer = Uniformizer::AtInfinity;
    Series<F> s(order, f.zero());
    for (std::size_t it = 0; it <= order; ++it) {
      Series<F> s2 = series_mul(f, s, s, order);
      Series<F> s3 = series_mul(f, s2, s, order);
      Series<F> next(order, f.zero());
      if (order > 3) next[3] = f.one();
      for (std::size_t k = 0; k + 1 < order; ++k) next[k + 1] = f.add(next[k + 1], f.mul(c.a(), s2[k]));
      for (std::size_t k = 0; k < order; ++k) next[k] = f.add(next[k], f.mul(c.b(), s3[k]));
      if (next == s) break;
      s = std::move(next);
    }
    ch.s = std::move(s);
    return ch;
  }
  if (!f.is_zero(q.y)) {
    // t = x - x0; y = y0 + e with e = (rhs(x0 + t) - y0^2 - e^2) / (2 y0).
    ch.uniformizer = Uniformizer::XShift;
    Series<F> x(order, f.zero());
    x[0] = q.x;
    if (order > 1) x[1] = f.one();
    Series<F> rhs = series_mul(f, x, series_mul(f, x, x, order), order);
    for (std::size_t k = 0; k < order; ++k) rhs[k] = f.add(rhs[k], f.mul(c.a(), x[k]));
    rhs[0] = f.add(rhs[0], c.b());
    rhs[0] = f.sub(rhs[0], f.mul(q.y, q.y));
    const auto half_inv = f.inv(f.mul(f.from_int(2), q.y));
    Series<F> e(order, f.zero());
    for (std::size_t it = 0; it <= order; ++it) {
      Series<F> e2 = series_mul(f, e, e, order);
      Series<F> next(order, f.zero());
      for (std::size_t k = 0; k < order; ++k) next[k] = f.mul(f.sub(rhs[k], e2[k]), half_inv);
      if (next == e) break;
      e = std::move(next);
    }
    e[0] = f.add(e[0], q.y);
    ch.x = std::move(x);
    ch.y = std::move(e);
    return ch;
  }
  // y0 = 0, t = y. With d = x - x0: t^2 = f'(x0) d + 3 x0 d^2 + d^3.
  ch.uniformizer = Uniformizer::Y;
  const auto fp = f.add(f.mul(f.from_int(3), f.mul(q.x, q.x)), c.a());
  const auto fp_inv = f.inv(fp);
  const auto three_x0 = f.mul(f.from_int(3), q.x);
  Series<F> d(order, f.zero());
  for (std::size_t it = 0; it <= order; ++it) {
    Series<F> d2 = series_mul(f, d, d, order);
    Series<F> d3 = series_mul(f, d2, d, order);
    Series<F> next(order, f.zero());
    for (std::size_t k = 0; k < order; ++k) {
      auto v = f.neg(f.add(f.mul(three_x0, d2[k]), d3[k]));
      if (k == 2) v = f.add(v, f.one());
      next[k] = f.mul(v, fp_inv);
    }
    if (next == d) break;
    d = std::move(next);
  }
  d[0] = f.add(d[0], q.x);
  Series<F> y(order, f.zero());
  if (order > 1) y[1] = f.one();
  ch.x = std::move(d);
  ch.y = std::move(y);
  return ch;
}

/// The curve equation evaluated on the chart, mod t^order; identically zero for
/// a correct chart. At O the equation is multiplied through by s^3:
/// s - t^3 - a t s^2 - b s^3.
template <ExactField F>
Series<F> chart_residual(const Curve<F>& c, const LocalChart<F>& ch) {
  const F& f = c.field();
  const std::size_t n = ch.order;
  Series<F> r(n, f.zero());
  if (ch.uniformizer == Uniformizer::AtInfinity) {
    Series<F> s2 = series_mul(f, ch.s, ch.s, n);
    Series<F> s3 = series_mul(f, s2, ch.s, n);
    for (std::size_t k = 0; k < n; ++k) {
      auto v = f.sub(ch.s[k], f.mul(c.b(), s3[k]));
      if (k == 3) v = f.sub(v, f.one());
      if (k >= 1) v = f.sub(v, f.mul(c.a(), s2[k - 1]));
      r[k] = v;
    }
    return r;
  }
  Series<F> y2 = series_mul(f, ch.y, ch.y, n);
  Series<F> x3 = series_mul(f, ch.x, series_mul(f, ch.x, ch.x, n), n);
  for (std::size_t k = 0; k < n; ++k) r[k] = f.sub(f.sub(y2[k], x3[k]), f.mul(c.a(), ch.x[k]));
  r[0] = f.sub(r[0], c.b());
  return r;
}

}  // namespace ellrank
