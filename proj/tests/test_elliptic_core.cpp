#include <doctest.h>

#include <cmath>
#include <set>

#include "ellrank/curve.hpp"

using namespace ellrank;

namespace {

using P5 = CurvePoint<PrimeField>;

Curve<PrimeField> f5_curve() {
  PrimeField f(5);
  return Curve<PrimeField>(f, Fp{1}, Fp{1});
}

/// Independent point-count oracle: sum over x of (1 + Legendre symbol), plus O.
std::uint64_t character_count(const PrimeField& f, const Curve<PrimeField>& c) {
  std::uint64_t n = 1;
  const std::uint64_t half = (f.characteristic() - 1) / 2;
  for (std::uint32_t x = 0; x < f.characteristic(); ++x) {
    Fp v = c.rhs(Fp{x});
    if (f.is_zero(v))
      n += 1;
    else if (power(f, v, half) == f.one())
      n += 2;
  }
  return n;
}

}  // namespace

TEST_CASE("group law examples on y^2 = x^3 + x + 1 over F_5") {
  auto c = f5_curve();
  const auto q = P5::affine(Fp{0}, Fp{1});
  CHECK(c.add(q, P5::origin()) == q);
  CHECK(c.add(q, P5::affine(Fp{0}, Fp{4})).is_origin());
  // slope (3*0 + 1) / 2 = 3, x = 9 = 4, y = 3 (0 - 4) - 1 = 2
  CHECK(c.add(q, q) == P5::affine(Fp{4}, Fp{2}));
  CHECK_THROWS_AS(c.add(q, P5::affine(Fp{1}, Fp{1})), NotOnCurve);
}

TEST_CASE("divisor_class_sum") {
  auto c = f5_curve();
  const auto q = P5::affine(Fp{0}, Fp{1});
  CHECK(divisor_class_sum(c, {{q, 1}}) == q);
  CHECK(divisor_class_sum(c, {{q, 1}, {c.neg(q), 1}}).is_origin());
  CHECK(divisor_class_sum(c, {{q, 2}, {P5::affine(Fp{4}, Fp{3}), 1}}).is_origin());
  CHECK_THROWS(divisor_class_sum(c, {{q, 0}}));
}

TEST_CASE("singular curves are rejected") {
  PrimeField f(5);
  // 4 a^3 + 27 b^2 = 0 for a = -3, b = 2 (x^3 - 3x + 2 = (x-1)^2 (x+2))
  CHECK_THROWS(Curve<PrimeField>(f, f.from_int(-3), f.from_int(2)));
  CHECK_THROWS(Curve<PrimeField>(f, f.zero(), f.zero()));
}

TEST_CASE("enumerate_points") {
  auto c = f5_curve();
  auto pts = enumerate_points(c);
  CHECK(pts.size() == 9);
  CHECK(pts.back().is_origin());
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(pts.front() == P5::affine(Fp{0}, Fp{1}));

  Rng rng(4);
  for (std::uint32_t p : {31U, 101U, 103U}) {
    PrimeField f(p);
    for (int i = 0; i < 10; ++i) {
      Fp a = f.random(rng), b = f.random(rng);
      if (f.is_zero(f.add(f.mul(f.from_int(4), power(f, a, 3)), f.mul(f.from_int(27), f.mul(b, b))))) continue;
      Curve<PrimeField> cc(f, a, b);
      auto n = enumerate_points(cc).size();
      CHECK(n == character_count(f, cc));
      const double s = 2 * std::sqrt(static_cast<double>(p));
      CHECK(static_cast<double>(n) >= p + 1 - s);
      CHECK(static_cast<double>(n) <= p + 1 + s);
    }
  }
}

TEST_CASE("enumerate over the quadratic extension contains the rational points") {
  PrimeField f(31);
  QuadraticField q(f);
  Curve<PrimeField> c(f, Fp{2}, Fp{3});
  Curve<QuadraticField> cq(q, q.lift(Fp{2}), q.lift(Fp{3}));
  auto rational = enumerate_points(c);
  auto all = enumerate_points(cq);
  std::size_t lifted = 0;
  for (const auto& pt : all)
    if (pt.is_origin() || (q.is_rational(pt.x) && q.is_rational(pt.y))) ++lifted;
  CHECK(lifted == rational.size());
  // #E(F_{p^2}) = (p + 1)^2 - t^2 with trace t = p + 1 - #E(F_p)
  const long t = 32 - static_cast<long>(rational.size());
  CHECK(static_cast<long>(all.size()) == 32 * 32 - t * t);
}

TEST_CASE("group axioms on sampled triples") {
  PrimeField f(101);
  Curve<PrimeField> c(f, Fp{2}, Fp{3});
  auto pts = enumerate_points(c);
  Rng rng(9);
  auto pick = [&] { return pts[uniform_below(rng, pts.size())]; };
  for (int i = 0; i < 1000; ++i) {
    auto p = pick(), q = pick(), r = pick();
    CHECK(c.add(c.add(p, q), r) == c.add(p, c.add(q, r)));
    CHECK(c.add(p, q) == c.add(q, p));
    CHECK(c.add(p, CurvePoint<PrimeField>::origin()) == p);
    CHECK(c.add(p, c.neg(p)).is_origin());
  }
  // group order annihilates every point
  for (const auto& p : pts) CHECK(c.multiply(static_cast<std::int64_t>(pts.size()), p).is_origin());
}

TEST_CASE("2-division has at most four rational solutions") {
  PrimeField f(101);
  Curve<PrimeField> c(f, Fp{2}, Fp{3});
  auto pts = enumerate_points(c);
  for (const auto& target : pts) {
    int n = 0;
    for (const auto& cpt : pts)
      if (c.multiply(2, cpt) == target) ++n;
    CHECK(n <= 4);
  }
}

TEST_CASE("local charts satisfy the curve equation") {
  PrimeField f(31);
  Curve<PrimeField> c(f, Fp{2}, Fp{3});
  for (const auto& q : enumerate_points(c)) {
    for (std::size_t n : {1U, 4U, 11U}) {
      auto ch = local_chart(c, q, n);
      for (const auto& e : chart_residual(c, ch)) CHECK(f.is_zero(e));
      if (!q.is_origin() && !f.is_zero(q.y)) {
        CHECK(ch.uniformizer == Uniformizer::XShift);
        CHECK(ch.x[0] == q.x);
        if (n > 1) CHECK(ch.x[1] == f.one());
        for (std::size_t k = 2; k < n; ++k) CHECK(f.is_zero(ch.x[k]));
      }
    }
  }
}

TEST_CASE("chart at O") {
  // Over Q with a = 2, b = 3, undetermined coefficients give
  // s = t^3 + 2 t^7 + 3 t^9 + 8 t^11 + 30 t^13 + O(t^14).
  RationalField q;
  Curve<RationalField> c(q, 2, 3);
  auto ch = local_chart(c, CurvePoint<RationalField>::origin(), 14);
  CHECK(ch.uniformizer == Uniformizer::AtInfinity);
  std::vector<mpq_class> expected(14, 0);
  expected[3] = 1;
  expected[7] = 2;
  expected[9] = 3;
  expected[11] = 8;
  expected[13] = 30;
  CHECK(ch.s == expected);
  for (const auto& e : chart_residual(c, ch)) CHECK(sgn(e) == 0);
  // t^2 x = t^3 / s = 1 + O(t^2) and t^3 y = t^3 / s = 1 + O(t^2)
  Series<RationalField> u(ch.s.begin() + 3, ch.s.end());
  auto inv = series_inv(q, u, 4);
  CHECK(inv[0] == 1);
  CHECK(inv[1] == 0);
}

TEST_CASE("chart at a 2-torsion point over Q") {
  // (-1, 0) on y^2 = x^3 + 2x + 3; t = y and x = -1 + t^2/5 + 3 t^4/125 + 13 t^6/3125 + ...
  RationalField q;
  Curve<RationalField> c(q, 2, 3);
  auto ch = local_chart(c, CurvePoint<RationalField>::affine(-1, 0), 8);
  CHECK(ch.uniformizer == Uniformizer::Y);
  std::vector<mpq_class> expected{-1, 0, mpq_class(1, 5), 0, mpq_class(3, 125), 0, mpq_class(13, 3125), 0};
  CHECK(ch.x == expected);
  for (const auto& e : chart_residual(c, ch)) CHECK(sgn(e) == 0);
}
