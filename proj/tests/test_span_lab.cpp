#include <doctest.h>

#include "ellrank/span.hpp"
#include "test_support.hpp"

using namespace ellrank;

namespace {

using D = Divisor<PrimeField>;

/// Sum of the jet rows of z with the given coefficients.
PPoint combine(const test::Lab& lab, const D& z, const std::vector<Fp>& coeffs) {
  auto m = lab.x.jet_matrix(z);
  Vector<PrimeField> v(m.cols(), lab.f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = lab.f.add(v[j], lab.f.mul(coeffs[r], m(r, j)));
  return PPoint(lab.f, std::move(v));
}

/// Value of sum c_i f_i at an affine point, evaluated directly from the monomials.
Fp evaluate_section(const test::Lab& lab, const Vector<PrimeField>& c, const Point& q) {
  Fp s = lab.f.zero();
  const auto& basis = lab.x.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Fp term = power(lab.f, q.x, static_cast<std::uint64_t>(basis[i].x_exp));
    if (basis[i].y_exp) term = lab.f.mul(term, q.y);
    s = lab.f.add(s, lab.f.mul(c[i], term));
  }
  return s;
}

}  // namespace

TEST_CASE("span_dim") {
  test::Lab lab(101, 2, 3, 8);
  Rng rng(31);
  CHECK(span_dim(lab.x, D{}) == -1);
  CHECK(span_dim(lab.x, D::single(lab.pts[3])) == 0);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 8));
    CHECK(span_dim(lab.x, lab.random_divisor(rng, d)) == d - 1);
  }
  for (int i = 0; i < 50; ++i) CHECK(span_dim(lab.x, lab.random_divisor_in_O1(rng)) == 7);
}

TEST_CASE("point_in_span") {
  test::Lab lab(31, 2, 3, 6);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    auto z = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 5)));
    for (const auto& q : z.support()) CHECK(point_in_span(lab.x, lab.x.embed_point(q), z));
    std::vector<Fp> c;
    for (int r = 0; r < z.degree(); ++r) c.push_back(lab.f.random(rng));
    c[0] = lab.f.one();
    CHECK(point_in_span(lab.x, combine(lab, z, c), z));

    // Rank-comparison oracle: P ∈ <Z> iff appending P keeps the rank.
    Vector<PrimeField> v(lab.x.dim());
    for (auto& e : v) e = lab.f.random(rng);
    v[0] = lab.f.one();
    PPoint p(lab.f, v);
    auto m = lab.x.jet_matrix(z);
    const auto before = rank(m);
    m.append_row(p.coords());
    CHECK(point_in_span(lab.x, p, z) == (rank(m) == before));
  }
}

TEST_CASE("strictly_spanned_by") {
  test::Lab lab(31, 2, 3, 8);
  const auto& q = lab.pts[4];
  const auto& r = lab.pts[9];
  CHECK_FALSE(strictly_spanned_by(lab.x, lab.x.embed_point(q), D::single(q, 2)));
  CHECK(strictly_spanned_by(lab.x, lab.x.embed_point(q), D::single(q)));
  CHECK(strictly_spanned_by(lab.x, combine(lab, D::single(q, 2), {lab.f.one(), lab.f.one()}), D::single(q, 2)));
  CHECK_FALSE(strictly_spanned_by(lab.x, combine(lab, D::single(q, 3), {lab.f.one(), Fp{5}, lab.f.zero()}),
                                  D::single(q, 3)));
  auto line = D::reduced({q, r});
  for (std::uint32_t a = 1; a < 31; ++a)
    CHECK(strictly_spanned_by(lab.x, combine(lab, line, {lab.f.one(), Fp{a}}), line));
  CHECK_FALSE(strictly_spanned_by(lab.x, combine(lab, line, {lab.f.one(), lab.f.zero()}), line));
  CHECK_FALSE(strictly_spanned_by(lab.x, lab.x.embed_point(q), D{}));
}

TEST_CASE("span_intersection examples") {
  test::Lab lab(101, 2, 3, 8);
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    auto a = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 8)));
    auto self = span_intersection(lab.x, a, a);
    CHECK(self.dim == span_dim(lab.x, a));
    CHECK(self.witness.has_value() == (a.degree() == 1));
  }
  for (int i = 0; i < 100; ++i) {
    const int da = 1 + static_cast<int>(uniform_below(rng, 7));
    auto a = random_divisor(lab.model, rng, da);
    auto b = random_divisor(lab.model, rng, 1 + static_cast<int>(uniform_below(rng, 8 - da)), a.support());
    auto res = span_intersection(lab.x, a, b);
    CHECK(res.dim == -1);
    CHECK_FALSE(res.witness);
  }
  for (int i = 0; i < 100; ++i) {
    auto a = random_divisor(lab.model, rng, 1 + static_cast<int>(uniform_below(rng, 8)));
    auto partial = random_divisor(lab.model, rng, 8 - a.degree(), a.support());
    auto b = complete_to_class(lab.model, partial, lab.model.curve().neg(lab.x.class_sum(a)));
    if (!a.disjoint_from(b)) continue;
    REQUIRE(lab.x.in_O1(a.plus(b)));
    auto res = span_intersection(lab.x, a, b);
    CHECK(res.dim == 0);
    REQUIRE(res.witness);
    CHECK(point_in_span(lab.x, *res.witness, a));
    CHECK(point_in_span(lab.x, *res.witness, b));
  }
}

TEST_CASE("Grassmann consistency on random pairs") {
  test::Lab lab(31, 2, 3, 8);
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    auto a = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 9)));
    auto b = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 9)));
    auto res = span_intersection(lab.x, a, b);
    const int joint = static_cast<int>(rank(lab.x.jet_matrix(a).stacked(lab.x.jet_matrix(b)))) - 1;
    CHECK(res.dim == span_dim(lab.x, a) + span_dim(lab.x, b) - joint);
  }
}

TEST_CASE("intersection of spans is the span of the intersection") {
  test::Lab lab(31, 2, 3, 8);
  Rng rng(40);
  int tested = 0;
  while (tested < 300) {
    auto a = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 8)));
    auto b = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 9 - a.degree())));
    if (uniform_below(rng, 2) == 0 && a.degree() + b.degree() <= 8) b = b.plus(D::single(a.terms().front().first));
    const int total = a.degree() + b.degree();
    if (total > 9) continue;
    auto lat = divisor_lattice(a, b);
    if (total == 9 && lab.x.in_O1(lat.sum) && lat.intersection.empty()) continue;
    ++tested;
    auto inter = row_space_intersection(lab.x.jet_matrix(a), lab.x.jet_matrix(b));
    std::vector<Vector<PrimeField>> expected;
    if (!lat.intersection.empty()) expected = RowEchelon<PrimeField>(lab.x.jet_matrix(lat.intersection)).basis();
    CHECK(inter == expected);
  }
}

TEST_CASE("two schemes strictly spanning one point are jointly dependent") {
  // Disjoint A, B with A + B ∈ |O(1)| meet in one point P; A ∪ B is dependent.
  for (int n : {3, 5, 8}) {
    test::Lab lab(31, 2, 3, n);
    Rng rng(static_cast<std::uint64_t>(n));
    int tested = 0;
    for (int i = 0; i < 400 && tested < 60; ++i) {
      const int da = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      auto a = lab.random_divisor(rng, da);
      auto partial = random_divisor(lab.model, rng, n - da, a.support());
      auto b = complete_to_class(lab.model, partial, lab.model.curve().neg(lab.x.class_sum(a)));
      if (!a.disjoint_from(b)) continue;
      auto res = span_intersection(lab.x, a, b);
      REQUIRE(res.witness);
      if (!strictly_spanned_by(lab.x, *res.witness, a) || !strictly_spanned_by(lab.x, *res.witness, b)) continue;
      ++tested;
      auto u = divisor_lattice(a, b).union_;
      CHECK(static_cast<int>(rank(lab.x.jet_matrix(u))) < u.degree());
    }
    CHECK(tested > 0);
  }
}

TEST_CASE("hyperplanes_through") {
  test::Lab lab(101, 2, 3, 8);
  Rng rng(5);
  CHECK(hyperplanes_through(lab.x, D{}).size() == 9);
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 8));
    auto z = lab.random_divisor(rng, d);
    CHECK(hyperplanes_through(lab.x, z).size() == static_cast<std::size_t>(9 - d));
  }
  for (int i = 0; i < 20; ++i) CHECK(hyperplanes_through(lab.x, lab.random_divisor_in_O1(rng)).size() == 1);
}

TEST_CASE("section_zero_divisor") {
  test::Lab lab(31, 2, 3, 8);
  Vector<PrimeField> constant(9, lab.f.zero());
  constant[0] = lab.f.one();
  auto sd = section_zero_divisor(lab.x, constant);
  CHECK(sd.divisor == D::single(Point::origin(), 9));
  CHECK(sd.complete);
  CHECK_THROWS(section_zero_divisor(lab.x, Vector<PrimeField>(9, lab.f.zero())));
  CHECK_THROWS(section_zero_divisor(lab.x, Vector<PrimeField>(3, lab.f.one())));

  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    auto z = lab.random_divisor_in_O1(rng);
    auto h = hyperplanes_through(lab.x, z);
    REQUIRE(h.size() == 1);
    auto back = section_zero_divisor(lab.x, h.front());
    CHECK(back.divisor == z);
    CHECK(back.complete);
  }
}

TEST_CASE("section zeros match direct evaluation over F_5") {
  test::Lab lab(5, 1, 1, 4);
  Rng rng(19);
  int incomplete = 0;
  for (int i = 0; i < 200; ++i) {
    Vector<PrimeField> c(5);
    for (auto& e : c) e = lab.f.random(rng);
    if (std::all_of(c.begin(), c.end(), [](Fp e) { return e.v == 0; })) continue;
    auto sd = section_zero_divisor(lab.x, c);
    CHECK(sd.divisor.degree() <= 5);
    incomplete += !sd.complete;
    for (const auto& q : lab.pts) {
      // O is a zero iff the top (pole order n+1) coefficient vanishes.
      const bool zero = q.is_origin() ? lab.f.is_zero(c.back()) : lab.f.is_zero(evaluate_section(lab, c, q));
      CHECK(sd.divisor.contains_point(q) == zero);
    }
  }
  CHECK(incomplete > 0);
}
