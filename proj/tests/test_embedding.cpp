#include <doctest.h>

#include "ellrank/embedding.hpp"
#include "test_support.hpp"

using namespace ellrank;

TEST_CASE("basis_functions") {
  auto names = [](int n) {
    std::vector<std::string> s;
    for (const auto& m : basis_functions(n)) s.push_back(format_monomial(m));
    return s;
  };
  CHECK(names(4) == std::vector<std::string>{"1", "x", "y", "x^2", "xy"});
  CHECK(names(3) == std::vector<std::string>{"1", "x", "y", "x^2"});
  CHECK_THROWS(basis_functions(2));
  for (int n = 3; n <= 12; ++n) {
    auto b = basis_functions(n);
    CHECK(b.size() == static_cast<std::size_t>(n + 1));
    CHECK(b.front().pole_order() == 0);
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i].pole_order() == static_cast<int>(i) + 1);
  }
}

TEST_CASE("embed_point on the F_5 curve, n = 4") {
  PrimeField f(5);
  NormalEmbedding<PrimeField> x(Curve<PrimeField>(f, Fp{1}, Fp{1}), 4);
  auto fmt = [&](const CurvePoint<PrimeField>& q) { return format_proj_point(f, x.embed_point(q)); };
  CHECK(fmt(CurvePoint<PrimeField>::affine(Fp{0}, Fp{1})) == "[1:0:1:0:0]");
  CHECK(fmt(CurvePoint<PrimeField>::origin()) == "[0:0:0:0:1]");
  CHECK(fmt(CurvePoint<PrimeField>::affine(Fp{2}, Fp{1})) == "[1:2:1:4:2]");
}

TEST_CASE("jet matrices over Q match symbolic expansions") {
  // Oracle: series of 1, x, y, x^2, xy in t = x - 3 around (3,6) on y^2 = x^3 + 2x + 3.
  RationalField q;
  NormalEmbedding<RationalField> x(Curve<RationalField>(q, 2, 3), 4);
  auto m = x.jet_matrix(Divisor<RationalField>::single(CurvePoint<RationalField>::affine(3, 6), 3));
  std::vector<std::vector<mpq_class>> expected{
      {1, 3, 6, 9, 18},
      {0, 1, mpq_class(29, 12), 6, mpq_class(53, 4)},
      {0, 0, mpq_class(455, 1728), 1, mpq_class(1847, 576)},
  };
  CHECK(m.row_vectors() == expected);

  auto mo = x.jet_matrix(Divisor<RationalField>::single(CurvePoint<RationalField>::origin(), 3));
  std::vector<std::vector<mpq_class>> expected_o{{0, 0, 0, 0, 1}, {0, 0, 0, 1, 0}, {0, 0, 1, 0, 0}};
  CHECK(mo.row_vectors() == expected_o);
}

TEST_CASE("divisor grammar") {
  PrimeField f(5);
  Curve<PrimeField> c(f, Fp{1}, Fp{1});
  auto d = parse_divisor(c, "2*(0,1)+(4,2)");
  CHECK(d.degree() == 3);
  CHECK(format_divisor(f, d) == "2*(0,1)+(4,2)");
  CHECK(format_divisor(f, parse_divisor(c, "O")) == "O");
  CHECK(format_divisor(f, parse_divisor(c, " O + (4,2) + (0,1) + (0,1)")) == "2*(0,1)+(4,2)+O");
  CHECK_THROWS_AS(parse_divisor(c, "(1,1)"), NotOnCurve);
  CHECK_THROWS_AS(parse_divisor(c, "2(0,1)"), DivisorSyntaxError);
  CHECK_THROWS_AS(parse_divisor(c, "(0,1)+"), DivisorSyntaxError);
  CHECK_THROWS_AS(parse_divisor(c, "(0,1)*2"), DivisorSyntaxError);
  try {
    parse_divisor(c, "(0,1)+Q");
    FAIL("expected syntax error");
  } catch (const DivisorSyntaxError& e) {
    CHECK(e.position() == 6);
  }

  // Round trip through canonical printing on random divisors.
  test::Lab lab(101, 2, 3, 8);
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    auto z = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 9)));
    CHECK(parse_divisor(lab.x.curve(), format_divisor(lab.f, z)) == z);
  }
}

TEST_CASE("divisor_lattice") {
  test::Lab lab(31, 2, 3, 8);
  const auto& q = lab.pts[0];
  const auto& r = lab.pts[1];
  const auto& s = lab.pts[2];
  using D = Divisor<PrimeField>;
  auto l = divisor_lattice(D::single(q, 2), D({{q, 1}, {r, 1}}));
  CHECK(l.union_ == D({{q, 2}, {r, 1}}));
  CHECK(l.intersection == D::single(q));
  CHECK(l.sum == D({{q, 3}, {r, 1}}));

  auto disjoint = divisor_lattice(D::single(q), D({{r, 2}, {s, 1}}));
  CHECK(disjoint.union_ == disjoint.sum);
  CHECK(disjoint.intersection.empty());

  auto sub = divisor_lattice(D::single(q), D({{q, 2}, {r, 1}}));
  CHECK(sub.union_ == D({{q, 2}, {r, 1}}));
  CHECK(sub.intersection == D::single(q));

  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    auto a = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 6)));
    auto b = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 6)));
    auto lat = divisor_lattice(a, b);
    CHECK(lat.union_.degree() + lat.intersection.degree() == a.degree() + b.degree());
    CHECK(lat.intersection.is_subdivisor_of(a));
    CHECK(b.is_subdivisor_of(lat.union_));
  }
}

TEST_CASE("independence law: rank of jet matrices") {
  test::Lab lab(101, 2, 3, 8);
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    auto z = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 8)));
    CHECK(rank(lab.x.jet_matrix(z)) == static_cast<std::size_t>(z.degree()));
  }
  for (int i = 0; i < 100; ++i) {
    auto in = lab.random_divisor_in_O1(rng);
    CHECK(lab.x.in_O1(in));
    CHECK(rank(lab.x.jet_matrix(in)) == 8);
    auto out = lab.random_divisor(rng, 9);
    CHECK(rank(lab.x.jet_matrix(out)) == (lab.x.in_O1(out) ? 8U : 9U));
  }
}

TEST_CASE("in_O1") {
  test::Lab lab(31, 2, 3, 4);
  Rng rng(21);
  CHECK_FALSE(lab.x.in_O1(lab.random_divisor(rng, 4)));
  CHECK(lab.x.in_O1(Divisor<PrimeField>::single(CurvePoint<PrimeField>::origin(), 5)));
  int negatives = 0;
  for (int i = 0; i < 200; ++i) {
    auto z = lab.random_divisor(rng, 5);
    bool oracle = lab.x.class_sum(z).is_origin();
    CHECK(lab.x.in_O1(z) == oracle);
    negatives += !oracle;
  }
  CHECK(negatives > 0);
}

TEST_CASE("monotonicity of spans and the embedded point") {
  test::Lab lab(31, 2, 3, 6);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto z = lab.random_divisor(rng, 1 + static_cast<int>(uniform_below(rng, 6)));
    auto big = RowEchelon<PrimeField>(lab.x.jet_matrix(z));
    for (const auto& sub : z.maximal_proper_subdivisors()) {
      auto m = lab.x.jet_matrix(sub);
      for (std::size_t r = 0; r < m.rows(); ++r) CHECK(big.contains(m.row(r)));
    }
    const auto& q = z.terms().front().first;
    auto one = lab.x.jet_matrix(Divisor<PrimeField>::single(q));
    CHECK(ProjPoint<PrimeField>(lab.f, one.row_vectors().front()) == lab.x.embed_point(q));
  }
}

TEST_CASE("jet rows agree with the rational computation for reduced primes") {
  // The jets over Q at (3,6), reduced mod 31, equal the jets computed over F_31.
  RationalField q;
  NormalEmbedding<RationalField> xq(Curve<RationalField>(q, 2, 3), 6);
  test::Lab lab(31, 2, 3, 6);
  auto mq = xq.jet_matrix(Divisor<RationalField>::single(CurvePoint<RationalField>::affine(3, 6), 4));
  auto mp = lab.x.jet_matrix(Divisor<PrimeField>::single(CurvePoint<PrimeField>::affine(Fp{3}, Fp{6}), 4));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 7; ++c) {
      const mpq_class& e = mq(r, c);
      Fp num = lab.f.from_int(e.get_num().get_si());
      Fp den = lab.f.from_int(e.get_den().get_si());
      CHECK(lab.f.div(num, den) == mp(r, c));
    }
}
