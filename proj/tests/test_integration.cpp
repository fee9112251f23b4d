#include <doctest.h>

#include "test_support.hpp"

using namespace ellrank;

namespace {
using D = Divisor<PrimeField>;
}

TEST_CASE("parsed divisor through span, hyperplane and section") {
  test::Lab lab(31, 2, 3, 4);
  auto w = parse_divisor(lab.x.curve(), "2*(3,6)+O");
  CHECK(span_dim(lab.x, w) == 2);
  auto z = complete_to_class(lab.model, w.plus(D::single(lab.pts[0])), Point::origin());
  if (z.degree() == 5 && lab.x.in_O1(z)) {
    auto h = hyperplanes_through(lab.x, z);
    REQUIRE(h.size() == 1);
    CHECK(section_zero_divisor(lab.x, h.front()).divisor == z);
  }
  auto text = format_divisor(lab.f, z);
  CHECK(parse_divisor(lab.x.curve(), text) == z);
}

TEST_CASE("valid certificates leave nothing of smaller degree") {
  test::Lab lab(31, 2, 3, 8);
  Rng rng(100);
  for (int i = 0; i < 12; ++i) {
    const int shape = i % 3;
    D w = shape == 0   ? D::single(random_point(lab.model, rng), 2).plus(random_reduced(lab.model, rng, 1))
          : shape == 1 ? random_reduced(lab.model, rng, 3)
                       : D::single(random_point(lab.model, rng), 3);
    if (w.degree() != 3) continue;
    auto p = generic_point_in_span(lab.model, w, rng, 50);
    auto cert = border_rank_cert(lab.model, p, w);
    REQUIRE(cert.valid());
    for (int t = 1; t < 3; ++t) CHECK(evincing_schemes(lab.model, p, t, 1000000).schemes.empty());
    auto same = evincing_schemes(lab.model, p, 3, 1000000);
    REQUIRE(same.schemes.size() == 1);
    CHECK(same.schemes.front() == w);
  }
}

TEST_CASE("super-rank point has exactly its two schemes at n = 3") {
  test::Lab lab(31, 2, 3, 3);
  auto lift = quadratic_lift(lab.model);
  Rng rng(7);
  for (int i = 0; i < 5; ++i) {
    auto sp = construct_superrank_point(lab.model, 1, rng);
    REQUIRE(sp.all_pass());
    auto ev = evincing_schemes(lift, sp.q, 2, 10000000);
    REQUIRE(ev.schemes.size() == 2);
    REQUIRE(ev.pairs.size() == 1);
    CHECK(ev.pairs.front().disjoint);
    CHECK(ev.pairs.front().class_sum_origin);
    CHECK_FALSE(ev.double_in_O1.front());
    CHECK_FALSE(ev.double_in_O1.back());
    CHECK_FALSE(rank_exhaustive_reduced(lab.model, sp.q, 2, 1000000).witness);
  }
}

TEST_CASE("upper witnesses respect the exhausted lower bound") {
  test::Lab lab(31, 2, 3, 6);
  Rng rng(55);
  for (int i = 0; i < 4; ++i) {
    auto w = D::single(random_point(lab.model, rng), 2);
    auto p = generic_point_in_span(lab.model, w, rng, 50);
    auto ex = rank_exhaustive_reduced(lab.model, p, 4, 10000000);
    CHECK(ex.sizes_exhausted == std::vector<int>{1, 2, 3, 4});
    auto up = rank_upper_search(lab.model, p, w, 5, {}, 5000, rng());
    REQUIRE(up.witness);
    CHECK(up.witness->degree() == 5);
    CHECK(up.witness->degree() > ex.sizes_exhausted.back());
  }
}
