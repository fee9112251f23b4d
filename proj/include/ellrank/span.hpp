#pragma once

// Span-level geometry of divisors on the embedded curve: dimensions,
// membership, strict spanning, intersections of spans, hyperplanes through a
// divisor and zero divisors of hyperplane sections.

#include <optional>
#include <stdexcept>
#include <vector>

#include "ellrank/embedding.hpp"

namespace ellrank {

/// Projective dimension of <Z>; -1 for the empty span.
template <ExactField F>
int span_dim(const NormalEmbedding<F>& x, const Divisor<F>& z) {
  return static_cast<int>(rank(x.jet_matrix(z))) - 1;
}

template <ExactField F>
bool point_in_span(const NormalEmbedding<F>& x, const ProjPoint<F>& p, const Divisor<F>& z) {
  return in_row_space(x.jet_matrix(z), std::span<const typename F::Element>(p.coords()));
}

/// P ∈ <Z> and P ∉ <Z'> for every Z' ⊊ Z. Spans are monotone, so only the
/// maximal proper subdivisors need checking.
template <ExactField F>
bool strictly_spanned_by(const NormalEmbedding<F>& x, const ProjPoint<F>& p, const Divisor<F>& z) {
  if (z.empty() || !point_in_span(x, p, z)) return false;
  for (const auto& sub : z.maximal_proper_subdivisors())
    if (!sub.empty() && point_in_span(x, p, sub)) return false;
  return true;
}

template <ExactField F>
struct SpanIntersectionResult {
  int dim = -1;  // -1: empty intersection
  std::optional<ProjPoint<F>> witness;  // present iff dim == 0
  std::vector<Vector<F>> basis;
};

template <ExactField F>
SpanIntersectionResult<F> span_intersection(const NormalEmbedding<F>& x, const Divisor<F>& a,
                                            const Divisor<F>& b) {
  SpanIntersectionResult<F> out;
  out.basis = row_space_intersection(x.jet_matrix(a), x.jet_matrix(b));
  out.dim = static_cast<int>(out.basis.size()) - 1;
  if (out.dim == 0) out.witness = ProjPoint<F>(x.field(), out.basis.front());
  return out;
}

/// Coefficient vectors c of the sections sum c_i f_i vanishing on Z.
template <ExactField F>
std::vector<Vector<F>> hyperplanes_through(const NormalEmbedding<F>& x, const Divisor<F>& z) {
  if (z.empty()) {
    std::vector<Vector<F>> all;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      Vector<F> e(x.dim(), x.field().zero());
      e[i] = x.field().one();
      all.push_back(std::move(e));
    }
    return all;
  }
  return rank_profile(x.jet_matrix(z)).kernel_basis;
}

template <ExactField F>
struct SectionDivisor {
  Divisor<F> divisor;
  bool complete = false;  // all n+1 zeros are rational
};

/// Order of vanishing of sum c_i f_i at q (with the pole at O cleared).
template <ExactField F>
int vanishing_order(const NormalEmbedding<F>& x, const std::vector<typename F::Element>& c,
                    const CurvePoint<F>& q) {
  const F& f = x.field();
  const int cap = x.n() + 2;
  const auto rows = x.jet_rows(q, cap);
  for (int l = 0; l < cap; ++l) {
    auto s = f.zero();
    for (std::size_t i = 0; i < x.dim(); ++i) s = f.add(s, f.mul(c[i], rows[static_cast<std::size_t>(l)][i]));
    if (!f.is_zero(s)) return l;
  }
  throw std::logic_error("section vanishes to order >= n+2 at a point");
}

/// Zero divisor of a section, restricted to the rational points of the curve.
template <FiniteField F>
SectionDivisor<F> section_zero_divisor(const NormalEmbedding<F>& x, const std::vector<typename F::Element>& c) {
  if (c.size() != x.dim()) throw std::invalid_argument("section_zero_divisor: dimension mismatch");
  if (std::all_of(c.begin(), c.end(), [&](const auto& e) { return x.field().is_zero(e); }))
    throw std::invalid_argument("section_zero_divisor: zero section");
  std::vector<typename Divisor<F>::Term> terms;
  for (const auto& q : enumerate_points(x.curve())) {
    int ord = vanishing_order(x, c, q);
    if (ord > 0) terms.emplace_back(q, ord);
  }
  SectionDivisor<F> out{Divisor<F>(std::move(terms)), false};
  if (out.divisor.degree() > x.n() + 1) throw std::logic_error("section with more than n+1 zeros");
  out.complete = out.divisor.degree() == x.n() + 1;
  return out;
}

}  // namespace ellrank
