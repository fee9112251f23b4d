#pragma once

// The embedding of a Weierstrass curve in P^n by the complete linear system
// |(n+1) O|, effective divisors on the curve, and jet matrices whose row space
// is the linear span of a divisor.

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ellrank/curve.hpp"
#include "ellrank/matrix.hpp"

namespace ellrank {

/// x^x_exp y^y_exp with y_exp in {0, 1}; pole order at O is 2 x_exp + 3 y_exp.
struct Monomial {
  int x_exp = 0;
  int y_exp = 0;
  int pole_order() const { return 2 * x_exp + 3 * y_exp; }
  bool operator==(const Monomial&) const = default;
};

std::string format_monomial(const Monomial& m);

/// Basis of L((n+1) O) sorted by pole order 0, 2, 3, ..., n+1.
std::vector<Monomial> basis_functions(int n);

template <ExactField F>
class ProjPoint {
 public:
  using Element = typename F::Element;

  ProjPoint(const F& f, std::vector<Element> coords) : coords_(std::move(coords)) {
    auto it = std::find_if(coords_.begin(), coords_.end(), [&](const Element& e) { return !f.is_zero(e); });
    if (it == coords_.end()) throw std::invalid_argument("projective point with all coordinates zero");
    const Element s = f.inv(*it);
    for (auto& e : coords_) e = f.mul(e, s);
  }

  const std::vector<Element>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<Element> coords_;
};

template <ExactField F>
std::string format_proj_point(const F& f, const ProjPoint<F>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ":";
    s += f.format(p.coords()[i]);
  }
  return s + "]";
}

/// Effective divisor sum m_i Q_i with distinct Q_i in canonical order.
template <ExactField F>
class Divisor {
 public:
  using Point = CurvePoint<F>;
  using Term = std::pair<Point, int>;

  Divisor() = default;

  explicit Divisor(std::vector<Term> terms) {
    std::map<Point, int> acc;
    for (auto& [q, m] : terms) {
      if (m < 0) throw std::invalid_argument("divisor multiplicity must be >= 0");
      if (m > 0) acc[q] += m;
    }
    terms_.assign(acc.begin(), acc.end());
  }

  static Divisor single(const Point& q, int m = 1) { return Divisor({{q, m}}); }

  static Divisor reduced(const std::vector<Point>& pts) {
    std::vector<Term> t;
    for (const auto& q : pts) t.emplace_back(q, 1);
    Divisor d(std::move(t));
    if (static_cast<std::size_t>(d.degree()) != pts.size()) throw std::invalid_argument("reduced divisor with repeated point");
    return d;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& t : terms_) d += t.second;
    return d;
  }

  bool is_reduced() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second == 1; });
  }

  int multiplicity(const Point& q) const {
    for (const auto& [p, m] : terms_)
      if (p == q) return m;
    return 0;
  }

  std::vector<Point> support() const {
    std::vector<Point> s;
    for (const auto& t : terms_) s.push_back(t.first);
    return s;
  }

  bool contains_point(const Point& q) const { return multiplicity(q) > 0; }

  /// this ⊆ other as schemes (pointwise multiplicities).
  bool is_subdivisor_of(const Divisor& other) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return other.multiplicity(t.first) >= t.second; });
  }

  bool disjoint_from(const Divisor& other) const {
    return std::none_of(terms_.begin(), terms_.end(), [&](const Term& t) { return other.contains_point(t.first); });
  }

  Divisor plus(const Divisor& other) const {
    auto t = terms_;
    t.insert(t.end(), other.terms_.begin(), other.terms_.end());
    return Divisor(std::move(t));
  }

  Divisor scaled(int k) const {
    auto t = terms_;
    for (auto& [q, m] : t) m *= k;
    return Divisor(std::move(t));
  }

  /// Divisors obtained by lowering one multiplicity by one.
  std::vector<Divisor> maximal_proper_subdivisors() const {
    std::vector<Divisor> out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      auto t = terms_;
      t[i].second -= 1;
      out.emplace_back(std::move(t));
    }
    return out;
  }

  friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.terms_ < b.terms_; }

 private:
  std::vector<Term> terms_;
};

template <ExactField F>
struct DivisorLattice {
  Divisor<F> union_;
  Divisor<F> intersection;
  Divisor<F> sum;
};

/// Pointwise max, min and sum of multiplicities.
template <ExactField F>
DivisorLattice<F> divisor_lattice(const Divisor<F>& a, const Divisor<F>& b) {
  std::map<CurvePoint<F>, std::pair<int, int>> m;
  for (const auto& [q, k] : a.terms()) m[q].first = k;
  for (const auto& [q, k] : b.terms()) m[q].second = k;
  std::vector<typename Divisor<F>::Term> u, i;
  for (const auto& [q, mm] : m) {
    u.emplace_back(q, std::max(mm.first, mm.second));
    i.emplace_back(q, std::min(mm.first, mm.second));
  }
  return {Divisor<F>(std::move(u)), Divisor<F>(std::move(i)), a.plus(b)};
}

/// Canonical text form, e.g. "2*(0,1)+(4,2)+O"; the empty divisor prints as "0".
template <ExactField F>
std::string format_divisor(const F& f, const Divisor<F>& d) {
  if (d.empty()) return "0";
  std::string s;
  for (const auto& [q, m] : d.terms()) {
    if (!s.empty()) s += "+";
    if (m != 1) s += std::to_string(m) + "*";
    s += format_point(f, q);
  }
  return s;
}

class DivisorSyntaxError : public std::invalid_argument {
 public:
  DivisorSyntaxError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `term (+ term)*` with term = `[k*](x,y)` or `[k*]O`. Whitespace is ignored.
template <ExactField F>
Divisor<F> parse_divisor(const Curve<F>& c, std::string_view text) {
  const F& f = c.field();
  std::string s;
  std::vector<std::size_t> origin;  // position in the original text
  for (std::size_t i = 0; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s.push_back(text[i]);
      origin.push_back(i);
    }
  auto pos_of = [&](std::size_t i) { return i < origin.size() ? origin[i] : text.size(); };
  if (s.empty()) throw DivisorSyntaxError("empty divisor", 0);
  if (s == "0") return {};

  std::vector<typename Divisor<F>::Term> terms;
  std::size_t i = 0;
  while (true) {
    int mult = 1;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      if (i >= s.size() || s[i] != '*') throw DivisorSyntaxError("expected '*' after multiplicity", pos_of(i));
      mult = std::stoi(s.substr(start, i - start));
      if (mult < 1) throw DivisorSyntaxError("multiplicity must be positive", pos_of(start));
      ++i;
    }
    if (i < s.size() && s[i] == 'O') {
      terms.emplace_back(CurvePoint<F>::origin(), mult);
      ++i;
    } else if (i < s.size() && s[i] == '(') {
      auto comma = s.find(',', i);
      auto close = s.find(')', i);
      if (comma == std::string::npos || close == std::string::npos || comma > close)
        throw DivisorSyntaxError("malformed point literal", pos_of(i));
      auto x = f.parse(std::string_view(s).substr(i + 1, comma - i - 1));
      if (!x) throw DivisorSyntaxError("bad x coordinate", pos_of(i + 1));
      auto y = f.parse(std::string_view(s).substr(comma + 1, close - comma - 1));
      if (!y) throw DivisorSyntaxError("bad y coordinate", pos_of(comma + 1));
      auto q = CurvePoint<F>::affine(*x, *y);
      c.require(q);
      terms.emplace_back(q, mult);
      i = close + 1;
    } else {
      throw DivisorSyntaxError("expected point literal or O", pos_of(i));
    }
    if (i == s.size()) break;
    if (s[i] != '+') throw DivisorSyntaxError("expected '+'", pos_of(i));
    ++i;
  }
  return Divisor<F>(std::move(terms));
}

template <ExactField F>
class NormalEmbedding {
 public:
  using Element = typename F::Element;
  using Point = CurvePoint<F>;

  NormalEmbedding(Curve<F> curve, int n) : curve_(std::move(curve)), n_(n), basis_(basis_functions(n)) {}

  const Curve<F>& curve() const { return curve_; }
  const F& field() const { return curve_.field(); }
  int n() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_) + 1; }
  /// Every divisor of degree <= beta spans a space of dimension deg - 1.
  int beta() const { return n_; }
  const std::vector<Monomial>& basis() const { return basis_; }

  /// Coefficients of t^0 .. t^(m-1) of t^c f_i(t) in the local chart at q
  /// (c = n+1 at O, else 0). Row l is the l-th jet of the embedding at q.
  std::vector<Vector<F>> jet_rows(const Point& q, int m) const {
    const F& f = field();
    const std::size_t order = static_cast<std::size_t>(m) + 2;  // two guard terms
    std::vector<Series<F>> series;
    if (q.infinity) {
      // t^(n+1) x^i y^j = t^(n+1-pole) u^-(i+j) with u = s / t^3.
      auto ch = local_chart(curve_, q, order + 3);
      Series<F> u(ch.s.begin() + 3, ch.s.end());
      Series<F> uinv = series_inv(f, u, order);
      for (const auto& mono : basis_) {
        Series<F> p = series_pow(f, uinv, static_cast<unsigned>(mono.x_exp + mono.y_exp), order);
        const std::size_t shift = static_cast<std::size_t>(n_ + 1 - mono.pole_order());
        Series<F> r(order, f.zero());
        for (std::size_t k = 0; k + shift < order; ++k) r[k + shift] = p[k];
        series.push_back(std::move(r));
      }
    } else {
      auto ch = local_chart(curve_, q, order);
      for (const auto& mono : basis_) {
        Series<F> r = series_pow(f, ch.x, static_cast<unsigned>(mono.x_exp), order);
        if (mono.y_exp) r = series_mul(f, r, ch.y, order);
        series.push_back(std::move(r));
      }
    }
    std::vector<Vector<F>> rows(static_cast<std::size_t>(m), Vector<F>(dim(), f.zero()));
    for (std::size_t l = 0; l < rows.size(); ++l)
      for (std::size_t i = 0; i < dim(); ++i) rows[l][i] = series[i][l];
    return rows;
  }

  ProjPoint<F> embed_point(const Point& q) const { return ProjPoint<F>(field(), jet_rows(q, 1).front()); }

  Matrix<F> jet_matrix(const Divisor<F>& z) const {
    Matrix<F> m(field(), 0, dim());
    for (const auto& [q, mult] : z.terms()) {
      curve_.require(q);
      for (const auto& r : jet_rows(q, mult)) m.append_row(r);
    }
    return m;
  }

  Point class_sum(const Divisor<F>& z) const { return divisor_class_sum(curve_, z.terms()); }

  /// z is a hyperplane section: deg z = n+1 and z ~ (n+1) O.
  bool in_O1(const Divisor<F>& z) const { return z.degree() == n_ + 1 && class_sum(z).is_origin(); }

 private:
  Curve<F> curve_;
  int n_;
  std::vector<Monomial> basis_;
};

/// Precomputed jet rows per point, up to a fixed multiplicity; speeds up
/// searches that build many jet matrices over the same support.
template <ExactField F>
class JetCache {
 public:
  JetCache(const NormalEmbedding<F>& x, int max_mult) : x_(&x), max_mult_(max_mult) {}

  const std::vector<Vector<F>>& rows(const CurvePoint<F>& q) const {
    auto it = cache_.find(q);
    if (it == cache_.end()) it = cache_.emplace(q, x_->jet_rows(q, max_mult_)).first;
    return it->second;
  }

  Matrix<F> jet_matrix(const Divisor<F>& z) const {
    Matrix<F> m(x_->field(), 0, x_->dim());
    for (const auto& [q, mult] : z.terms()) {
      if (mult > max_mult_) {
        for (const auto& r : x_->jet_rows(q, mult)) m.append_row(r);
        continue;
      }
      const auto& rs = rows(q);
      for (int l = 0; l < mult; ++l) m.append_row(rs[static_cast<std::size_t>(l)]);
    }
    return m;
  }

 private:
  const NormalEmbedding<F>* x_;
  int max_mult_;
  mutable std::map<CurvePoint<F>, std::vector<Vector<F>>> cache_;
};

}  // namespace ellrank
