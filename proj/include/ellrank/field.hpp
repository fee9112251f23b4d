#pragma once

// Exact coefficient fields: prime fields F_p (5 <= p < 2^31), their quadratic
// extensions F_{p^2}, and the rationals. Every field is a small value object
// whose member functions implement the arithmetic; elements are plain values
// in canonical form, so operator== is equality in the field.

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ellrank {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; portable across standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Independent stream for (seed, index); used so that parallel work is reproducible.
Rng derive_rng(std::uint64_t seed, std::uint64_t index);

bool is_prime(std::uint64_t n);

struct Fp {
  std::uint32_t v = 0;
  friend auto operator<=>(Fp, Fp) = default;
};

class PrimeField {
 public:
  using Element = Fp;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  std::uint64_t order() const { return p_; }
  Element element_at(std::uint64_t i) const { return Fp{static_cast<std::uint32_t>(i)}; }

  Element zero() const { return {}; }
  Element one() const { return Fp{1}; }
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fp{static_cast<std::uint32_t>(r)};
  }
  bool is_zero(Element a) const { return a.v == 0; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a.v + b.v;
    return Fp{s >= p_ ? s - p_ : s};
  }
  Element sub(Element a, Element b) const { return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Element neg(Element a) const { return Fp{a.v == 0 ? 0 : p_ - a.v}; }
  Element mul(Element a, Element b) const {
    return Fp{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % p_)};
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element random(Rng& rng) const { return Fp{static_cast<std::uint32_t>(uniform_below(rng, p_))}; }
  Element random_nonzero(Rng& rng) const {
    return Fp{static_cast<std::uint32_t>(1 + uniform_below(rng, p_ - 1))};
  }

  std::string format(Element a) const { return std::to_string(a.v); }
  std::optional<Element> parse(std::string_view text) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// F_p[r]/(r^2 - d) with d the least quadratic non-residue mod p.
struct Fq {
  Fp re;
  Fp im;
  friend auto operator<=>(Fq, Fq) = default;
};

class QuadraticField {
 public:
  using Element = Fq;

  explicit QuadraticField(const PrimeField& base);

  const PrimeField& base() const { return base_; }
  Fp nonresidue() const { return d_; }
  std::uint64_t order() const { return base_.order() * base_.order(); }
  Element element_at(std::uint64_t i) const {
    return Fq{base_.element_at(i % base_.order()), base_.element_at(i / base_.order())};
  }

  Element zero() const { return {}; }
  Element one() const { return Fq{base_.one(), {}}; }
  Element from_int(std::int64_t v) const { return Fq{base_.from_int(v), {}}; }
  Element lift(Fp a) const { return Fq{a, {}}; }
  bool is_zero(Element a) const { return a.re.v == 0 && a.im.v == 0; }
  bool is_rational(Element a) const { return a.im.v == 0; }

  Element add(Element a, Element b) const { return {base_.add(a.re, b.re), base_.add(a.im, b.im)}; }
  Element sub(Element a, Element b) const { return {base_.sub(a.re, b.re), base_.sub(a.im, b.im)}; }
  Element neg(Element a) const { return {base_.neg(a.re), base_.neg(a.im)}; }
  Element mul(Element a, Element b) const {
    const auto& f = base_;
    return {f.add(f.mul(a.re, b.re), f.mul(d_, f.mul(a.im, b.im))),
            f.add(f.mul(a.re, b.im), f.mul(a.im, b.re))};
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  /// Frobenius x -> x^p, i.e. r -> -r.
  Element conjugate(Element a) const { return {a.re, base_.neg(a.im)}; }

  Element random(Rng& rng) const { return {base_.random(rng), base_.random(rng)}; }

  std::string format(Element a) const;
  std::optional<Element> parse(std::string_view text) const;

  bool operator==(const QuadraticField&) const = default;

 private:
  PrimeField base_;
  Fp d_;
};

class RationalField {
 public:
  using Element = mpq_class;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  /// Small random rationals num/den with |num| <= 9, 1 <= den <= 4.
  Element random(Rng& rng) const;

  std::string format(const Element& a) const { return a.get_str(); }
  std::optional<Element> parse(std::string_view text) const;

  bool operator==(const RationalField&) const = default;
};

template <class F>
concept ExactField = requires(const F& f, const typename F::Element& a, const typename F::Element& b,
                              Rng& rng) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.add(a, b) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, b) } -> std::convertible_to<typename F::Element>;
  { f.neg(a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, b) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.random(rng) } -> std::convertible_to<typename F::Element>;
  { f.format(a) } -> std::same_as<std::string>;
  { a == b } -> std::convertible_to<bool>;
  { a < b } -> std::convertible_to<bool>;
};

/// Finite fields additionally expose an indexable element list.
template <class F>
concept FiniteField = ExactField<F> && requires(const F& f, std::uint64_t i) {
  { f.order() } -> std::same_as<std::uint64_t>;
  { f.element_at(i) } -> std::convertible_to<typename F::Element>;
};

template <ExactField F>
typename F::Element power(const F& f, typename F::Element a, std::uint64_t e) {
  typename F::Element r = f.one();
  while (e > 0) {
    if (e & 1U) r = f.mul(r, a);
    a = f.mul(a, a);
    e >>= 1U;
  }
  return r;
}

}  // namespace ellrank
