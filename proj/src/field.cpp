#include "ellrank/field.hpp"

#include <charconv>
#include <limits>
#include <utility>

namespace ellrank {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::optional<std::int64_t> parse_integer(std::string_view text) {
  std::int64_t v = 0;
  auto first = text.data();
  auto last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return v;
}

}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 5 || p >= (1U << 31) || !is_prime(p))
    throw std::invalid_argument("prime field needs a prime 5 <= p < 2^31, got " + std::to_string(p));
}

Fp PrimeField::inv(Fp a) const {
  if (a.v == 0) throw std::domain_error("inverse of zero");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a.v;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return from_int(t);
}

std::optional<Fp> PrimeField::parse(std::string_view text) const {
  auto v = parse_integer(text);
  if (!v) return std::nullopt;
  return from_int(*v);
}

QuadraticField::QuadraticField(const PrimeField& base) : base_(base) {
  const std::uint64_t half = (base.characteristic() - 1) / 2;
  for (std::uint32_t c = 2; c < base.characteristic(); ++c) {
    if (power(base, Fp{c}, half) != base.one()) {
      d_ = Fp{c};
      return;
    }
  }
  throw std::logic_error("no quadratic non-residue");
}

Fq QuadraticField::inv(Fq a) const {
  // (re + im r)^{-1} = (re - im r) / (re^2 - d im^2)
  const auto& f = base_;
  Fp norm = f.sub(f.mul(a.re, a.re), f.mul(d_, f.mul(a.im, a.im)));
  Fp ninv = f.inv(norm);
  return {f.mul(a.re, ninv), f.neg(f.mul(a.im, ninv))};
}

std::string QuadraticField::format(Fq a) const {
  if (a.im.v == 0) return base_.format(a.re);
  std::string im = (a.im.v == 1 ? std::string{} : base_.format(a.im) + "*") + "r";
  if (a.re.v == 0) return im;
  return base_.format(a.re) + "+" + im;
}

std::optional<Fq> QuadraticField::parse(std::string_view text) const {
  // Accepts "a", "b*r", "r", "a+b*r", "a+r".
  auto parse_im = [&](std::string_view s) -> std::optional<Fp> {
    if (s == "r") return base_.one();
    if (s.size() > 2 && s.substr(s.size() - 2) == "*r") return base_.parse(s.substr(0, s.size() - 2));
    return std::nullopt;
  };
  if (text.empty()) return std::nullopt;
  if (text.back() != 'r') {
    auto re = base_.parse(text);
    if (!re) return std::nullopt;
    return Fq{*re, {}};
  }
  auto plus = text.rfind('+');
  if (plus == std::string_view::npos || plus == 0) {
    auto im = parse_im(text);
    if (!im) return std::nullopt;
    return Fq{{}, *im};
  }
  auto re = base_.parse(text.substr(0, plus));
  auto im = parse_im(text.substr(plus + 1));
  if (!re || !im) return std::nullopt;
  return Fq{*re, *im};
}

mpq_class RationalField::inv(const mpq_class& a) const {
  if (sgn(a) == 0) throw std::domain_error("inverse of zero");
  return 1 / a;
}

mpq_class RationalField::random(Rng& rng) const {
  mpq_class r(static_cast<long>(uniform_below(rng, 19)) - 9, static_cast<unsigned long>(1 + uniform_below(rng, 4)));
  r.canonicalize();
  return r;
}

std::optional<mpq_class> RationalField::parse(std::string_view text) const {
  auto slash = text.find('/');
  auto num = parse_integer(text.substr(0, slash));
  if (!num) return std::nullopt;
  std::int64_t den = 1;
  if (slash != std::string_view::npos) {
    auto d = parse_integer(text.substr(slash + 1));
    if (!d || *d == 0) return std::nullopt;
    den = *d;
  }
  mpq_class r(mpz_class(std::to_string(*num)), mpz_class(std::to_string(den)));
  r.canonicalize();
  return r;
}

}  // namespace ellrank
