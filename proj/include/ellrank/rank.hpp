#pragma once

// Ranks of points of P^n with respect to the embedded curve: border-rank
// certificates, evincing-scheme enumeration, exhaustive and randomized
// searches for reduced spanning sets, the construction of points whose rank
// exceeds their border rank, secant-dimension probes and open-rank checks.
//
// Every claim of the form "no set of size s spans P" produced here is about
// sets of F_p-rational points of the chosen curve.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellrank/span.hpp"

namespace ellrank {

using Point = CurvePoint<PrimeField>;
using Div = Divisor<PrimeField>;
using PPoint = ProjPoint<PrimeField>;
using Embedding = NormalEmbedding<PrimeField>;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t budget)
      : std::runtime_error(what + ": " + std::to_string(needed) + " candidates exceed budget " +
                           std::to_string(budget)),
        needed_(needed),
        budget_(budget) {}
  std::uint64_t needed() const { return needed_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t needed_;
  std::uint64_t budget_;
};

class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string check, const std::string& what)
      : std::invalid_argument(check + ": " + what), check_(std::move(check)) {}
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

/// The embedding X ⊂ P^n over F_p together with its rational points.
class Model {
 public:
  Model(std::uint32_t p, std::int64_t a, std::int64_t b, int n);

  const PrimeField& field() const { return field_; }
  const Embedding& x() const { return x_; }
  const Curve<PrimeField>& curve() const { return x_.curve(); }
  int n() const { return x_.n(); }
  const std::vector<Point>& points() const { return points_; }
  std::size_t index_of(const Point& q) const;

  std::string format(const Div& d) const { return format_divisor(field_, d); }
  std::string format(const PPoint& p) const { return format_proj_point(field_, p); }
  std::string format(const Point& q) const { return format_point(field_, q); }

 private:
  PrimeField field_;
  Embedding x_;
  std::vector<Point> points_;
};

// ---------------------------------------------------------------------------
// Sampling

/// Random rational point not in `exclude`.
Point random_point(const Model& m, Rng& rng, const std::vector<Point>& exclude = {});

/// Random reduced divisor of the given size avoiding `exclude`.
Div random_reduced(const Model& m, Rng& rng, int size, const std::vector<Point>& exclude = {});

/// Random divisor of the given degree with mixed multiplicities on distinct rational points.
Div random_divisor(const Model& m, Rng& rng, int degree, const std::vector<Point>& exclude = {});

/// `partial` plus one more point Q* making the class sum equal to `target`;
/// Q* may coincide with a point of `partial`.
Div complete_to_class(const Model& m, const Div& partial, const Point& target);

/// Random divisor of degree n+1 lying in |O(1)|.
Div random_divisor_in_O1(const Model& m, Rng& rng);

/// Random combination of the jet rows of W with all coefficients nonzero.
PPoint random_combination(const Model& m, Rng& rng, const Div& w);

// ---------------------------------------------------------------------------
// Rank operations

/// A point strictly spanned by W, by rejection sampling random combinations of its jet rows.
PPoint generic_point_in_span(const Model& m, const Div& w, Rng& rng, int max_tries);

struct BorderRankCert {
  PPoint point;
  Div w;
  int degree = 0;
  bool degree_ok = false;  // 2 deg W <= n + 1
  bool member = false;     // P ∈ <W>
  bool strict = false;     // P ∉ <W'> for W' ⊊ W
  bool valid() const { return degree_ok && member && strict; }
  /// Name of the first failing check, empty when valid.
  std::string failure() const;
};

/// A valid certificate proves that the border rank of P is deg W.
BorderRankCert border_rank_cert(const Model& m, const PPoint& p, const Div& w);

template <ExactField F>
struct EvincingFamilyReport {
  int degree = 0;
  std::vector<Divisor<F>> schemes;
  std::uint64_t candidates = 0;
  /// Enumeration covered every F_p-rational divisor of this degree.
  bool complete = false;
  int max_place_degree = 1;

  struct Pair {
    std::size_t i = 0, j = 0;
    bool disjoint = false;
    bool class_sum_origin = false;  // Z_i + Z_j ∈ |O(1)| when deg = (n+1)/2
  };
  std::vector<Pair> pairs;
  /// 2 Z ∈ |O(1)| for each scheme.
  std::vector<bool> double_in_O1;
};

/// Every divisor of degree t built from `places` (a place is a Frobenius
/// orbit of geometric points) that strictly spans P.
template <ExactField F>
EvincingFamilyReport<F> evincing_schemes(const NormalEmbedding<F>& x, const ProjPoint<F>& p, int t,
                                         const std::vector<Divisor<F>>& places, std::uint64_t budget);

/// Enumeration over rational points only.
EvincingFamilyReport<PrimeField> evincing_schemes(const Model& m, const PPoint& p, int t, std::uint64_t budget);

/// The model lifted to F_{p^2}, with places of degree one (rational points) and
/// degree two (pairs of conjugate points).
struct QuadraticLift {
  QuadraticField field;
  NormalEmbedding<QuadraticField> x;
  std::vector<Divisor<QuadraticField>> places;

  ProjPoint<QuadraticField> lift(const PPoint& p) const;
  std::string format(const Divisor<QuadraticField>& d) const { return format_divisor(field, d); }
};

QuadraticLift quadratic_lift(const Model& m);

/// Enumeration over places of degree <= 2; complete for t <= 2.
EvincingFamilyReport<QuadraticField> evincing_schemes(const QuadraticLift& lift, const PPoint& p, int t,
                                                      std::uint64_t budget);

struct UpperSearchResult {
  std::optional<Div> witness;
  std::uint64_t trials_run = 0;
  std::uint64_t rejected_collisions = 0;
  bool exhausted() const { return !witness.has_value(); }
};

/// Randomized search for a reduced S of size r = n+1-deg W with S + W ∈ |O(1)|,
/// S ∩ (avoid ∪ supp W) = ∅ and P ∈ <S>. Trial i draws from derive_rng(seed, i).
UpperSearchResult rank_upper_search(const Model& m, const PPoint& p, const Div& w, int r,
                                    const std::vector<Point>& avoid, std::uint64_t trials, std::uint64_t seed);

struct ExhaustiveRankResult {
  std::optional<int> min_size;
  std::optional<Div> witness;
  std::vector<int> sizes_exhausted;  // sizes fully searched without a witness
  std::uint64_t candidates = 0;
  bool budget_exceeded = false;
};

/// Tests every reduced set of rational points of size 1..r_max; stops at the
/// first size that has a witness (the lexicographically first one is returned).
ExhaustiveRankResult rank_exhaustive_reduced(const Model& m, const PPoint& p, int r_max, std::uint64_t budget,
                                             unsigned workers = 0);

struct SuperRankPoint {
  PPoint q;
  Div z1;
  Div z2;
  bool disjoint = false;
  bool z1_nonreduced = false;
  bool z2_nonreduced = false;
  bool sum_in_O1 = false;
  bool double_z1_not_in_O1 = false;
  bool unique_witness = false;
  bool strict_z1 = false;
  bool strict_z2 = false;
  int attempts = 0;
  bool all_pass() const {
    return disjoint && z1_nonreduced && z2_nonreduced && sum_in_O1 && double_z1_not_in_O1 && unique_witness &&
           strict_z1 && strict_z2;
  }
};

/// In P^{2k+1}: Z1 = 2A + (k-1 points) with 2 Z1 ∉ |O(1)|, Z2 = 2C + (k-1 points)
/// disjoint from Z1 with Z1 + Z2 ∈ |O(1)|, and Q the unique point of <Z1> ∩ <Z2>.
SuperRankPoint construct_superrank_point(const Model& m, int k, Rng& rng, int max_attempts = 200);

/// max over trials of rank(jet(2Q_1 + ... + 2Q_t)) - 1 for random distinct rational Q_i.
int terracini_dim(const Model& m, int t, Rng& rng, int trials);

struct ExclusionProof {
  int joint_rank = 0;
  int joint_degree = 0;
  bool independent = false;       // rank(jet(W + F)) = deg W + deg F, hence <W> ∩ <F> = ∅
  bool direct_nonmember = false;  // P ∉ <F> by a membership test
  bool agree() const { return independent && direct_nonmember; }
};

/// Shows P ∉ <F> for a reduced F disjoint from W with deg W + deg F <= n.
ExclusionProof disjoint_exclusion_check(const Model& m, const PPoint& p, const Div& w, const Div& f);

struct OpenRankReport {
  int target = 0;  // n + 1 - deg W
  std::vector<std::vector<Point>> avoid_sets;
  std::vector<UpperSearchResult> searches;
  int search_successes = 0;
  int exclusions_tested = 0;
  int exclusions_passed = 0;
};

/// Searches for S of size n+1-w avoiding each given set and checks `exclusion_samples`
/// random reduced F (sizes 1..n-w, disjoint from W) for exclusion.
OpenRankReport open_rank_verify(const Model& m, const PPoint& p, const Div& w,
                                const std::vector<std::vector<Point>>& avoid_sets, std::uint64_t trials,
                                int exclusion_samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// evincing_schemes template body

namespace detail {

/// Number of multisets of places with total degree t (DP over places).
std::uint64_t count_place_multisets(const std::vector<int>& place_degrees, int t);

}  // namespace detail

template <ExactField F>
EvincingFamilyReport<F> evincing_schemes(const NormalEmbedding<F>& x, const ProjPoint<F>& p, int t,
                                         const std::vector<Divisor<F>>& places, std::uint64_t budget) {
  if (t < 1) throw std::invalid_argument("evincing_schemes: degree must be >= 1");
  std::vector<int> degs;
  for (const auto& pl : places) degs.push_back(pl.degree());
  const std::uint64_t count = detail::count_place_multisets(degs, t);
  if (count > budget) throw BudgetExceeded("evincing_schemes", count, budget);

  EvincingFamilyReport<F> rep;
  rep.degree = t;
  for (int d : degs) rep.max_place_degree = std::max(rep.max_place_degree, d);
  JetCache<F> jets(x, t);
  std::span<const typename F::Element> pv(p.coords());

  std::vector<int> mult(places.size(), 0);
  auto test = [&] {
    ++rep.candidates;
    std::vector<typename Divisor<F>::Term> terms;
    for (std::size_t i = 0; i < places.size(); ++i)
      if (mult[i] > 0)
        for (const auto& [q, k] : places[i].terms()) terms.emplace_back(q, k * mult[i]);
    Divisor<F> z(std::move(terms));
    if (!RowEchelon<F>(jets.jet_matrix(z)).contains(pv)) return;
    for (const auto& sub : z.maximal_proper_subdivisors())
      if (!sub.empty() && RowEchelon<F>(jets.jet_matrix(sub)).contains(pv)) return;
    rep.schemes.push_back(std::move(z));
  };
  // Depth-first over place indices in order, so schemes come out in a fixed order.
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (remaining == 0) {
      test();
      return;
    }
    for (std::size_t j = i; j < places.size(); ++j) {
      if (degs[j] > remaining) continue;
      ++mult[j];
      self(self, j, remaining - degs[j]);
      --mult[j];
    }
  };
  rec(rec, 0, t);

  for (std::size_t i = 0; i < rep.schemes.size(); ++i) {
    rep.double_in_O1.push_back(x.in_O1(rep.schemes[i].scaled(2)));
    for (std::size_t j = i + 1; j < rep.schemes.size(); ++j) {
      const auto& a = rep.schemes[i];
      const auto& b = rep.schemes[j];
      rep.pairs.push_back({i, j, a.disjoint_from(b), x.class_sum(a.plus(b)).is_origin()});
    }
  }
  return rep;
}

}  // namespace ellrank
