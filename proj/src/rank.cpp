#include "ellrank/rank.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace ellrank {

Model::Model(std::uint32_t p, std::int64_t a, std::int64_t b, int n)
    : field_(p),
      x_(Curve<PrimeField>(field_, field_.from_int(a), field_.from_int(b)), n),
      points_(enumerate_points(x_.curve())) {}

std::size_t Model::index_of(const Point& q) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), q);
  if (it == points_.end() || !(*it == q)) throw NotOnCurve("not a rational point of the curve: " + format(q));
  return static_cast<std::size_t>(it - points_.begin());
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

bool listed(const std::vector<Point>& v, const Point& q) { return std::find(v.begin(), v.end(), q) != v.end(); }

std::vector<Point> available(const Model& m, const std::vector<Point>& exclude) {
  std::vector<Point> out;
  for (const auto& q : m.points())
    if (!listed(exclude, q)) out.push_back(q);
  return out;
}

}  // namespace

Point random_point(const Model& m, Rng& rng, const std::vector<Point>& exclude) {
  auto pool = available(m, exclude);
  if (pool.empty()) throw std::invalid_argument("no rational point left to sample");
  return pool[uniform_below(rng, pool.size())];
}

Div random_reduced(const Model& m, Rng& rng, int size, const std::vector<Point>& exclude) {
  auto pool = available(m, exclude);
  if (size < 0 || static_cast<std::size_t>(size) > pool.size())
    throw std::invalid_argument("too few rational points for a reduced set of size " + std::to_string(size));
  // partial Fisher-Yates
  for (int i = 0; i < size; ++i) std::swap(pool[i], pool[i + uniform_below(rng, pool.size() - i)]);
  pool.resize(static_cast<std::size_t>(size));
  return Div::reduced(pool);
}

Div random_divisor(const Model& m, Rng& rng, int degree, const std::vector<Point>& exclude) {
  std::vector<Div::Term> terms;
  std::vector<Point> used = exclude;
  int remaining = degree;
  while (remaining > 0) {
    // multiplicity 1 half of the time, otherwise up to 3
    int mult = 1;
    if (uniform_below(rng, 2) == 0) mult = 1 + static_cast<int>(uniform_below(rng, std::min(remaining, 3)));
    auto q = random_point(m, rng, used);
    used.push_back(q);
    terms.emplace_back(q, mult);
    remaining -= mult;
  }
  return Div(std::move(terms));
}

Div complete_to_class(const Model& m, const Div& partial, const Point& target) {
  const auto& c = m.curve();
  Point forced = c.sub(target, m.x().class_sum(partial));
  return partial.plus(Div::single(forced));
}

Div random_divisor_in_O1(const Model& m, Rng& rng) {
  return complete_to_class(m, random_divisor(m, rng, m.n()), Point::origin());
}

PPoint random_combination(const Model& m, Rng& rng, const Div& w) {
  const auto& f = m.field();
  auto jet = m.x().jet_matrix(w);
  for (;;) {
    Vector<PrimeField> v(jet.cols(), f.zero());
    for (std::size_t r = 0; r < jet.rows(); ++r) {
      auto c = f.random_nonzero(rng);
      for (std::size_t j = 0; j < jet.cols(); ++j) v[j] = f.add(v[j], f.mul(c, jet(r, j)));
    }
    if (std::any_of(v.begin(), v.end(), [&](Fp e) { return !f.is_zero(e); })) return PPoint(f, std::move(v));
  }
}

// ---------------------------------------------------------------------------

PPoint generic_point_in_span(const Model& m, const Div& w, Rng& rng, int max_tries) {
  if (w.degree() < 1) throw std::invalid_argument("generic_point_in_span: empty divisor");
  const auto& f = m.field();
  auto jet = m.x().jet_matrix(w);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Vector<PrimeField> v(jet.cols(), f.zero());
    for (std::size_t r = 0; r < jet.rows(); ++r) {
      auto c = f.random(rng);
      for (std::size_t j = 0; j < jet.cols(); ++j) v[j] = f.add(v[j], f.mul(c, jet(r, j)));
    }
    if (std::all_of(v.begin(), v.end(), [&](Fp e) { return f.is_zero(e); })) continue;
    PPoint p(f, std::move(v));
    if (strictly_spanned_by(m.x(), p, w)) return p;
  }
  throw std::runtime_error("generic_point_in_span: no strictly spanned point after " + std::to_string(max_tries) +
                           " tries");
}

std::string BorderRankCert::failure() const {
  if (!degree_ok) return "degree";  // 2w <= n+1 violated
  if (!member) return "membership";
  if (!strict) return "strictness";
  return {};
}

BorderRankCert border_rank_cert(const Model& m, const PPoint& p, const Div& w) {
  BorderRankCert c{p, w, w.degree()};
  c.degree_ok = w.degree() >= 1 && 2 * w.degree() <= m.n() + 1;
  c.member = !w.empty() && point_in_span(m.x(), p, w);
  c.strict = c.member && strictly_spanned_by(m.x(), p, w);
  return c;
}

namespace detail {

std::uint64_t count_place_multisets(const std::vector<int>& place_degrees, int t) {
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(t) + 1, 0);
  ways[0] = 1;
  for (int d : place_degrees) {
    if (d < 1) throw std::invalid_argument("place of degree < 1");
    for (int s = d; s <= t; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - d)];
  }
  return ways[static_cast<std::size_t>(t)];
}

}  // namespace detail

EvincingFamilyReport<PrimeField> evincing_schemes(const Model& m, const PPoint& p, int t, std::uint64_t budget) {
  std::vector<Div> places;
  for (const auto& q : m.points()) places.push_back(Div::single(q));
  auto rep = evincing_schemes(m.x(), p, t, places, budget);
  rep.complete = t <= 1;
  return rep;
}

ProjPoint<QuadraticField> QuadraticLift::lift(const PPoint& p) const {
  std::vector<Fq> c;
  for (auto e : p.coords()) c.push_back(field.lift(e));
  return ProjPoint<QuadraticField>(field, std::move(c));
}

QuadraticLift quadratic_lift(const Model& m) {
  QuadraticField q(m.field());
  Curve<QuadraticField> cq(q, q.lift(m.curve().a()), q.lift(m.curve().b()));
  std::vector<Divisor<QuadraticField>> places;
  std::vector<Divisor<QuadraticField>> conjugate_pairs;
  for (const auto& pt : enumerate_points(cq)) {
    const bool rational = pt.is_origin() || (q.is_rational(pt.x) && q.is_rational(pt.y));
    if (rational) {
      places.push_back(Divisor<QuadraticField>::single(pt));
      continue;
    }
    auto bar = CurvePoint<QuadraticField>::affine(q.conjugate(pt.x), q.conjugate(pt.y));
    if (pt < bar) conjugate_pairs.push_back(Divisor<QuadraticField>::reduced({pt, bar}));
  }
  places.insert(places.end(), conjugate_pairs.begin(), conjugate_pairs.end());
  return QuadraticLift{q, NormalEmbedding<QuadraticField>(cq, m.n()), std::move(places)};
}

EvincingFamilyReport<QuadraticField> evincing_schemes(const QuadraticLift& lift, const PPoint& p, int t,
                                                      std::uint64_t budget) {
  auto rep = evincing_schemes(lift.x, lift.lift(p), t, lift.places, budget);
  rep.complete = t <= 2;
  return rep;
}

// ---------------------------------------------------------------------------

UpperSearchResult rank_upper_search(const Model& m, const PPoint& p, const Div& w, int r,
                                    const std::vector<Point>& avoid, std::uint64_t trials, std::uint64_t seed) {
  if (r != m.n() + 1 - w.degree())
    throw std::invalid_argument("rank_upper_search: r must equal n + 1 - deg W = " +
                                std::to_string(m.n() + 1 - w.degree()));
  if (r < 1) throw std::invalid_argument("rank_upper_search: r must be positive");
  std::vector<Point> blocked = avoid;
  for (const auto& q : w.support()) blocked.push_back(q);
  auto pool = available(m, blocked);
  if (pool.size() < static_cast<std::size_t>(r))
    throw std::invalid_argument("rank_upper_search: too few rational points outside avoid and supp W");

  const auto& c = m.curve();
  const Point w_sum = m.x().class_sum(w);
  UpperSearchResult out;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++out.trials_run;
    Rng rng = derive_rng(seed, trial);
    std::vector<Point> chosen = pool;
    for (int i = 0; i + 1 < r; ++i) std::swap(chosen[i], chosen[i + uniform_below(rng, chosen.size() - i)]);
    chosen.resize(static_cast<std::size_t>(r - 1));
    Point acc = w_sum;
    for (const auto& q : chosen) acc = c.add_unchecked(acc, q);
    Point forced = c.neg(acc);
    if (listed(chosen, forced) || listed(blocked, forced)) {
      ++out.rejected_collisions;
      continue;
    }
    chosen.push_back(forced);
    Div s = Div::reduced(chosen);
    if (point_in_span(m.x(), p, s)) {
      out.witness = std::move(s);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive search over reduced sets

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    r = r * num / i;
  }
  return r;
}

/// Depth-first search over index sets i_0 < ... < i_{s-1}, keeping a
/// semi-echelon basis of the chosen points and the residue of P against it.
class SubsetSearch {
 public:
  SubsetSearch(const PrimeField& f, const std::vector<Vector<PrimeField>>& vecs, const Vector<PrimeField>& p, int size)
      : f_(f), vecs_(vecs), dim_(p.size()), size_(size), basis_(size, Vector<PrimeField>(p.size())),
        pivots_(size), residue_(size + 1, Vector<PrimeField>(p.size())), chosen_(size) {
    residue_[0] = p;
  }

  /// Searches subsets whose first index is in `firsts`, in order; returns the first witness.
  std::optional<std::vector<std::size_t>> run(const std::vector<std::size_t>& firsts, std::uint64_t& visited,
                                              const std::atomic<bool>* stop) {
    visited_ = 0;
    stop_ = stop;
    for (std::size_t i : firsts) {
      if (stop_ && stop_->load(std::memory_order_relaxed)) break;
      if (i + static_cast<std::size_t>(size_) > vecs_.size()) break;
      if (descend(0, i)) {
        visited = visited_;
        return chosen_;
      }
    }
    visited = visited_;
    return std::nullopt;
  }

 private:
  // Place index i at depth `level`; true when a witness is found below.
  bool descend(int level, std::size_t i) {
    auto& v = basis_[level];
    v = vecs_[i];
    for (int k = 0; k < level; ++k) {
      const Fp c = v[pivots_[k]];
      if (c.v == 0) continue;
      const auto& b = basis_[k];
      for (std::size_t j = 0; j < dim_; ++j) v[j] = f_.sub(v[j], f_.mul(c, b[j]));
    }
    std::size_t piv = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
      if (v[j].v != 0) {
        piv = j;
        break;
      }
    if (piv == dim_) return false;  // dependent; cannot occur for size <= n
    const Fp s = f_.inv(v[piv]);
    for (auto& e : v) e = f_.mul(e, s);
    pivots_[level] = piv;
    chosen_[level] = i;
    const auto& prev = residue_[level];
    auto& res = residue_[level + 1];
    const Fp c = prev[piv];
    bool zero = true;
    for (std::size_t j = 0; j < dim_; ++j) {
      res[j] = f_.sub(prev[j], f_.mul(c, v[j]));
      zero = zero && res[j].v == 0;
    }
    if (level + 1 == size_) {
      ++visited_;
      return zero;
    }
    for (std::size_t nxt = i + 1; nxt + static_cast<std::size_t>(size_ - level - 1) <= vecs_.size(); ++nxt)
      if (descend(level + 1, nxt)) return true;
    return false;
  }

  const PrimeField& f_;
  const std::vector<Vector<PrimeField>>& vecs_;
  std::size_t dim_;
  int size_;
  std::vector<Vector<PrimeField>> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector<PrimeField>> residue_;
  std::vector<std::size_t> chosen_;
  std::uint64_t visited_ = 0;
  const std::atomic<bool>* stop_ = nullptr;
};

}  // namespace

ExhaustiveRankResult rank_exhaustive_reduced(const Model& m, const PPoint& p, int r_max, std::uint64_t budget,
                                             unsigned workers) {
  if (r_max < 1) throw std::invalid_argument("rank_exhaustive_reduced: r_max must be >= 1");
  const auto& pts = m.points();
  std::vector<Vector<PrimeField>> vecs;
  for (const auto& q : pts) vecs.push_back(m.x().embed_point(q).coords());
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());

  ExhaustiveRankResult out;
  std::uint64_t spent = 0;
  for (int s = 1; s <= r_max; ++s) {
    const std::uint64_t need = binomial(pts.size(), static_cast<std::uint64_t>(s));
    if (need > budget || spent > budget - need) {
      out.budget_exceeded = true;
      break;
    }
    spent += need;

    // Deterministic partition of first indices; each worker reports its
    // lexicographically first witness and the smallest one wins.
    const unsigned nw = std::min<unsigned>(workers, static_cast<unsigned>(pts.size()));
    std::vector<std::optional<std::vector<std::size_t>>> found(nw);
    std::vector<std::uint64_t> visited(nw, 0);
    auto work = [&](unsigned id) {
      std::vector<std::size_t> firsts;
      for (std::size_t i = id; i < pts.size(); i += nw) firsts.push_back(i);
      SubsetSearch search(m.field(), vecs, p.coords(), s);
      found[id] = search.run(firsts, visited[id], nullptr);
    };
    if (nw == 1) {
      work(0);
    } else {
      std::vector<std::jthread> threads;
      for (unsigned id = 0; id < nw; ++id) threads.emplace_back(work, id);
    }
    for (auto v : visited) out.candidates += v;
    std::optional<std::vector<std::size_t>> best;
    for (auto& f : found)
      if (f && (!best || *f < *best)) best = f;
    if (best) {
      std::vector<Point> sel;
      for (auto i : *best) sel.push_back(pts[i]);
      out.min_size = s;
      out.witness = Div::reduced(sel);
      break;
    }
    out.sizes_exhausted.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------

SuperRankPoint construct_superrank_point(const Model& m, int k, Rng& rng, int max_attempts) {
  if (k < 1) throw std::invalid_argument("construct_superrank_point: k must be >= 1");
  if (m.n() != 2 * k + 1) throw std::invalid_argument("construct_superrank_point: needs n = 2k + 1");
  const auto& c = m.curve();
  const auto& x = m.x();
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    // Z1 = 2A + B_1 + ... + B_{k-1}, 2 Z1 ∉ |O(1)|
    Point a = random_point(m, rng);
    Div z1 = Div::single(a, 2).plus(random_reduced(m, rng, k - 1, {a}));
    if (x.in_O1(z1.scaled(2))) continue;
    // Z2 = 2C + D_1 + ... + D_{k-1} with class sum -sigma(Z1), disjoint from Z1
    Div d = random_reduced(m, rng, k - 1, z1.support());
    Point target = c.sub(c.neg(x.class_sum(z1)), x.class_sum(d));
    std::vector<Point> halves;
    for (const auto& cand : m.points())
      if (c.multiply(2, cand) == target && !z1.contains_point(cand) && !d.contains_point(cand))
        halves.push_back(cand);
    if (halves.empty()) continue;
    Div z2 = Div::single(halves[uniform_below(rng, halves.size())], 2).plus(d);

    auto inter = span_intersection(x, z1, z2);
    if (!inter.witness) continue;
    SuperRankPoint out{*inter.witness, z1, z2};
    out.attempts = attempt;
    out.disjoint = z1.disjoint_from(z2);
    out.z1_nonreduced = !z1.is_reduced();
    out.z2_nonreduced = !z2.is_reduced();
    out.sum_in_O1 = x.in_O1(z1.plus(z2));
    out.double_z1_not_in_O1 = !x.in_O1(z1.scaled(2));
    out.unique_witness = inter.dim == 0;
    out.strict_z1 = strictly_spanned_by(x, out.q, z1);
    out.strict_z2 = strictly_spanned_by(x, out.q, z2);
    return out;
  }
  throw std::runtime_error("construct_superrank_point: constraints unsolvable after " + std::to_string(max_attempts) +
                           " attempts");
}

int terracini_dim(const Model& m, int t, Rng& rng, int trials) {
  if (t < 1) throw std::invalid_argument("terracini_dim: t must be >= 1");
  if (static_cast<std::size_t>(t) > m.points().size()) throw std::invalid_argument("terracini_dim: too few points");
  int best = -1;
  for (int i = 0; i < trials; ++i) {
    Div z = random_reduced(m, rng, t).scaled(2);
    best = std::max(best, static_cast<int>(rank(m.x().jet_matrix(z))) - 1);
  }
  return best;
}

ExclusionProof disjoint_exclusion_check(const Model& m, const PPoint& p, const Div& w, const Div& f) {
  if (!f.is_reduced()) throw PreconditionError("reduced", "F must be a reduced set of points");
  if (!f.disjoint_from(w)) throw PreconditionError("disjoint", "F meets the support of W");
  if (w.degree() + f.degree() > m.n())
    throw PreconditionError("degree", "deg W + |F| = " + std::to_string(w.degree() + f.degree()) + " exceeds n");
  if (!strictly_spanned_by(m.x(), p, w)) throw PreconditionError("strict", "P is not strictly spanned by W");
  ExclusionProof proof;
  proof.joint_degree = w.degree() + f.degree();
  proof.joint_rank = static_cast<int>(rank(m.x().jet_matrix(w.plus(f))));
  proof.independent = proof.joint_rank == proof.joint_degree;
  proof.direct_nonmember = f.empty() || !point_in_span(m.x(), p, f);
  return proof;
}

OpenRankReport open_rank_verify(const Model& m, const PPoint& p, const Div& w,
                                const std::vector<std::vector<Point>>& avoid_sets, std::uint64_t trials,
                                int exclusion_samples, std::uint64_t seed) {
  if (m.n() < 2 * w.degree() + 2) throw PreconditionError("range", "needs n >= 2 deg W + 2");
  if (!strictly_spanned_by(m.x(), p, w)) throw PreconditionError("strict", "P is not strictly spanned by W");
  OpenRankReport rep;
  rep.target = m.n() + 1 - w.degree();
  rep.avoid_sets = avoid_sets;
  for (std::size_t i = 0; i < avoid_sets.size(); ++i) {
    auto res = rank_upper_search(m, p, w, rep.target, avoid_sets[i], trials, seed + 7919 * (i + 1));
    if (res.witness) ++rep.search_successes;
    rep.searches.push_back(std::move(res));
  }
  Rng rng = derive_rng(seed, 0xF00D);
  const int max_f = m.n() - w.degree();
  for (int i = 0; i < exclusion_samples; ++i) {
    int size = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_f)));
    Div f = random_reduced(m, rng, size, w.support());
    auto proof = disjoint_exclusion_check(m, p, w, f);
    ++rep.exclusions_tested;
    if (proof.agree()) ++rep.exclusions_passed;
  }
  return rep;
}

}  // namespace ellrank
