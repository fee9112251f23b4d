#include "ellrank/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

namespace ellrank {

namespace {

const std::vector<std::string> kExperiments{"lemmas", "i1", "f2", "i00", "oo1"};

bool two_k_plus_one(const std::string& e) { return e == "f2" || e == "i00"; }

Json div_json(const Model& m, const Div& d) { return m.format(d); }

void standard_caveats(Report& rep) {
  rep.caveat("rationality",
             "searches range over F_p-rational points only; a failed search is inconclusive, not a refutation");
  rep.caveat("char-p", "statements for algebraically closed fields of characteristic 0 are sampled over F_p");
}

/// Subspaces compared as canonical reduced bases.
std::vector<Vector<PrimeField>> canonical_span(const Model& m, const Div& z) {
  if (z.empty()) return {};
  return RowEchelon<PrimeField>(m.x().jet_matrix(z)).basis();
}

Point random_nonzero_class(const Model& m, Rng& rng) { return random_point(m, rng, {Point::origin()}); }

/// Disjoint A, B with A + B ∈ |O(1)|, deg A uniform in 1..n.
std::pair<Div, Div> complementary_pair(const Model& m, Rng& rng) {
  for (;;) {
    const int da = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(m.n())));
    Div a = random_divisor(m, rng, da);
    Div partial = random_divisor(m, rng, m.n() - da, a.support());
    Div b = complete_to_class(m, partial, m.curve().neg(m.x().class_sum(a)));
    if (a.disjoint_from(b)) return {a, b};
  }
}

// ---------------------------------------------------------------------------

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void run_lemmas(const ExperimentConfig& cfg, const Model& m, Report& rep) {
  const int n = m.n();
  const auto& x = m.x();
  const int samples = std::max(cfg.samples, 10);

  {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = derive_rng(cfg.seed, 1);
    CheckRecord r{"e7.1-i", "every divisor of degree <= n is independent; degree n+1 drops rank iff in |O(1)|"};
    int low = 0, low_bad = 0, in = 0, in_bad = 0, out = 0, out_bad = 0;
    Json example;
    for (int i = 0; i < samples; ++i) {
      Div z = random_divisor(m, rng, 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))));
      ++low;
      if (static_cast<int>(rank(x.jet_matrix(z))) != z.degree()) {
        ++low_bad;
        if (example.is_null()) example = div_json(m, z);
      }
    }
    for (int i = 0; i < samples / 5; ++i) {
      Div z = random_divisor_in_O1(m, rng);
      ++in;
      if (static_cast<int>(rank(x.jet_matrix(z))) != n) ++in_bad;
      Div y = complete_to_class(m, random_divisor(m, rng, n), random_nonzero_class(m, rng));
      ++out;
      if (static_cast<int>(rank(x.jet_matrix(y))) != n + 1) ++out_bad;
    }
    r.status = status_of(low_bad + in_bad + out_bad == 0);
    r.counts = {{"degree_le_n", low},   {"degree_le_n_exceptions", low_bad}, {"in_O1", in},
                {"in_O1_exceptions", in_bad}, {"off_O1", out},                {"off_O1_exceptions", out_bad}};
    if (!example.is_null()) r.witness = {{"dependent", example}};
    rep.add(std::move(r));
    rep.time_phase("e7.1-i", elapsed_ms(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = derive_rng(cfg.seed, 2);
    CheckRecord r{"e7.1-ii", "<A> ∩ <B> = <A ∩ B> when deg A + deg B <= n"};
    int tested = 0, overlaps = 0, bad = 0;
    for (int i = 0; i < samples / 2; ++i) {
      const int da = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
      Div a = random_divisor(m, rng, da);
      Div b;
      if (i % 2 == 0) {
        // constructed overlap: B contains a point of A
        const auto supp = a.support();
        const Point q = supp[uniform_below(rng, supp.size())];
        const int extra = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - da)));
        b = Div::single(q).plus(extra ? random_divisor(m, rng, extra) : Div{});
        ++overlaps;
      } else {
        b = random_divisor(m, rng, 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - da))));
      }
      ++tested;
      auto inter = row_space_intersection(x.jet_matrix(a), x.jet_matrix(b));
      if (inter != canonical_span(m, divisor_lattice(a, b).intersection)) ++bad;
    }
    r.status = status_of(bad == 0);
    r.counts = {{"pairs", tested}, {"constructed_overlaps", overlaps}, {"exceptions", bad}};
    rep.add(std::move(r));
    rep.time_phase("e7.1-ii", elapsed_ms(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = derive_rng(cfg.seed, 3);
    CheckRecord r3{"e7.1-iii", "disjoint A, B with A + B ∈ |O(1)| meet in exactly one point"};
    CheckRecord ra{"a1", "two schemes strictly spanning one point are jointly dependent"};
    int tested = 0, bad = 0, a1_tested = 0, a1_bad = 0;
    Json example;
    for (int i = 0; i < samples / 2; ++i) {
      auto [a, b] = complementary_pair(m, rng);
      ++tested;
      auto res = span_intersection(x, a, b);
      const bool ok = res.dim == 0 && res.witness && point_in_span(x, *res.witness, a) &&
                      point_in_span(x, *res.witness, b);
      if (!ok) {
        ++bad;
        continue;
      }
      if (example.is_null())
        example = {{"A", div_json(m, a)}, {"B", div_json(m, b)}, {"P", m.format(*res.witness)}};
      if (strictly_spanned_by(x, *res.witness, a) && strictly_spanned_by(x, *res.witness, b)) {
        ++a1_tested;
        Div u = divisor_lattice(a, b).union_;
        if (static_cast<int>(rank(x.jet_matrix(u))) >= u.degree()) ++a1_bad;
      }
    }
    r3.status = status_of(bad == 0);
    r3.counts = {{"pairs", tested}, {"exceptions", bad}};
    r3.witness = example;
    ra.status = a1_tested == 0 ? Status::Inconclusive : status_of(a1_bad == 0);
    ra.counts = {{"pairs", a1_tested}, {"exceptions", a1_bad}};
    rep.add(std::move(r3));
    rep.add(std::move(ra));
    rep.time_phase("e7.1-iii", elapsed_ms(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = derive_rng(cfg.seed, 4);
    CheckRecord r{"sigma-dim", "Terracini probe gives dim σ_t = min(n, 2t-1)"};
    Json per_t = Json::array();
    int bad = 0;
    const int trials = std::max(samples / 10, 1);
    for (int t = 1; t <= (n + 2) / 2; ++t) {
      int misses = 0;
      for (int i = 0; i < trials; ++i)
        if (terracini_dim(m, t, rng, 1) != std::min(n, 2 * t - 1)) ++misses;
      per_t.push_back({{"t", t}, {"expected", std::min(n, 2 * t - 1)}, {"trials", trials}, {"exceptions", misses}});
      bad += misses;
    }
    r.status = status_of(bad == 0);
    r.counts = {{"per_t", per_t}, {"exceptions", bad}};
    rep.add(std::move(r));
    rep.time_phase("sigma-dim", elapsed_ms(t0));
  }
}

// ---------------------------------------------------------------------------

struct Instance {
  Div w;
  PPoint p;
};

Instance border_instance(const Model& m, int w, Rng& rng) {
  Div wd = Div::single(random_point(m, rng), w);
  PPoint p = generic_point_in_span(m, wd, rng, 100);
  return {wd, p};
}

void run_i1(const ExperimentConfig& cfg, const Model& m, Report& rep) {
  const int n = m.n(), w = cfg.w;
  const int instances = cfg.resolved_instances();
  const std::uint64_t trials = cfg.resolved_trials();
  int cert_ok = 0, unique_ok = 0, sound_ok = 0, lower_ok = 0, budget_hit = 0, found = 0, o3_ok = 0,
      dichotomy = 0;
  std::uint64_t candidates = 0, trials_used = 0;
  Json example, failures = Json::array();
  for (int i = 0; i < instances; ++i) {
    Rng rng = derive_rng(cfg.seed, static_cast<std::uint64_t>(i));
    auto [wd, p] = border_instance(m, w, rng);
    const bool cert = border_rank_cert(m, p, wd).valid();
    cert_ok += cert;

    auto ev = evincing_schemes(m, p, w, cfg.budget);
    unique_ok += ev.schemes.size() == 1 && ev.schemes.front() == wd;
    bool sound = true;
    for (int t = 1; t < w; ++t) sound = sound && evincing_schemes(m, p, t, cfg.budget).schemes.empty();
    sound_ok += sound;

    auto ex = rank_exhaustive_reduced(m, p, n - w, cfg.budget, cfg.workers);
    candidates += ex.candidates;
    budget_hit += ex.budget_exceeded;
    const bool lower = !ex.witness && !ex.budget_exceeded && static_cast<int>(ex.sizes_exhausted.size()) == n - w;
    lower_ok += lower;
    if (!lower) failures.push_back({{"instance", i}, {"P", m.format(p)}, {"W", div_json(m, wd)}});

    auto up = rank_upper_search(m, p, wd, n + 1 - w, {}, trials, rng());
    trials_used += up.trials_run;
    if (up.witness) {
      ++found;
      if (lower) ++dichotomy;
      if (example.is_null())
        example = {{"P", m.format(p)}, {"W", div_json(m, wd)}, {"S", div_json(m, *up.witness)},
                   {"trials", up.trials_run}};
    }
    // Rank gap: with sizes up to n-b exhausted, any witness has size >= n+1-b.
    o3_ok += !lower || !up.witness || up.witness->degree() >= n + 1 - w;
  }

  CheckRecord o1{"o1", "border-rank certificate b(P) = w"};
  o1.status = status_of(cert_ok == instances);
  o1.counts = {{"instances", instances}, {"valid", cert_ok}};
  rep.add(std::move(o1));

  CheckRecord e8{"e8", "w·Q is the unique evincing scheme of degree w; nothing of smaller degree"};
  e8.status = status_of(unique_ok == instances && sound_ok == instances);
  e8.counts = {{"instances", instances}, {"unique", unique_ok}, {"sound", sound_ok}};
  rep.add(std::move(e8));

  CheckRecord lo{"i1", "no reduced rational set of size <= n-w spans P"};
  lo.status = status_of(lower_ok == instances);
  lo.counts = {{"instances", instances},
               {"exhausted", lower_ok},
               {"budget_exceeded", budget_hit},
               {"candidates", candidates},
               {"max_size", n - w}};
  if (!failures.empty()) lo.witness = {{"failures", failures}};
  rep.add(std::move(lo));

  CheckRecord hi{"i1", "reduced S of size n+1-w with P ∈ <S> found by search"};
  hi.status = found * 10 >= instances * 9 ? Status::Pass : Status::Inconclusive;
  hi.counts = {{"instances", instances},
               {"found", found},
               {"threshold_percent", 90},
               {"trials_per_instance", trials},
               {"trials_used", trials_used},
               {"rank_determined", dichotomy}};
  hi.witness = example;
  if (hi.status == Status::Inconclusive) hi.note = "search success rate below the 90% threshold";
  rep.add(std::move(hi));

  CheckRecord o3{"o3", "rank gap: exhausted sizes force witnesses of size >= n+1-b"};
  o3.status = status_of(o3_ok == instances);
  o3.counts = {{"instances", instances}, {"consistent", o3_ok}};
  o3.note = "checks r + b >= n+1";
  rep.add(std::move(o3));

  rep.caveat("o3-inequality",
             "the rank-gap inequality is checked in the form r + b >= n+1, which is what its proof establishes; "
             "the stated form r + b >= n+1-b is weaker");
}

// ---------------------------------------------------------------------------

void run_f2(const ExperimentConfig& cfg, const Model& m, Report& rep) {
  const int k = cfg.resolved_k();
  const int instances = cfg.resolved_instances();
  auto lift = quadratic_lift(m);
  int max_found = 0, review = 0, pairs = 0, pair_bad = 0, singles = 0, single_bad = 0, exactly_two = 0,
      complete = 0, rejected = 0, zero = 0;
  std::uint64_t candidates = 0;
  Json example;
  for (int i = 0; i < instances; ++i) {
    Rng rng = derive_rng(cfg.seed, static_cast<std::uint64_t>(i));
    std::optional<EvincingFamilyReport<QuadraticField>> ev;
    PPoint p = m.x().embed_point(Point::origin());
    for (int attempt = 0; attempt < 100 && !ev; ++attempt) {
      // a point on the span of k+1 rational points, off the tangential variety
      p = random_combination(m, rng, random_reduced(m, rng, k + 1));
      if (!evincing_schemes(m, p, k, cfg.budget).schemes.empty()) {
        ++rejected;
        continue;
      }
      auto rep_i = evincing_schemes(lift, p, k + 1, cfg.budget);
      if (std::any_of(rep_i.schemes.begin(), rep_i.schemes.end(), [](const auto& z) { return !z.is_reduced(); })) {
        ++rejected;
        continue;
      }
      ev = std::move(rep_i);
    }
    if (!ev) throw std::runtime_error("f2: no point off the tangential variety after 100 attempts");
    const int found = static_cast<int>(ev->schemes.size());
    candidates += ev->candidates;
    complete += ev->complete;
    max_found = std::max(max_found, found);
    review += found > 2;
    zero += found == 0;
    exactly_two += found == 2;
    for (const auto& pr : ev->pairs) {
      ++pairs;
      pair_bad += !(pr.disjoint && pr.class_sum_origin);
    }
    if (found == 1 && ev->complete) {
      ++singles;
      single_bad += !ev->double_in_O1.front();
    }
    if (found == 2 && example.is_null())
      example = {{"P", m.format(p)},
                 {"Z1", lift.format(ev->schemes[0])},
                 {"Z2", lift.format(ev->schemes[1])}};
  }

  CheckRecord a{"f2-a", "at most two evincing schemes; any two are disjoint with Z1 + Z2 ∈ |O(1)|"};
  a.status = status_of(review == 0 && pair_bad == 0);
  a.counts = {{"instances", instances}, {"max_schemes", max_found}, {"flagged_for_review", review},
              {"pairs", pairs},         {"pair_exceptions", pair_bad}, {"candidates", candidates},
              {"complete_enumerations", complete}, {"resampled", rejected}};
  a.witness = example;
  rep.add(std::move(a));

  CheckRecord b{"f2-b", "a unique evincing scheme Z has 2Z ∈ |O(1)|"};
  b.status = status_of(single_bad == 0);
  b.counts = {{"singletons", singles}, {"exceptions", single_bad}};
  rep.add(std::move(b));

  CheckRecord d{"f2-d", "fraction of points with exactly two evincing schemes"};
  d.status = exactly_two * 10 >= instances * 8 ? Status::Pass : Status::Inconclusive;
  d.counts = {{"instances", instances}, {"exactly_two", exactly_two}, {"none", zero}, {"threshold_percent", 80}};
  if (d.status == Status::Inconclusive) d.note = "fraction below the 80% heuristic threshold";
  rep.add(std::move(d));

  rep.caveat("places", "evincing schemes are enumerated over places of degree <= 2 (rational points and "
                       "conjugate pairs over F_{p^2}); enumeration is complete for degree <= 2");
}

// ---------------------------------------------------------------------------

void run_i00(const ExperimentConfig& cfg, const Model& m, Report& rep) {
  const int k = cfg.resolved_k();
  Rng rng = derive_rng(cfg.seed, 0);
  auto sp = construct_superrank_point(m, k, rng);

  CheckRecord c{"i00", "super-rank point construction certificates"};
  c.status = status_of(sp.all_pass());
  c.counts = {{"attempts", sp.attempts},
              {"disjoint", sp.disjoint},
              {"z1_nonreduced", sp.z1_nonreduced},
              {"z2_nonreduced", sp.z2_nonreduced},
              {"sum_in_O1", sp.sum_in_O1},
              {"double_z1_not_in_O1", sp.double_z1_not_in_O1},
              {"unique_witness", sp.unique_witness},
              {"strict_z1", sp.strict_z1},
              {"strict_z2", sp.strict_z2}};
  c.witness = {{"Q", m.format(sp.q)}, {"Z1", div_json(m, sp.z1)}, {"Z2", div_json(m, sp.z2)}};
  rep.add(std::move(c));

  CheckRecord b{"i00", "border rank of Q is k+1"};
  b.status = status_of(border_rank_cert(m, sp.q, sp.z1).valid() && border_rank_cert(m, sp.q, sp.z2).valid());
  rep.add(std::move(b));

  auto ex = rank_exhaustive_reduced(m, sp.q, k + 1, cfg.budget, cfg.workers);
  CheckRecord lo{"i00", "no reduced rational set of size <= k+1 spans Q"};
  lo.status = status_of(!ex.witness && !ex.budget_exceeded && static_cast<int>(ex.sizes_exhausted.size()) == k + 1);
  lo.counts = {{"candidates", ex.candidates}, {"sizes_exhausted", ex.sizes_exhausted}};
  if (ex.witness) lo.witness = {{"S", div_json(m, *ex.witness)}};
  rep.add(std::move(lo));

  const int instances = cfg.resolved_instances();
  int ok = 0;
  std::uint64_t cand = 0;
  for (int i = 0; i < instances; ++i) {
    Rng r = derive_rng(cfg.seed, static_cast<std::uint64_t>(i) + 1);
    PPoint p = random_combination(m, r, random_reduced(m, r, k + 1));
    auto e = rank_exhaustive_reduced(m, p, k + 1, cfg.budget, cfg.workers);
    cand += e.candidates;
    ok += e.min_size == k + 1;
  }
  CheckRecord g{"i00", "generic points have a reduced witness of size k+1 and none smaller"};
  g.status = status_of(ok == instances);
  g.counts = {{"instances", instances}, {"rank_k_plus_1", ok}, {"candidates", cand}};
  rep.add(std::move(g));
}

// ---------------------------------------------------------------------------

void run_oo1(const ExperimentConfig& cfg, const Model& m, Report& rep) {
  const int n = m.n(), w = cfg.w;
  Rng rng = derive_rng(cfg.seed, 0);
  auto [wd, p] = border_instance(m, w, rng);

  CheckRecord o1{"o1", "border-rank certificate b(P) = w"};
  o1.status = status_of(border_rank_cert(m, p, wd).valid());
  o1.witness = {{"P", m.format(p)}, {"W", div_json(m, wd)}};
  rep.add(std::move(o1));

  std::vector<std::vector<Point>> avoid;
  for (int i = 0; i < cfg.avoid_sets; ++i) avoid.push_back(random_reduced(m, rng, cfg.avoid_size, wd.support()).support());
  auto res = open_rank_verify(m, p, wd, avoid, cfg.resolved_trials(), cfg.samples, rng());

  CheckRecord ex{"oo1", "no reduced F with |F| <= n-w disjoint from W spans P"};
  ex.status = status_of(res.exclusions_passed == res.exclusions_tested);
  ex.counts = {{"tested", res.exclusions_tested}, {"passed", res.exclusions_passed}, {"max_size", n - w}};
  rep.add(std::move(ex));

  int valid = 0;
  Json witnesses = Json::array();
  for (std::size_t i = 0; i < res.searches.size(); ++i) {
    const auto& s = res.searches[i];
    if (!s.witness) {
      witnesses.push_back(nullptr);
      continue;
    }
    bool ok = s.witness->degree() == res.target && s.witness->is_reduced() && s.witness->disjoint_from(wd) &&
              point_in_span(m.x(), p, *s.witness);
    for (const auto& u : avoid[i]) ok = ok && !s.witness->contains_point(u);
    valid += ok;
    witnesses.push_back(div_json(m, *s.witness));
  }
  CheckRecord oo2{"oo2", "for each avoid set U a reduced E ⊂ X \\ U of size n+1-w spans P"};
  const int sets = static_cast<int>(res.searches.size());
  if (valid < res.search_successes)
    oo2.status = Status::Fail;
  else
    oo2.status = valid * 10 >= sets * 9 ? Status::Pass : Status::Inconclusive;
  oo2.counts = {{"avoid_sets", sets},         {"avoid_size", cfg.avoid_size}, {"found", res.search_successes},
                {"valid", valid},             {"target", res.target},         {"threshold_percent", 90},
                {"trials_per_set", cfg.resolved_trials()}};
  oo2.witness = {{"E", witnesses}};
  rep.add(std::move(oo2));
}

}  // namespace

// ---------------------------------------------------------------------------

bool ExperimentConfig::known(const std::string& name) {
  return std::find(kExperiments.begin(), kExperiments.end(), name) != kExperiments.end();
}

int ExperimentConfig::resolved_n() const {
  if (n) return *n;
  if (two_k_plus_one(experiment)) return 2 * k.value_or(1) + 1;
  if (k) return 2 * *k + 1;
  return 8;
}

int ExperimentConfig::resolved_k() const {
  if (k) return *k;
  return (resolved_n() - 1) / 2;
}

int ExperimentConfig::resolved_instances() const {
  if (instances) return *instances;
  return experiment == "f2" ? 50 : 20;
}

void ExperimentConfig::validate() const {
  if (!known(experiment)) throw ConfigError("unknown experiment '" + experiment + "'");
  if (p < 5 || !is_prime(p)) throw ConfigError("p must be a prime >= 5");
  if (p > (1U << 24)) throw ConfigError("p too large for point enumeration (limit 2^24)");
  const int nn = resolved_n();
  if (nn < 3) throw ConfigError("n must be >= 3");
  PrimeField f(p);
  const Fp fa = f.from_int(a), fb = f.from_int(b);
  if (f.is_zero(f.add(f.mul(f.from_int(4), power(f, fa, 3)), f.mul(f.from_int(27), f.mul(fb, fb)))))
    throw ConfigError("curve y^2 = x^3 + ax + b is singular over F_p");
  if (experiment == "i1" || experiment == "oo1") {
    if (w < 1) throw ConfigError("w must be >= 1");
    if (nn < 2 * w + 2) throw ConfigError("needs n >= 2w + 2");
  }
  if (two_k_plus_one(experiment)) {
    if (resolved_k() < 1) throw ConfigError("k must be >= 1");
    if (nn != 2 * resolved_k() + 1) throw ConfigError("needs n = 2k + 1");
  }
  if (experiment == "f2" && p > 4096) throw ConfigError("f2 enumerates F_{p^2}; p must be <= 4096");
  if (resolved_instances() < 1) throw ConfigError("instances must be >= 1");
  if (samples < 0 || avoid_size < 0 || avoid_sets < 0) throw ConfigError("counts must be non-negative");
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["experiment"] = experiment;
  j["p"] = p;
  j["a"] = a;
  j["b"] = b;
  j["n"] = resolved_n();
  if (two_k_plus_one(experiment)) j["k"] = resolved_k();
  if (experiment == "i1" || experiment == "oo1") j["w"] = w;
  j["seed"] = seed;
  j["trials"] = resolved_trials();
  j["budget"] = budget;
  if (experiment == "oo1") {
    j["avoid_size"] = avoid_size;
    j["avoid_sets"] = avoid_sets;
  }
  if (experiment != "lemmas" && experiment != "oo1") j["instances"] = resolved_instances();
  if (experiment == "lemmas" || experiment == "oo1") j["samples"] = samples;
  return j;
}

Report run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Model m(cfg.p, cfg.a, cfg.b, cfg.resolved_n());
  Report rep(cfg.experiment, cfg.to_json(), cfg.seed);
  rep.caveat("model", "curve y^2 = x^3 + ax + b over F_p with " + std::to_string(m.points().size()) +
                          " rational points, embedded by |(n+1)O|");
  standard_caveats(rep);
  static const std::map<std::string, std::function<void(const ExperimentConfig&, const Model&, Report&)>> drivers{
      {"lemmas", run_lemmas}, {"i1", run_i1}, {"f2", run_f2}, {"i00", run_i00}, {"oo1", run_oo1}};
  drivers.at(cfg.experiment)(cfg, m, rep);
  rep.time_phase("total", elapsed_ms(start));
  return rep;
}

}  // namespace ellrank
