// ellrank: command-line front end for the curve, span and rank operations and
// the experiment drivers. Exit codes: 0 all checks pass, 1 a check fails,
// 2 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ellrank/experiments.hpp"

using namespace ellrank;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::uint32_t p = 31;
  std::int64_t a = 2;
  std::int64_t b = 3;
  std::optional<int> n;
  std::optional<int> k;
  int w = 2;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;
  std::uint64_t budget = 50'000'000;
  int avoid_size = 5;
  int avoid_sets = 5;
  std::optional<int> instances;
  int samples = 1000;
  unsigned workers = 0;
  std::string divisor;
  std::string point;
  std::string out;
  std::string experiment;
};

void emit(const Options& o, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

int model_n(const Options& o) {
  if (o.n) return *o.n;
  if (o.k) return 2 * *o.k + 1;
  return 8;
}

Model make_model(const Options& o) {
  if (o.p < 5 || !is_prime(o.p)) throw UsageError("p must be a prime >= 5");
  if (o.p > (1U << 24)) throw UsageError("p too large for point enumeration (limit 2^24)");
  if (model_n(o) < 3) throw UsageError("n must be >= 3");
  return Model(o.p, o.a, o.b, model_n(o));
}

Div require_divisor(const Model& m, const Options& o) {
  if (o.divisor.empty()) throw UsageError("--divisor is required");
  return parse_divisor(m.curve(), o.divisor);
}

/// "(x,y)" or "O" names a curve point (embedded); "[c0:...:cn]" or "c0,...,cn" gives coordinates.
PPoint parse_point(const Model& m, const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "O" || (!t.empty() && t.front() == '(')) {
    auto d = parse_divisor(m.curve(), t);
    if (d.degree() != 1) throw UsageError("--point must name a single curve point");
    return m.x().embed_point(d.terms().front().first);
  }
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::vector<Fp> coords;
  std::size_t start = 0;
  while (start <= t.size()) {
    std::size_t end = t.find_first_of(":,", start);
    if (end == std::string::npos) end = t.size();
    auto v = m.field().parse(t.substr(start, end - start));
    if (!v) throw UsageError("bad coordinate in --point: '" + t.substr(start, end - start) + "'");
    coords.push_back(*v);
    start = end + 1;
  }
  if (coords.size() != m.x().dim())
    throw UsageError("--point needs " + std::to_string(m.x().dim()) + " coordinates");
  return PPoint(m.field(), std::move(coords));
}

Json rows_json(const Model& m, const std::vector<Vector<PrimeField>>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    Json row = Json::array();
    for (auto e : r) row.push_back(m.field().format(e));
    j.push_back(row);
  }
  return j;
}

int cmd_curve_info(const Options& o) {
  Model m = make_model(o);
  const auto& c = m.curve();
  Json j;
  j["p"] = o.p;
  j["a"] = m.field().format(c.a());
  j["b"] = m.field().format(c.b());
  j["discriminant"] = m.field().format(c.discriminant());
  j["points"] = m.points().size();
  j["trace"] = static_cast<long long>(o.p) + 1 - static_cast<long long>(m.points().size());
  j["n"] = m.n();
  Json basis = Json::array();
  for (const auto& mono : m.x().basis()) basis.push_back(format_monomial(mono));
  j["basis"] = basis;
  Json pts = Json::array();
  for (const auto& q : m.points()) pts.push_back(m.format(q));
  j["rational_points"] = pts;
  emit(o, j);
  return 0;
}

int cmd_embed(const Options& o) {
  Model m = make_model(o);
  if (o.point.empty() && o.divisor.empty()) throw UsageError("--point or --divisor is required");
  Json j;
  j["n"] = m.n();
  if (!o.point.empty()) {
    j["point"] = o.point;
    j["coords"] = m.format(parse_point(m, o.point));
  }
  if (!o.divisor.empty()) {
    Div d = require_divisor(m, o);
    j["divisor"] = m.format(d);
    j["jet_matrix"] = rows_json(m, m.x().jet_matrix(d).row_vectors());
  }
  emit(o, j);
  return 0;
}

int cmd_span(const Options& o) {
  Model m = make_model(o);
  Div z = require_divisor(m, o);
  const auto& x = m.x();
  Json j;
  j["divisor"] = m.format(z);
  j["degree"] = z.degree();
  j["span_dim"] = span_dim(x, z);
  j["class_sum"] = m.format(x.class_sum(z));
  j["in_O1"] = x.in_O1(z);
  j["jet_matrix"] = rows_json(m, x.jet_matrix(z).row_vectors());
  j["hyperplanes"] = rows_json(m, hyperplanes_through(x, z));
  if (!o.point.empty()) {
    PPoint p = parse_point(m, o.point);
    j["point"] = m.format(p);
    j["in_span"] = point_in_span(x, p, z);
    j["strictly_spanned"] = strictly_spanned_by(x, p, z);
  }
  emit(o, j);
  return 0;
}

int cmd_rank(const Options& o) {
  Model m = make_model(o);
  Div w = require_divisor(m, o);
  const int n = m.n(), deg = w.degree();
  Rng rng = derive_rng(o.seed, 0);
  PPoint p = o.point.empty() ? generic_point_in_span(m, w, rng, 100) : parse_point(m, o.point);

  Json j;
  j["point"] = m.format(p);
  j["W"] = m.format(w);
  auto cert = border_rank_cert(m, p, w);
  j["border"] = {{"w", deg},
                 {"valid", cert.valid()},
                 {"failure", cert.failure()},
                 {"degree_ok", cert.degree_ok},
                 {"member", cert.member},
                 {"strict", cert.strict}};

  int lower = cert.valid() ? deg : 1;
  std::string provenance = cert.valid() ? "certificate" : "trivial";
  std::optional<Div> upper;

  const int r_max = std::max(1, n - deg);
  auto ex = rank_exhaustive_reduced(m, p, r_max, o.budget, o.workers);
  j["exhaustive"] = {{"r_max", r_max},
                     {"sizes_exhausted", ex.sizes_exhausted},
                     {"candidates", ex.candidates},
                     {"budget_exceeded", ex.budget_exceeded}};
  if (ex.witness) {
    upper = ex.witness;
    j["exhaustive"]["min_size"] = *ex.min_size;
  }
  if (!ex.sizes_exhausted.empty() && ex.sizes_exhausted.back() + 1 > lower) {
    lower = ex.sizes_exhausted.back() + 1;
    provenance = "exhausted sizes over rational points";
  }
  if (!upper && cert.valid() && n + 1 - deg >= 1) {
    auto up = rank_upper_search(m, p, w, n + 1 - deg, {}, o.trials.value_or(50ULL * o.p), rng());
    j["upper_search"] = {{"trials_run", up.trials_run}, {"found", up.witness.has_value()}};
    if (up.witness) upper = up.witness;
  }
  j["lower_bound"] = {{"value", lower}, {"provenance", provenance}};
  j["upper_witness"] = upper ? Json(m.format(*upper)) : Json(nullptr);
  if (upper) j["upper_size"] = upper->degree();
  j["caveat"] = "rank bounds range over F_p-rational reduced sets";
  emit(o, j);
  return upper && upper->degree() < lower ? 1 : 0;
}

int cmd_verify(const Options& o) {
  ExperimentConfig cfg;
  cfg.experiment = o.experiment;
  cfg.p = o.p;
  cfg.a = o.a;
  cfg.b = o.b;
  cfg.n = o.n;
  cfg.k = o.k;
  cfg.w = o.w;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.budget = o.budget;
  cfg.avoid_size = o.avoid_size;
  cfg.avoid_sets = o.avoid_sets;
  cfg.instances = o.instances;
  cfg.samples = o.samples;
  cfg.workers = o.workers;
  cfg.out = o.out;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  Report rep = run_experiment(cfg);
  emit(o, rep.to_json());
  std::cerr << cfg.experiment << ": " << to_string(rep.overall()) << "\n";
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranks of points with respect to elliptic normal curves over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--p", o.p, "prime field characteristic")->capture_default_str();
  app.add_option("--a", o.a, "curve coefficient a")->capture_default_str();
  app.add_option("--b", o.b, "curve coefficient b")->capture_default_str();
  app.add_option("--n", o.n, "ambient dimension (default 8, or 2k+1)");
  app.add_option("--k", o.k, "n = 2k+1 for f2 and i00");
  app.add_option("--w", o.w, "border rank / degree of W")->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--trials", o.trials, "upper-search trials (default 50 p)");
  app.add_option("--budget", o.budget, "enumeration budget")->capture_default_str();
  app.add_option("--avoid-size", o.avoid_size, "size of each avoid set")->capture_default_str();
  app.add_option("--avoid-sets", o.avoid_sets, "number of avoid sets")->capture_default_str();
  app.add_option("--instances", o.instances, "instances per experiment");
  app.add_option("--samples", o.samples, "samples for law checks and exclusions")->capture_default_str();
  app.add_option("--workers", o.workers, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--divisor", o.divisor, "divisor, e.g. 2*(0,1)+(4,2)+O");
  app.add_option("--point", o.point, "curve point (x,y) / O, or coordinates [c0:...:cn]");
  app.add_option("--out", o.out, "write JSON here instead of stdout");

  auto* curve_info = app.add_subcommand("curve-info", "curve, rational points and embedding basis");
  auto* embed = app.add_subcommand("embed", "embedded coordinates of a point or jet matrix of a divisor");
  auto* span = app.add_subcommand("span", "span of a divisor and membership of a point");
  auto* rank_cmd = app.add_subcommand("rank", "border-rank certificate and rank bounds");
  auto* verify = app.add_subcommand("verify", "run an experiment: lemmas, i1, f2, i00, oo1");
  verify->add_option("experiment", o.experiment, "experiment name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*curve_info) return cmd_curve_info(o);
    if (*embed) return cmd_embed(o);
    if (*span) return cmd_span(o);
    if (*rank_cmd) return cmd_rank(o);
    if (*verify) return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DivisorSyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotOnCurve& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
