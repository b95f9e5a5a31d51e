#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kneadlab/bratteli.hpp"
#include "kneadlab/cfexample.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/error.hpp"
#include "kneadlab/io.hpp"
#include "kneadlab/kneading.hpp"
#include "kneadlab/odometer.hpp"
#include "kneadlab/realization.hpp"
#include "kneadlab/report.hpp"
#include "kneadlab/towers.hpp"
#include "kneadlab/unimodal.hpp"

namespace {

using namespace kneadlab;
using io::Json;
using io::to_json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

struct Options {
  std::string spec;
  std::optional<std::size_t> depth;
  std::string out;
  std::string report;
  bool force = false;
  std::uint64_t seed = 20240601;

  std::optional<std::string> n;
  std::optional<std::size_t> k;
  std::optional<std::size_t> m;
  std::optional<std::size_t> level;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> search_bound;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> cylinder;
  std::string slope;
  std::string other;
  std::string targets;
  std::string against;
  std::string q1 = "1";
  std::size_t levels = 0;
  std::vector<std::size_t> a;
  std::vector<std::size_t> x;
  std::vector<std::size_t> x_prime;
  std::vector<std::string> vector;
};

// One invocation: gathers the digest inputs and the check records beside the artifact.
class Run {
 public:
  explicit Run(std::string command) {
    note_argument(command);
    report_.command = std::move(command);
  }

  Json load(const std::string& path) {
    if (path.empty()) throw Error(ErrorKind::invalid_input, "an input file is required");
    const std::string text = io::read_file(path);
    digest_input_ += text;
    digest_input_ += '\0';
    return io::parse_json(text, path);
  }

  void note_argument(const std::string& text) {
    digest_input_ += text;
    digest_input_ += '\0';
  }

  void check(CheckRecord record) { report_.add(std::move(record)); }
  void artifact(std::string text) { artifact_ = std::move(text); }
  void artifact(const Json& j) { artifact_ = io::dump(j); }

  int finish(const Options& opt) {
    report_.input_digest = sha256_hex(digest_input_);
    const bool ok = report_.pass();
    const std::string report_text = io::dump(report_.to_json());
    if (!opt.report.empty()) {
      io::write_file(opt.report, report_text);
    }
    if (artifact_ && (ok || opt.force)) {
      if (!opt.out.empty()) {
        io::write_file(opt.out, *artifact_);
      } else {
        std::cout << *artifact_;
      }
    }
    if (!artifact_ && opt.report.empty()) {
      std::cout << report_text;
    } else {
      for (const CheckRecord& c : report_.checks) {
        std::cerr << c.id << ": " << (c.pass ? "pass" : "fail") << '\n';
      }
    }
    if (!ok && artifact_ && !opt.force) {
      std::cerr << "checks failed; artifact not written (use --force)\n";
    }
    return ok ? kExitPass : kExitCheckFailure;
  }

 private:
  RunReport report_;
  std::string digest_input_;
  std::optional<std::string> artifact_;
};

// Builds the kneading map described by a JSON input of any supported kind.
KneadingMap map_from(const Json& j, std::optional<std::size_t> depth) {
  if (j.contains("values")) {
    KneadingMap q = io::kneading_map_from(j);
    if (depth && *depth > q.depth()) {
      throw Error(ErrorKind::depth_exceeded, "table has depth " + std::to_string(q.depth()));
    }
    if (depth && *depth < q.depth()) {
      std::vector<std::size_t> v(q.values().begin(), q.values().begin() + static_cast<std::ptrdiff_t>(*depth + 1));
      return KneadingMap(std::move(v), q.source(), 0);
    }
    return q;
  }
  if (j.contains("q")) {
    const AqSpec spec = io::aq_spec_from(j);
    return build_q_aq(spec, depth.value_or(to_size(covered_depth(spec))));
  }
  if (j.contains("a")) {
    const CfSpec spec = io::cf_spec_from(j);
    return build_cf_q(spec, depth.value_or(cf_covered_depth(spec)));
  }
  throw Error(ErrorKind::parse_error, "spec has none of \"values\", \"q\", \"a\"");
}

Json verdict_json(const AdmissibilityVerdict& v) {
  static const char* names[] = {"admissible", "violation", "undetermined"};
  return Json{{"status", names[static_cast<int>(v.status)]}, {"index", v.index}, {"detail", v.detail}};
}

CheckRecord record(std::string id, std::string anchor, bool pass, Json values = Json::object()) {
  return CheckRecord{std::move(id), std::move(anchor), pass, std::move(values)};
}

Integer require_n(const Options& opt) {
  if (!opt.n) throw Error(ErrorKind::invalid_input, "--n is required");
  return parse_integer(*opt.n);
}

// ---------------------------------------------------------------- commands

int cmd_kneading(const Options& opt) {
  Run run("kneading");
  const Json j = run.load(opt.spec);
  const KneadingMap q = map_from(j, opt.depth);
  const CuttingTimes s = cutting_times(q, q.depth());
  const auto bad = q.first_invalid_index();
  run.check(record("kneading-map", "kneading map condition", !bad,
                   Json{{"first_invalid_index", bad ? Json(*bad) : Json(nullptr)}}));
  if (!bad) {
    const AdmissibilityVerdict v = check_admissible(q, q.depth());
    run.check(record("admissibility", "admissibility condition",
                     v.status != AdmissibilityVerdict::Status::violation, verdict_json(v)));
  }
  if (j.contains("q")) {
    const AqSpec spec = io::aq_spec_from(j);
    if (spec.q.size() > 5) {
      const DoublyResonantReport r = check_doubly_resonant(spec, q.depth());
      run.check(record("doubly-resonant", "doubly resonant kneading", r.pass(),
                       Json{{"part1", r.part1_pass},
                            {"part1_counterexample", r.part1_counterexample ? Json(*r.part1_counterexample) : Json(nullptr)},
                            {"part2", r.part2_pass},
                            {"part2_first", r.part2_first},
                            {"part2_counterexample", r.part2_counterexample ? Json(*r.part2_counterexample) : Json(nullptr)}}));
    }
  }
  Json out = to_json(q);
  Json cuts = Json::array();
  for (const Integer& x : s.values()) cuts.push_back(to_json(x));
  out["cutting_times"] = std::move(cuts);
  run.artifact(out);
  return run.finish(opt);
}

OdometerPoint point_of(const std::vector<std::size_t>& support, std::optional<std::size_t> cylinder) {
  OdometerPoint p{support, cylinder};
  std::sort(p.support.begin(), p.support.end());
  return p;
}

int cmd_odometer(const std::string& action, const Options& opt) {
  Run run("odometer " + action);
  const KneadingMap q = map_from(run.load(opt.spec), opt.depth);
  const CuttingTimes s = cutting_times(q, q.depth());
  if (action == "expand") {
    const Integer n = require_n(opt);
    run.note_argument(n.get_str());
    const Expansion x = expand(n, q, s);
    const bool sum_ok = support_sum(x.support, s) == n;
    const auto why = omega_violation(q, x.support);
    run.check(record("expansion", "greedy expansion", sum_ok && !why,
                     Json{{"sum_matches", sum_ok}, {"omega_violation", why ? Json(*why) : Json(nullptr)}}));
    run.artifact(to_json(x));
  } else if (action == "step") {
    const Integer n = require_n(opt);
    run.note_argument(n.get_str());
    const Expansion x = expand(n, q, s);
    const Expansion y = step(x, q, s);
    run.check(record("step", "add one with carry", y.n == n + 1 && y == expand(n + 1, q, s),
                     Json{{"from", to_json(x)}, {"to", to_json(y)}}));
    run.artifact(Json{{"from", to_json(x)}, {"to", to_json(y)}});
  } else {
    if (opt.x.empty() && opt.x_prime.empty()) throw Error(ErrorKind::invalid_input, "--x and --x-prime are required");
    const OdometerPoint x = point_of(opt.x, opt.cylinder);
    const OdometerPoint xp = point_of(opt.x_prime, opt.cylinder);
    const std::size_t K = opt.k.value_or(0);
    run.note_argument(to_json(x).dump() + to_json(xp).dump() + std::to_string(K));
    const Separation sep = find_separating_time(x, xp, q, s, K, opt.search_bound.value_or(1u << 16));
    Json out{{"m", sep.m},
             {"m_prime", sep.m_prime},
             {"branch", sep.branch},
             {"q_x", sep.q_x},
             {"q_x_prime", sep.q_x_prime}};
    run.check(record("separation", "bounded separation search", true, out));
    run.artifact(out);
  }
  return run.finish(opt);
}

int cmd_bratteli(const std::string& action, const Options& opt) {
  Run run("bratteli " + action);
  const Json j = run.load(opt.spec);
  if (!opt.depth) throw Error(ErrorKind::invalid_input, "--depth is required");
  const std::size_t J = *opt.depth;
  run.note_argument(std::to_string(J));
  const KneadingMap q = map_from(j, std::nullopt);
  const BratteliDiagram d = build_diagram(q, J);
  if (j.contains("q")) {
    const auto why = aq_vertex_set_mismatch(d, io::aq_spec_from(j));
    run.check(record("vertex-sets", "closed-form vertex sets", !why,
                     Json{{"mismatch", why ? Json(*why) : Json(nullptr)}}));
  }
  if (action == "build") {
    Json levels = Json::array();
    for (std::size_t l = 0; l <= J; ++l) {
      Json edges = Json::array();
      if (l > 0) {
        for (const Edge& e : d.edges[l]) edges.push_back(Json::array({e.source, e.target, e.rank}));
      }
      levels.push_back(Json{{"j", l}, {"vertices", d.levels[l]}, {"edges", edges}});
    }
    run.artifact(Json{{"depth", J}, {"levels", levels}});
  } else if (action == "counts") {
    Json out = Json::array();
    for (std::size_t l = 0; l <= J; ++l) {
      const PathCounts pc = path_counts(d, l);
      Json counts = Json::object();
      for (std::size_t i = 0; i < pc.vertices.size(); ++i) counts[std::to_string(pc.vertices[i])] = to_json(pc.counts[i]);
      out.push_back(Json{{"j", l}, {"counts", counts}});
    }
    run.check(record("path-counts", "path count recurrence", true));
    run.artifact(out);
  } else if (action == "matrices") {
    const std::size_t l = opt.level.value_or(J);
    const TransitionMatrices tm = transition_matrices(d, l);
    const auto why = stochastic_violation(tm.M);
    run.check(record("stochastic", "column-stochastic transition matrix", !why,
                     Json{{"level", l}, {"violation", why ? Json(*why) : Json(nullptr)}}));
    run.artifact(io::to_csv(tm.M));
  } else {
    run.artifact(to_dot(d));
  }
  return run.finish(opt);
}

int cmd_tower(const std::string& action, const Options& opt) {
  Run run("tower " + action);
  const Tower a = io::tower_from(run.load(opt.spec));
  if (action == "normalize") {
    const NormalizedTower nt = normalize_tower(a);
    run.check(checks::check_normalization(a));
    Json out = to_json(nt.tower);
    Json sig = Json::array();
    for (const auto& s : nt.sigma) sig.push_back(s);
    out["sigma"] = sig;
    run.artifact(out);
    return run.finish(opt);
  }
  const Tower b = io::tower_from(run.load(opt.other));
  if (action == "distance") {
    Json ds = Json::array();
    const std::size_t L = std::min(a.levels(), b.levels());
    for (std::size_t n = 1; n <= L; ++n) ds.push_back(to_json(column_distance(a.at(n), b.at(n))));
    run.check(record("distance", "column distance", true, Json{{"levels", L}}));
    run.artifact(Json{{"column_distances", ds}});
    return run.finish(opt);
  }
  const std::size_t n = opt.level.value_or(1);
  const std::size_t m = opt.m.value_or(std::min(a.levels(), b.levels()));
  RationalVector x;
  for (std::size_t i = 0; i < opt.vector.size(); ++i) x.push_back(parse_rational(opt.vector[i]));
  if (x.empty()) {
    x.assign(m + 2, Rational(0));
    x[0] = 1;
  }
  run.note_argument(std::to_string(n) + "," + std::to_string(m) + to_json(x).dump());
  const ConjugacyEstimate est = conjugacy_estimate(a, b, n, m, x);
  Json out{{"x_n", to_json(est.x_n)},
           {"x_nm", to_json(est.x_nm)},
           {"deviation", to_json(est.deviation)},
           {"bound", to_json(est.bound)}};
  run.check(record("equivalence", "inverse limit equivalence bound", est.deviation <= est.bound, out));
  run.artifact(out);
  return run.finish(opt);
}

int cmd_realize(const Options& opt) {
  Run run("realize");
  TargetColumns t = io::targets_from(run.load(opt.targets.empty() ? opt.spec : opt.targets));
  if (opt.levels > 0) {
    if (opt.levels > t.y.size()) throw Error(ErrorKind::invalid_targets, "fewer target columns than --levels");
    t.y.resize(opt.levels);
  }
  const Integer q1 = parse_integer(opt.q1);
  run.note_argument(q1.get_str() + "," + std::to_string(t.y.size()));
  run.check(checks::check_realization(t, q1));
  run.artifact(to_json(approximate_targets(t, q1).spec));
  return run.finish(opt);
}

int cmd_verify(const std::string& criterion, const Options& opt) {
  Run run("verify " + criterion);
  const bool known = std::any_of(checks::criteria().begin(), checks::criteria().end(),
                                 [&](const checks::Criterion& c) { return c.id == criterion; });
  if (!known) throw Error(ErrorKind::invalid_input, "unknown criterion \"" + criterion + "\"");
  const bool single = !opt.spec.empty() || !opt.targets.empty();
  if (!single) {
    run.note_argument("seed=" + std::to_string(opt.seed));
    for (CheckRecord& r : checks::run_suite(criterion, opt.seed)) run.check(std::move(r));
    return run.finish(opt);
  }
  auto need = [](const auto& v, const char* flag) {
    if (!v) throw Error(ErrorKind::invalid_input, std::string(flag) + " is required");
    return *v;
  };
  if (criterion == "full-block" || criterion == "proof-matrices") {
    const AqSpec spec = io::aq_spec_from(run.load(opt.spec));
    const std::size_t n = to_size(require_n(opt));
    run.note_argument(std::to_string(n));
    if (criterion == "proof-matrices") {
      run.check(checks::check_proof_matrices(spec, n));
    } else if (!opt.against.empty()) {
      const Json claimed = run.load(opt.against);
      run.check(checks::check_full_block_against(
          spec, n, io::matrix_from(claimed.contains("matrix") ? claimed["matrix"] : claimed, "matrix")));
    } else {
      run.check(checks::check_full_block(spec, n));
    }
  } else if (criterion == "path-counts" || criterion == "vershik") {
    const KneadingMap q = map_from(run.load(opt.spec), std::nullopt);
    const std::size_t J = need(opt.depth, "--depth");
    run.note_argument(std::to_string(J));
    run.check(criterion == "vershik" ? checks::check_vershik(q, J) : checks::check_path_counts(q, J));
  } else if (criterion == "realization") {
    const TargetColumns t = io::targets_from(run.load(opt.targets.empty() ? opt.spec : opt.targets));
    run.note_argument(opt.q1);
    run.check(checks::check_realization(t, parse_integer(opt.q1)));
  } else if (criterion == "odometer") {
    const KneadingMap q = map_from(run.load(opt.spec), opt.depth);
    const std::size_t below = opt.n ? to_size(parse_integer(*opt.n)) : 4096;
    const std::size_t steps = opt.steps.value_or(below);
    run.note_argument(std::to_string(below) + "," + std::to_string(steps));
    run.check(checks::check_odometer(opt.spec, q, below, steps));
  } else if (criterion == "equivalence") {
    const Tower a = io::tower_from(run.load(opt.spec));
    const Tower b = io::tower_from(run.load(opt.other));
    const std::size_t n = opt.level.value_or(1);
    const std::size_t m = opt.m.value_or(std::min(a.levels(), b.levels()));
    RationalVector x;
    for (const auto& s : opt.vector) x.push_back(parse_rational(s));
    if (x.empty()) {
      x.assign(m + 2, Rational(0));
      x[0] = 1;
    }
    run.note_argument(std::to_string(n) + "," + std::to_string(m) + to_json(x).dump());
    run.check(checks::check_equivalence(a, b, n, m, x));
  } else if (criterion == "cf") {
    const CfSpec spec = io::cf_spec_from(run.load(opt.spec));
    const std::size_t n = opt.n ? to_size(parse_integer(*opt.n)) : spec.a.size() - 1;
    run.note_argument(std::to_string(n));
    run.check(checks::check_cf(spec, n));
  } else if (criterion == "tent") {
    const KneadingMap q = map_from(run.load(opt.spec), std::nullopt);
    const std::size_t K = opt.k.value_or(q.depth());
    run.note_argument(std::to_string(K));
    run.check(checks::check_tent_fit(q, K, opt.max_iter.value_or(200)));
  } else {
    run.check(checks::check_normalization(io::tower_from(run.load(opt.spec))));
  }
  return run.finish(opt);
}

int cmd_tent(const std::string& action, const Options& opt) {
  Run run("tent " + action);
  if (action == "cuttings") {
    if (opt.slope.empty()) throw Error(ErrorKind::invalid_input, "--slope is required");
    const Rational slope = parse_rational(opt.slope);
    const std::size_t N = opt.n ? to_size(parse_integer(*opt.n)) : 40;
    run.note_argument(to_string(slope) + "," + std::to_string(N));
    const CuttingTimeRun r = cutting_times_tent(slope, N);
    Json chain = Json::array();
    for (const ClosedInterval& d : r.chain) chain.push_back(Json::array({to_json(d.lo), to_json(d.hi)}));
    Json out{{"slope", to_json(slope)}, {"N", N}, {"cutting_times", r.cutting_times}, {"chain", chain}};
    // The kneading prefix is consistent when each difference is an earlier cutting time.
    const std::size_t K = r.cutting_times.empty() ? 0 : r.cutting_times.size() - 1;
    try {
      out["Q"] = kneading_prefix(slope, K).values();
      run.check(record("tent", "tent map cutting times", true, Json{{"K", K}}));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::inconsistent_differences) throw;
      run.check(record("tent", "tent map cutting times", false, Json{{"error", e.what()}}));
    }
    run.artifact(out);
    return run.finish(opt);
  }
  const KneadingMap q = map_from(run.load(opt.spec), std::nullopt);
  const std::size_t K = opt.k.value_or(q.depth());
  const std::size_t iters = opt.max_iter.value_or(200);
  run.note_argument(std::to_string(K) + "," + std::to_string(iters));
  const SlopeFit fit = fit_slope(q, K, iters);
  Json out{{"lo", to_json(fit.lo)},
           {"hi", to_json(fit.hi)},
           {"mid", to_json(fit.mid)},
           {"matched", fit.matched},
           {"iterations", fit.iterations},
           {"mismatch_index", fit.mismatch_index ? Json(*fit.mismatch_index) : Json(nullptr)},
           {"diagnostics", fit.diagnostics}};
  run.check(record("tent", "tent map cutting times", fit.matched, out));
  run.artifact(out);
  return run.finish(opt);
}

int cmd_cf(const Options& opt) {
  Run run("cf");
  CfSpec spec;
  if (!opt.spec.empty()) {
    spec = io::cf_spec_from(run.load(opt.spec));
  } else {
    spec.k = opt.k.value_or(2);
    spec.a = opt.a;
    validate(spec);
    run.note_argument(to_json(spec).dump());
  }
  const std::size_t levels = opt.levels > 0 ? std::min(opt.levels, spec.a.size()) : spec.a.size();
  const ContinuantProducts cp = continuant_products(spec, levels);
  Json factors = Json::array(), cumulative = Json::array(), convergents = Json::array(), blocks = Json::array();
  for (const auto& f : cp.factors) factors.push_back(to_json(f));
  for (const auto& c : cp.cumulative) cumulative.push_back(to_json(c));
  for (const auto& c : cp.convergents) {
    convergents.push_back(Json{{"n", c.n},
                               {"p", to_json(c.p)},
                               {"q", to_json(c.q)},
                               {"value", to_json(c.value)},
                               {"error_bound", to_json(c.error_bound)}});
  }
  bool blocks_ok = true;
  for (std::size_t n = 1; n <= levels; ++n) {
    const IntegerMatrix b = cf_block_incidence(spec, n);
    const bool ok = b.rows() == 2 && b.cols() == 2 && b(0, 0) == Integer(static_cast<unsigned long>(spec.a[n - 1])) &&
                    b(0, 1) == 1 && b(1, 0) == 1 && b(1, 1) == 0;
    blocks_ok = blocks_ok && ok;
    blocks.push_back(Json{{"n", n}, {"matrix", to_json(b)}, {"matches_continuant_factor", ok}});
  }
  run.check(record("cf-blocks", "continued fraction block incidence", blocks_ok));
  if (levels >= 1 && levels < spec.a.size()) run.check(checks::check_cf(spec, levels));
  run.artifact(Json{{"spec", to_json(spec)},
                    {"factors", factors},
                    {"cumulative", cumulative},
                    {"convergents", convergents},
                    {"block_incidence", blocks}});
  return run.finish(opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact kneading-map, odometer and Bratteli-Vershik toolkit", "kneadlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--spec", opt.spec, "input JSON (AQSpec, kneading table, CF spec or tower)");
  app.add_option("--depth", opt.depth, "truncation depth or diagram depth");
  app.add_option("--out", opt.out, "artifact output path");
  app.add_option("--report", opt.report, "run report output path");
  app.add_flag("--force", opt.force, "write artifacts even when a check fails");
  app.add_option("--seed", opt.seed, "seed for fuzz suites");
  app.add_option("--n", opt.n, "integer argument (n, block index, bound)");
  app.add_option("--k", opt.k, "K, or the CF parameter k");
  app.add_option("--m", opt.m, "upper level for tower estimates");
  app.add_option("--level", opt.level, "level index");
  app.add_option("--steps", opt.steps, "step checks below this bound");
  app.add_option("--search-bound", opt.search_bound, "separation search bound");
  app.add_option("--max-iter", opt.max_iter, "bisection step limit");
  app.add_option("--cylinder", opt.cylinder, "treat --x/--x-prime as cylinders of this depth");
  app.add_option("--slope", opt.slope, "tent slope p/q");
  app.add_option("--other", opt.other, "second tower JSON");
  app.add_option("--targets", opt.targets, "target columns JSON");
  app.add_option("--against", opt.against, "claimed matrix JSON");
  app.add_option("--q1", opt.q1, "q_1 for realize");
  app.add_option("--levels", opt.levels, "number of levels");
  app.add_option("--a", opt.a, "partial quotients")->delimiter(',');
  app.add_option("--x", opt.x, "support of x")->delimiter(',');
  app.add_option("--x-prime", opt.x_prime, "support of x'")->delimiter(',');
  app.add_option("--vector", opt.vector, "top-level vector entries p/q")->delimiter(',');

  std::string action;
  std::string criterion;
  auto* kneading = app.add_subcommand("kneading", "kneading map, cutting times and admissibility");
  auto* odometer = app.add_subcommand("odometer", "expand, step and separate odometer points");
  odometer->add_option("action", action)->required()->check(CLI::IsMember({"expand", "step", "separate"}));
  auto* bratteli = app.add_subcommand("bratteli", "ordered Bratteli diagram of Q");
  bratteli->add_option("action", action)->required()->check(CLI::IsMember({"build", "counts", "matrices", "dot"}));
  auto* tower = app.add_subcommand("tower", "tower normalization and equivalence estimates");
  tower->add_option("action", action)->required()->check(CLI::IsMember({"normalize", "distance", "conjugacy"}));
  auto* realize = app.add_subcommand("realize", "approximate target columns by an AQSpec");
  auto* verify = app.add_subcommand("verify", "run an acceptance check");
  verify->add_option("criterion", criterion)->required();
  auto* tent = app.add_subcommand("tent", "tent map cutting times and slope fitting");
  tent->add_option("action", action)->required()->check(CLI::IsMember({"cuttings", "fit"}));
  auto* cf = app.add_subcommand("cf", "continued-fraction example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (kneading->parsed()) return cmd_kneading(opt);
    if (odometer->parsed()) return cmd_odometer(action, opt);
    if (bratteli->parsed()) return cmd_bratteli(action, opt);
    if (tower->parsed()) return cmd_tower(action, opt);
    if (realize->parsed()) return cmd_realize(opt);
    if (verify->parsed()) return cmd_verify(criterion, opt);
    if (tent->parsed()) return cmd_tent(action, opt);
    if (cf->parsed()) return cmd_cf(opt);
  } catch (const Error& e) {
    std::cerr << "kneadlab: " << e.what() << '\n';
    const bool failed_check = e.kind() == ErrorKind::internal || e.kind() == ErrorKind::cycle_detected;
    return failed_check ? kExitCheckFailure : kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "kneadlab: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
