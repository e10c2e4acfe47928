// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Time limits are wall-clock and fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "../common/bounded_solve.hpp"
#include "../common/bubble_samples.hpp"
#include "../common/diagram_oracles.hpp"
#include "../common/fixtures.hpp"
#include "../common/random_samples.hpp"
#include "../common/random_terms.hpp"
#include "../common/solver.hpp"
#include "qice/diagram/diagram.hpp"
#include "qice/driver/driver.hpp"
#include "qice/learner/learner.hpp"
#include "qice/logic/eval.hpp"
#include "qice/logic/fragment.hpp"

using namespace qice;
using namespace qice::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// Limits in seconds.
constexpr double kDiagramLimit = 0.001;
constexpr double kInconsistencyLimit = 0.010;
constexpr double kSoundnessLimit = 60;
constexpr double kCompletenessLimit = 60;
constexpr double kClosureLimit = 120;
constexpr double kEncodingLimit = 300;
constexpr double kBubbleLimit = 300;
constexpr double kToyLimit = 120;
constexpr double kTwoPointerLimit = 300;
constexpr std::size_t kUnsafeIterations = 50;

constexpr int kSoundnessSamples = 500;
constexpr int kCompletenessSamples = 500;
constexpr int kClosureSamples = 1000;
constexpr std::size_t kClosureMaxPoints = 12;
constexpr int kEncodingFormulas = 100;

int failures = 0;

void report(int id, const std::string& title, double seconds, double limit, Outcome o) {
  if (seconds > limit) o.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(limit) + " s");
  if (!o.ok) ++failures;
  char time[32];
  if (seconds < 1)
    std::snprintf(time, sizeof time, "%.3f ms", seconds * 1000);
  else
    std::snprintf(time, sizeof time, "%.1f s", seconds);
  std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " (" << time << ")";
  if (!o.detail.empty()) std::cout << " - " << o.detail;
  std::cout << std::endl;
}

// Each check returns its outcome and the time spent on the measured part.
using Check = std::function<Outcome(double&)>;

void criterion(int id, const std::string& title, double limit, const Check& check) {
  double seconds = 0;
  Outcome o;
  try {
    o = check(seconds);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  report(id, title, seconds, limit, o);
}

Diagram i0_diagram(long n, bool s, long k1, long k2, long v1, long v2, long len) {
  return {"I0", {n, s ? 1 : 0, k1, k2, v1, v2, len}};
}

Outcome diagram_fixture(double& seconds) {
  Outcome o;
  auto qs = QuantifierScheme::build(bubble_system_cached(), 2);
  const DataPoint x = i0(2, {1, 0}, false);
  const std::vector<Diagram> expect{i0_diagram(2, false, 0, 0, 1, 1, 2), i0_diagram(2, false, 0, 1, 1, 0, 2),
                                    i0_diagram(2, false, 1, 0, 0, 1, 2), i0_diagram(2, false, 1, 1, 0, 0, 2)};
  auto t = Clock::now();
  auto unordered = diagrams_of(x, qs, false);
  auto ordered = diagrams_of(x, qs, true);
  seconds = since(t);
  if (unordered != expect) o.fail("unordered diagrams differ");
  if (ordered != std::vector<Diagram>{expect[0], expect[1], expect[3]}) o.fail("ordered diagrams differ");
  return o;
}

Outcome inconsistency_fixture(double& seconds) {
  Outcome o;
  const Sample s = two_chain_sample();
  auto q1 = QuantifierScheme::build(bubble_system_cached(), 1);
  auto q2 = QuantifierScheme::build(bubble_system_cached(), 2);
  auto t = Clock::now();
  const bool data = s.is_consistent();
  const bool n1 = diagramize(s, q1, false).is_consistent();
  const bool n2 = diagramize(s, q2, false).is_consistent();
  seconds = since(t);
  if (!data) o.fail("data sample inconsistent");
  if (n1) o.fail("n=1 diagram sample consistent");
  if (!n2) o.fail("n=2 diagram sample inconsistent");
  return o;
}

Outcome soundness_suite(double& seconds) {
  Outcome o;
  SampleGen gen(1001);
  int bad = 0;
  auto t = Clock::now();
  for (int round = 0; round < kSoundnessSamples; ++round) {
    Sample s = gen.sample(8, true);
    LearnerConfig cfg;
    cfg.ordered = round % 2 == 0;
    LearnerState st = LearnerState::initial(cfg);
    if (!satisfies(s, learn(gen.system(), s, st, cfg))) ++bad;
  }
  seconds = since(t);
  if (bad) o.fail(std::to_string(bad) + " learned solutions violate their sample");
  o.detail = o.ok ? std::to_string(kSoundnessSamples) + " samples" : o.detail;
  return o;
}

Outcome completeness_suite(double& seconds) {
  Outcome o;
  SampleGen gen(2002);
  int bad = 0;
  auto t = Clock::now();
  for (int round = 0; round < kCompletenessSamples; ++round) {
    Sample s = gen.sample(8, true);
    const bool ordered = round % 2 == 0;
    auto qs = QuantifierScheme::build(gen.system(), static_cast<int>(max_array_length(s)));
    auto ds = diagramize(s, qs, ordered);
    auto label = complete_diagram_witness(s, ds, qs, ordered, s.propagate().pos);
    if (!ds.is_consistent() || !labeling_satisfies(label, ds.constraints)) ++bad;
  }
  seconds = since(t);
  if (bad) o.fail(std::to_string(bad) + " samples without a consistent diagram sample or witness");
  o.detail = o.ok ? std::to_string(kCompletenessSamples) + " samples" : o.detail;
  return o;
}

Outcome closure_oracle(double& seconds) {
  Outcome o;
  std::mt19937_64 rng(3003);
  int bad = 0;
  auto t = Clock::now();
  for (int round = 0; round < kClosureSamples; ++round) {
    const std::size_t n = 1 + rng() % kClosureMaxPoints;
    auto cs = random_constraints(rng, n);
    auto c = horn_closure(n, cs);
    auto bf = brute_force(n, cs);
    auto [npos, nneg] = naive_closure(n, cs);
    bool ok = c.consistent == bf.consistent && c.pos == npos && c.neg == nneg;
    if (ok && c.consistent) {
      ok = c.pos == bf.always_true && forced_negative(n, cs) == bf.always_false;
      for (std::size_t i = 0; i < n; ++i) ok = ok && (!c.neg[i] || bf.always_false[i]);
    }
    if (!ok) ++bad;
  }
  seconds = since(t);
  if (bad) o.fail(std::to_string(bad) + " mismatches");
  o.detail = o.ok ? std::to_string(kClosureSamples) + " samples" : o.detail;
  return o;
}

Outcome encoding_equivalence(double& seconds) {
  Outcome o;
  SolverProcess solver(test_solver_config().command, 20);
  TermGen gen(4004);
  int sat = 0, bad = 0;
  auto t = Clock::now();
  for (int round = 0; round < kEncodingFormulas; ++round) {
    Term f = gen.bool_term(3);
    SortEnv fv = free_vars(f);
    const bool brute = enumerate_envs(fv, -2, 2, 3, [&](const Valuation& v) { return eval_bool(f, v); });
    auto model = solve_bounded(solver, f, fv, 3, 2);
    if (brute != model.has_value() || (model && !eval_bool(f, *model))) ++bad;
    if (model) ++sat;
  }
  seconds = since(t);
  if (bad) o.fail(std::to_string(bad) + " disagreements");
  o.detail = o.ok ? std::to_string(sat) + " sat, " + std::to_string(kEncodingFormulas - sat) + " unsat" : o.detail;
  return o;
}

RunConfig bench(const std::string& name) {
  RunConfig cfg;
  cfg.input = source_path("benchmarks/" + name + ".mc");
  cfg.solver = test_solver_config();
  cfg.max_iterations = 500;
  return cfg;
}

// Invariants emitted by criteria 7 and 8, for criterion 10.
std::vector<std::pair<std::string, QuantifiedProperty>> emitted;

void collect(const std::string& bench, const RunReport& r) {
  for (const auto& [pred, p] : r.solution) emitted.emplace_back(bench + "/" + pred, p);
}

// Are learned and reference mutually implied under ctx? Checked as the two
// clauses L /\ ctx => R and R /\ ctx => L of an auxiliary system.
bool equivalent_under(const PredicateSig& sig, const QuantifiedProperty& learned, const QuantifiedProperty& reference,
                      const Term& ctx, std::string& why) {
  ChcSystem eq;
  eq.predicates.push_back({"L", sig.params});
  eq.predicates.push_back({"R", sig.params});
  std::vector<Term> args;
  for (std::size_t i = 0; i < sig.arity(); ++i) args.push_back(sig.param_var(i));
  eq.clauses.push_back({sig.params, {{"L", args}}, ctx, Application{"R", args}});
  eq.clauses.push_back({sig.params, {{"R", args}}, ctx, Application{"L", args}});
  SolverConfig cfg = test_solver_config();
  cfg.min_array_len = 0;
  Teacher t(eq, cfg);
  Solution j{{"L", learned}, {"R", reference}};
  for (std::size_t i = 0; i < 2; ++i) {
    CheckResult r = t.check_clause(i, j, std::nullopt);
    if (!r.is_valid()) {
      why = sig.name + (i == 0 ? ": learned does not imply reference" : ": reference does not imply learned");
      if (r.is_unknown()) why += " (" + r.reason + ")";
      return false;
    }
  }
  return true;
}

Outcome bubble_sort_end_to_end(double& seconds) {
  Outcome o;
  RunConfig cfg = bench("bubble_sort");
  LoadedInput in = load_input(cfg);
  auto t = Clock::now();
  RunReport r = run_system(in.system, in.patterns, cfg);
  seconds = since(t);
  collect("bubble_sort", r);
  if (r.verdict != Verdict::Safe) {
    o.fail("verdict " + verdict_name(r.verdict) + ": " + r.diagnostics);
    return o;
  }
  if (r.max_n > 2) o.fail("used " + std::to_string(r.max_n) + " quantifiers per array");
  Teacher recheck(in.system, cfg.solver);
  if (!recheck.find_counterexample(r.solution).is_valid()) o.fail("teacher re-check is not Valid");

  // Reachable-state context: N >= 1 and |a| = N at both loop heads, i >= 1
  // inside. It must itself be inductive for the program's clauses.
  const ChcSystem& sys = in.system;
  Solution ctx;
  ctx["I0"] = QuantifiedProperty::quantifier_free(parse_term("(and (<= 1 N) (= (len a) N))", sys.sig("I0").sort_env()));
  ctx["I1"] =
      QuantifiedProperty::quantifier_free(parse_term("(and (<= 1 N) (= (len a) N) (<= 1 i))", sys.sig("I1").sort_env()));
  Teacher ct(sys, cfg.solver);
  for (std::size_t i = 0; i < sys.clauses.size(); ++i)
    if (sys.clauses[i].head && !ct.check_clause(i, ctx, std::nullopt).is_valid())
      o.fail("reachability context not inductive at clause " + std::to_string(i));

  const Solution ref = bubble_sort_invariants(false);
  for (const char* pred : {"I0", "I1"}) {
    std::string why;
    if (!equivalent_under(sys.sig(pred), r.solution.at(pred), ref.at(pred), ctx.at(pred).psi, why)) o.fail(why);
  }
  if (o.ok)
    o.detail = std::to_string(r.iterations) + " iterations, n=" + std::to_string(r.max_n) + ", I0 = " +
               r.solution.at("I0").to_string() + ", I1 = " + r.solution.at("I1").to_string();
  return o;
}

Outcome toy_suite(double& seconds) {
  Outcome o;
  std::ostringstream summary;
  for (const char* name :
       {"array_init", "array_copy", "array_max_fwd", "array_max_bwd", "find_first", "argmax", "two_pointer"}) {
    const double limit = std::string(name) == "two_pointer" ? kTwoPointerLimit : kToyLimit;
    RunConfig cfg = bench(name);
    LoadedInput in = load_input(cfg);
    auto t = Clock::now();
    RunReport r = run_system(in.system, in.patterns, cfg);
    const double s = since(t);
    seconds += s;
    collect(name, r);
    char line[96];
    std::snprintf(line, sizeof line, "%s %s %.1fs/%zu it", name, verdict_name(r.verdict).c_str(), s, r.iterations);
    summary << (summary.tellp() > 0 ? "; " : "") << line;
    if (r.verdict != Verdict::Safe) o.fail(std::string(name) + " returned " + verdict_name(r.verdict));
    if (s > limit) o.fail(std::string(name) + " exceeded " + std::to_string(static_cast<int>(limit)) + " s");
  }
  o.detail = o.ok ? summary.str() : o.detail + " [" + summary.str() + "]";
  return o;
}

Outcome unsafe_detection(double& seconds) {
  Outcome o;
  RunConfig cfg = bench("bubble_sort_unsafe");
  cfg.max_iterations = static_cast<int>(kUnsafeIterations);
  LoadedInput in = load_input(cfg);
  auto t = Clock::now();
  RunReport r = run_system(in.system, in.patterns, cfg);
  seconds = since(t);
  if (r.verdict != Verdict::Unsat) o.fail("verdict " + verdict_name(r.verdict));
  if (r.iterations > kUnsafeIterations) o.fail(std::to_string(r.iterations) + " iterations");
  if (r.diagnostics.find("in both S+ and S-") == std::string::npos) o.fail("no S+/S- overlap reported");
  if (o.ok) o.detail = std::to_string(r.iterations) + " iterations; " + r.diagnostics;
  return o;
}

Outcome fragment_conformance(double& seconds) {
  Outcome o;
  auto t = Clock::now();
  std::size_t checked = 0;
  for (const auto& [name, p] : emitted) {
    try {
      FragmentResult f = check_fragment(p);
      if (!f.ok) o.fail(name + ": " + f.diagnostic);
    } catch (const std::exception& e) {
      o.fail(name + " threw: " + e.what());
    }
    ++checked;
  }
  seconds = since(t);
  if (checked == 0) o.fail("no invariants to check");
  if (o.ok) o.detail = std::to_string(checked) + " invariants";
  return o;
}

}  // namespace

int main() {
  criterion(1, "diagram fixture", kDiagramLimit, diagram_fixture);
  criterion(2, "inconsistency fixture", kInconsistencyLimit, inconsistency_fixture);
  criterion(3, "learner output satisfies consistent samples", kSoundnessLimit, soundness_suite);
  criterion(4, "n = max array length gives a consistent diagram sample", kCompletenessLimit, completeness_suite);
  criterion(5, "Horn closure against brute force", kClosureLimit, closure_oracle);
  criterion(6, "encoding equivalence", kEncodingLimit, encoding_equivalence);
  criterion(7, "bubble sort end to end", kBubbleLimit, bubble_sort_end_to_end);
  // per-program limits are checked inside
  criterion(8, "toy suite", kToyLimit * 6 + kTwoPointerLimit, toy_suite);
  criterion(9, "unsafe bubble sort detected", kBubbleLimit, unsafe_detection);
  criterion(10, "fragment conformance of emitted invariants", kBubbleLimit, fragment_conformance);
  return failures == 0 ? 0 : 1;
}
