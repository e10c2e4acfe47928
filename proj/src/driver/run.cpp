#include <algorithm>
#include <fstream>
#include <set>

#include "qice/chc/chc_io.hpp"
#include "qice/driver/driver.hpp"
#include "qice/frontend/frontend.hpp"
#include "qice/logic/errors.hpp"
#include "qice/logic/term_io.hpp"
#include "qice/teacher/smtlib.hpp"

namespace qice {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

// Reads of an array at an index free of the quantified variables.
void fixed_reads(const Term& t, const std::vector<std::string>& bound, std::map<Term, std::set<Term>>& out) {
  if (t.is(Op::Read)) {
    bool fixed = true;
    for (const auto& [name, _] : free_vars(t.arg(1)))
      fixed = fixed && std::find(bound.begin(), bound.end(), name) == bound.end();
    if (fixed) out[t.arg(0)].insert(t.arg(1));
  }
  for (const auto& a : t.args()) fixed_reads(a, bound, out);
}

// Each quantified variable of an array needs a diagram index, and so does
// each fixed-index read of the array inside the quantified body (a[res]).
void count_quantifiers(const Term& t, int& best) {
  if (t.is(Op::Forall)) {
    std::map<Term, int> per_array;
    for (std::size_t i = 0; i + 1 < t.args().size(); ++i) ++per_array[t.arg(i)];
    std::map<Term, std::set<Term>> reads;
    fixed_reads(t.body(), t.bound(), reads);
    for (auto& [arr, n] : per_array) best = std::max(best, n + static_cast<int>(reads[arr].size()));
  }
  for (const auto& a : t.args()) count_quantifiers(a, best);
}

}  // namespace

int initial_quantifiers(const ChcSystem& sys) {
  int best = 1;
  for (const auto& c : sys.clauses) count_quantifiers(c.constraint, best);
  return best;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Safe:
      return "safe";
    case Verdict::Unsat:
      return "unsat";
    case Verdict::Unknown:
      return "unknown";
    case Verdict::Budget:
      return "budget";
  }
  return "unknown";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Safe:
      return 0;
    case Verdict::Unsat:
      return 1;
    default:
      return 2;
  }
}

void RunConfig::validate() const {
  if (!source && input.empty()) throw Error("no input given");
  if (initial_n < 0) throw Error("initial n must be positive (or 0 for automatic)");
  if (max_n < std::max(initial_n, 1)) throw Error("max n must be at least the initial n");
  if (max_k < 1) throw Error("max constant must be positive");
  if (max_iterations < 1) throw Error("max iterations must be positive");
  if (timeout <= 0) throw Error("timeout must be positive");
  if (solver.timeout <= 0) throw Error("solver timeout must be positive");
  if (solver.min_array_len != 0 && solver.min_array_len != 1) throw Error("min array length must be 0 or 1");
  if (solver.command.empty()) throw Error("empty solver command");
}

LoadedInput load_input(const RunConfig& cfg) {
  LoadedInput out;
  std::string where = cfg.source ? std::string("<input>") : cfg.input;
  try {
    if (cfg.kind == InputKind::Mini) {
      LoadedProgram p = cfg.source ? load_program(*cfg.source) : load_program_file(cfg.input);
      out.system = std::move(p.chc.system);
      out.patterns = std::move(p.patterns);
    } else {
      out.system = cfg.source ? load_chc(*cfg.source) : load_chc_file(cfg.input);
    }
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.line(), e.column());
  } catch (const SortError& e) {
    throw SortError(where + ": " + e.what());
  } catch (const UnsupportedError& e) {
    throw UnsupportedError(where + ": " + e.what());
  }
  return out;
}

RunReport run_system(const ChcSystem& sys, const std::vector<Pattern>& patterns, const RunConfig& cfg,
                     const std::function<void(const std::string&)>& trace) {
  auto log = [&](const std::string& line) {
    if (trace) trace(line);
  };
  auto start = Clock::now();
  RunReport rep;
  LearnerConfig lcfg;
  lcfg.initial_n = cfg.initial_n > 0 ? cfg.initial_n : std::min(initial_quantifiers(sys), cfg.max_n);
  lcfg.max_n = cfg.max_n;
  lcfg.max_k = cfg.max_k;
  lcfg.patterns = patterns;
  lcfg.trace = log;
  LearnerState state = LearnerState::initial(lcfg);
  Teacher teacher(sys, cfg.solver);
  Sample sample;

  auto finish = [&](Verdict v, std::string diag) {
    rep.verdict = v;
    rep.diagnostics = std::move(diag);
    rep.sample_points = sample.points().size();
    rep.sample_implications = sample.implications().size();
    rep.seconds = since(start);
    log("result " + verdict_name(v) + (rep.diagnostics.empty() ? "" : ": " + rep.diagnostics));
    return rep;
  };

  for (std::size_t it = 1;; ++it) {
    if (it > static_cast<std::size_t>(cfg.max_iterations))
      return finish(Verdict::Budget, "iteration limit " + std::to_string(cfg.max_iterations) + " reached");
    if (since(start) > cfg.timeout)
      return finish(Verdict::Unknown, "global timeout of " + std::to_string(cfg.timeout) + " s reached");
    rep.iterations = it;
    IterationRecord rec;
    rec.index = it;
    log("iteration " + std::to_string(it));

    auto t0 = Clock::now();
    Solution j;
    try {
      j = learn(sys, sample, state, lcfg);
    } catch (const BudgetError& e) {
      return finish(Verdict::Budget, e.what());
    }
    rec.learn_seconds = since(t0);
    rep.learn_seconds += rec.learn_seconds;
    rec.n = state.n;
    rec.k = state.k;
    rep.max_n = std::max(rep.max_n, state.n);
    rep.max_k = std::max(rep.max_k, state.k);
    for (const auto& [p, prop] : j) {
      rec.candidate[p] = property_to_string(prop);
      log("candidate " + p + " := " + rec.candidate[p]);
    }

    t0 = Clock::now();
    CheckResult r = teacher.find_counterexample(j);
    rec.teach_seconds = since(t0);
    rep.teach_seconds += rec.teach_seconds;

    if (r.is_valid()) {
      rep.records.push_back(rec);
      rep.solution = j;
      for (const auto& [p, prop] : j) rep.fragment[p] = check_fragment(prop);
      return finish(Verdict::Safe, "");
    }
    if (r.is_unknown()) {
      rec.clause = r.clause;
      rep.records.push_back(rec);
      return finish(Verdict::Unknown, "clause " + std::to_string(r.clause) + ": " + r.reason);
    }
    rec.clause = r.clause;
    rec.counterexample = r.implication->to_string();
    log("counterexample clause " + std::to_string(r.clause) +
        (r.bound ? " bound " + std::to_string(*r.bound) : std::string(" unbounded")) + ": " + rec.counterexample);
    rep.records.push_back(rec);
    sample.add_counterexample(*r.implication);
    if (!sample.is_consistent()) return finish(Verdict::Unsat, sample.explain_inconsistency());
  }
}

RunReport run(const RunConfig& cfg) {
  cfg.validate();
  LoadedInput in = load_input(cfg);
  if (!cfg.export_path.empty()) write_file(cfg.export_path, export_horn(in.system));
  std::ofstream trace_file;
  if (!cfg.trace_path.empty()) {
    trace_file.open(cfg.trace_path);
    if (!trace_file) throw Error("cannot write " + cfg.trace_path);
  }
  std::function<void(const std::string&)> trace;
  if (trace_file.is_open()) trace = [&](const std::string& line) { trace_file << line << '\n' << std::flush; };
  RunReport rep = run_system(in.system, in.patterns, cfg, trace);
  if (!cfg.report_path.empty()) write_file(cfg.report_path, rep.to_json());
  return rep;
}

void export_smtlib(const RunConfig& cfg) {
  if (cfg.export_path.empty()) throw Error("no export path given");
  LoadedInput in = load_input(cfg);
  write_file(cfg.export_path, export_horn(in.system));
}

}  // namespace qice
