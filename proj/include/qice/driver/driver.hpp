#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qice/chc/system.hpp"
#include "qice/learner/learner.hpp"
#include "qice/logic/fragment.hpp"
#include "qice/logic/pattern.hpp"
#include "qice/teacher/teacher.hpp"

namespace qice {

enum class InputKind : std::uint8_t { Mini, Chc };

struct RunConfig {
  std::string input;  // path; ignored when `source` is set
  std::optional<std::string> source;  // inline program text (tests)
  InputKind kind = InputKind::Mini;
  SolverConfig solver;
  int initial_n = 0;  // 0: initial_quantifiers of the system
  int max_n = 4;
  int max_k = 32;
  int max_iterations = 500;
  double timeout = 1800;  // seconds for the whole run
  std::string report_path;
  std::string export_path;
  std::string trace_path;

  /// Throws Error naming the first bad field.
  void validate() const;
};

struct IterationRecord {
  std::size_t index = 0;  // 1-based
  int n = 0;
  int k = 0;
  std::map<std::string, std::string> candidate;  // predicate -> property
  std::string counterexample;                    // empty when valid
  std::optional<std::size_t> clause;
  double learn_seconds = 0;
  double teach_seconds = 0;
};

enum class Verdict : std::uint8_t { Safe, Unsat, Unknown, Budget };

std::string verdict_name(Verdict v);
int exit_code(Verdict v);

struct RunReport {
  Verdict verdict = Verdict::Unknown;
  Solution solution;  // Safe only
  std::map<std::string, FragmentResult> fragment;  // Safe only
  std::string diagnostics;  // Unsat overlap, Unknown/Budget reason
  std::vector<IterationRecord> records;
  std::size_t iterations = 0;
  int max_n = 0;  // largest quantifier count per array used
  int max_k = -1;  // -1: no constant families were needed
  std::size_t sample_points = 0;
  std::size_t sample_implications = 0;
  double seconds = 0;
  double learn_seconds = 0;
  double teach_seconds = 0;

  std::string to_text(const ChcSystem& sys) const;
  /// Fields: verdict, iterations, seconds, learn_seconds, teach_seconds,
  /// max_n, max_k, sample {points, implications}, diagnostics,
  /// solution {pred: property}, fragment {pred: {ok, diagnostic}},
  /// records [{index, n, k, candidate, counterexample, clause,
  /// learn_seconds, teach_seconds}].
  std::string to_json() const;
};

/// Largest number of quantified variables over one array in any clause
/// formula (at least 1); the default starting point for the learner.
int initial_quantifiers(const ChcSystem& sys);

struct LoadedInput {
  ChcSystem system;
  std::vector<Pattern> patterns;
};

/// Parses the input (mini program or CHC file). Parse, sort and I/O errors
/// propagate with context.
LoadedInput load_input(const RunConfig& cfg);

/// The Horn-ICE loop on a loaded system; `trace` receives one line per event.
RunReport run_system(const ChcSystem& sys, const std::vector<Pattern>& patterns, const RunConfig& cfg,
                     const std::function<void(const std::string&)>& trace = {});

/// Loads, optionally exports, runs and writes the report/trace files.
RunReport run(const RunConfig& cfg);

/// Writes the SMT-LIB HORN rendering of the input to cfg.export_path.
void export_smtlib(const RunConfig& cfg);

}  // namespace qice
