#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qice/sample/sample.hpp"
#include "qice/teacher/smtlib.hpp"
#include "qice/teacher/solver.hpp"

namespace qice {

struct SolverConfig {
  std::vector<std::string> command{"z3", "-in", "-smt2"};
  double timeout = 20;  // seconds per query
  /// Limit for the first unbounded check of a clause; it is repeated with the
  /// full timeout only when the bounded search finds nothing.
  double probe_timeout = 2;
  int max_bound = 10;   // L_max
  int min_array_len = 1;
  /// Longest array accepted from an unbounded model; longer models are
  /// retried with doubling bounds up to this length.
  int max_model_len = 64;
  /// Bounded searches also restrict integers to [-L, L].
  bool bound_values = true;
};

struct CheckResult {
  enum class Kind : std::uint8_t { Valid, Counterexample, Unknown };
  Kind kind = Kind::Valid;
  std::optional<HornImplication> implication;
  std::size_t clause = 0;
  std::optional<int> bound;  // L of the bounded query that produced it
  std::string reason;

  static CheckResult valid() { return {}; }
  bool is_valid() const { return kind == Kind::Valid; }
  bool is_counterexample() const { return kind == Kind::Counterexample; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

class Teacher {
 public:
  Teacher(const ChcSystem& sys, SolverConfig cfg);

  /// Is clause `index` valid under `j`? With a bound L every array variable of
  /// the clause has length in [min_array_len, L]; without one only the lower
  /// bound applies.
  CheckResult check_clause(std::size_t index, const Solution& j, std::optional<int> bound, double timeout = 0);

  /// Clauses in declared order. Each is first checked without a bound; a
  /// clause that is not valid is searched with L = 1..L_max for the smallest
  /// counterexample, then the unbounded model is used. The first unbounded
  /// check uses probe_timeout.
  CheckResult find_counterexample(const Solution& j);

  /// The negated clause as an SMT-LIB script (declarations and assertions).
  std::string query(std::size_t index, const Solution& j, std::optional<int> bound) const;

  const SolverProcess& solver() const { return solver_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  CheckResult decode(std::size_t index, const Solution& j, const Encoded& enc, std::optional<int> bound);

  const ChcSystem& sys_;
  SolverConfig cfg_;
  SolverProcess solver_;
};

}  // namespace qice
