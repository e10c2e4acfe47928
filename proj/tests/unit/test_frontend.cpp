#include "doctest.h"

#include <algorithm>
#include <random>

#include "../common/fixtures.hpp"
#include "../common/solver.hpp"
#include "qice/frontend/frontend.hpp"
#include "qice/logic/errors.hpp"

using namespace qice;
using namespace qice::testing;

namespace {

LoadedProgram load_bench(const std::string& name) { return load_program_file(source_path("benchmarks/" + name + ".mc")); }

std::size_t clauses_of_kind(const ChcSystem& sys, ClauseKind k) {
  return static_cast<std::size_t>(
      std::count_if(sys.clauses.begin(), sys.clauses.end(), [&](const Clause& c) { return c.kind() == k; }));
}

bool has_pattern(const std::vector<Pattern>& ps, const std::string& atom) {
  return std::any_of(ps.begin(), ps.end(), [&](const Pattern& p) { return p.to_string() == atom; });
}

// Values in [-2,2], arrays of length <= 3 and mostly of length N, so that
// clause bodies are satisfied often enough to matter.
Valuation random_env(const Clause& c, std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Valuation env;
  long long n = pick(1, 3);
  for (const auto& [name, sort] : c.vars) {
    if (sort.is_bool()) env[name] = Value::of_bool(pick(0, 1) == 1);
    else if (sort.is_int()) env[name] = Value::of_int(name == "N" ? n : pick(-2, 2));
  }
  for (const auto& [name, sort] : c.vars) {
    if (!sort.is_array()) continue;
    std::size_t len = pick(0, 4) == 0 ? static_cast<std::size_t>(pick(0, 3)) : static_cast<std::size_t>(n);
    std::vector<BigInt> cells;
    for (std::size_t k = 0; k < len; ++k) cells.emplace_back(pick(-2, 2));
    env[name] = Value::of_array(sort.element(), std::move(cells));
  }
  return env;
}

}  // namespace

TEST_SUITE("frontend") {

TEST_CASE("parse errors carry positions") {
  try {
    parse_program("void main() {\n  int x = ;\n}\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parse_program("void main() { int x = 1 }"), ParseError);
  CHECK_THROWS_AS(parse_program("void main() { /* open"), ParseError);
  CHECK_THROWS_AS(parse_program("void main() { int x = 1 $ 2; }"), ParseError);
}

TEST_CASE("unsupported constructs are rejected") {
  CHECK_THROWS_AS(parse_program("void main() { int *p; }"), UnsupportedError);
  CHECK_THROWS_AS(parse_program("void main() { int x = 4 / 2; }"), UnsupportedError);
  CHECK_THROWS_AS(load_program("void main() { int N; int a[N]; int x = malloc(N); }"), UnsupportedError);
  // nonlinear arithmetic is a sort-level error even when it parses
  CHECK_THROWS_WITH_AS(load_program("void main() { int N; int M = N * N; }"), doctest::Contains("nonlinear"),
                       UnsupportedError);
  CHECK_THROWS_AS(load_program("void main() { int N; assume(N > 0); int a[N * N]; }"), UnsupportedError);
  CHECK_NOTHROW(load_program("void main() { int N; int M = 2 * N; }"));
}

TEST_CASE("sort errors") {
  CHECK_THROWS_AS(load_program("void main() { bool b = 1; }"), SortError);
  CHECK_THROWS_AS(load_program("void main() { bool s = true; int x = s + 1; }"), SortError);
  CHECK_THROWS_AS(load_program("void main() { int x = y; }"), SortError);
  CHECK_THROWS_AS(load_program("void main() { int a[3]; int x = a; }"), Error);
}

TEST_CASE("shadowed declarations get fresh names") {
  ProgramAst ast = parse_program(
      "void main() {\n"
      "  int x = 1;\n"
      "  if (x > 0) { int x = 2; assert(x == 2); }\n"
      "  assert(x == 1);\n"
      "}\n");
  typecheck(ast);
  std::vector<std::string> uniques;
  for (const auto& v : ast.vars)
    if (v.source == "x") uniques.push_back(v.unique);
  REQUIRE(uniques.size() == 2);
  CHECK(uniques[0] != uniques[1]);

  // the outer x keeps its value, so the program is safe under all-true
  // invariants (it has no loops)
  LoadedProgram p = load_program(
      "void main() {\n"
      "  int x = 1;\n"
      "  if (x > 0) { int x = 2; assert(x == 2); }\n"
      "  assert(x == 1);\n"
      "}\n");
  Teacher t(p.chc.system, test_solver_config());
  CHECK(t.find_counterexample(all_true_solution(p.chc.system)).is_valid());
}

TEST_CASE("loop-free programs need no predicates") {
  LoadedProgram p = load_program("void main() { int x; assume(x >= 0); int y = x + 2; assert(y > 1); }");
  CHECK(p.chc.system.predicates.empty());
  REQUIRE(p.chc.system.clauses.size() == 1);
  CHECK(p.chc.system.clauses[0].kind() == ClauseKind::Query);
  Teacher t(p.chc.system, test_solver_config());
  CHECK(t.find_counterexample(Solution{}).is_valid());
}

TEST_CASE("loop predicates take the live variables") {
  LoadedProgram p = load_program(
      "void main() {\n"
      "  int N; assume(N > 0);\n"
      "  int a[N]; int b[N]; int c[N];\n"
      "  int unused = 7;\n"
      "  int i = 0;\n"
      "  while (i < N) { c[i] = a[i] - b[i]; i++; }\n"
      "  assert(i == N);\n"
      "}\n");
  REQUIRE(p.chc.system.predicates.size() == 1);
  CHECK(p.chc.system.predicates[0].vars() == std::vector<std::string>{"N", "a", "b", "c", "i"});
  CHECK(has_pattern(p.patterns, "(= v1 (+ v2 (* (- 1) v3)))"));
  CHECK(load_program("void main() { int x; }").patterns.empty());
}

TEST_CASE("bubble sort clause shapes") {
  LoadedProgram p = load_bench("bubble_sort");
  const ChcSystem& sys = p.chc.system;
  REQUIRE(sys.predicates.size() == 2);
  CHECK(sys.predicates[0].name == "I0");
  CHECK(sys.predicates[1].name == "I1");
  CHECK(sys.sig("I0").arrays() == std::vector<std::string>{"a"});
  CHECK(sys.sig("I1").int_vars() == std::vector<std::string>{"N", "i"});
  CHECK(sys.clauses.size() == 6);
  CHECK(clauses_of_kind(sys, ClauseKind::Fact) == 1);
  CHECK(clauses_of_kind(sys, ClauseKind::Query) == 1);
  for (const auto& c : sys.clauses) CHECK(c.body.size() <= 1);
  REQUIRE(p.chc.locations.size() == 2);
  CHECK(p.chc.locations[0].kind == "loop");
  CHECK(p.chc.locations[0].pos.line == 7);
  CHECK(p.chc.locations[1].pos.line == 10);
}

TEST_CASE("procedure calls make clauses nonlinear") {
  LoadedProgram p = load_bench("argmax");
  const ChcSystem& sys = p.chc.system;
  REQUIRE(sys.find("argmax_pre") != nullptr);
  REQUIRE(sys.find("argmax_post") != nullptr);
  CHECK(sys.sig("argmax_post").arity() == sys.sig("argmax_pre").arity() + 1);
  std::size_t nonlinear = 0;
  for (const auto& c : sys.clauses)
    if (c.body.size() == 2) ++nonlinear;
  CHECK(nonlinear == 2);
  CHECK(clauses_of_kind(sys, ClauseKind::Query) == 1);
}

TEST_CASE("bubble sort encoding agrees with the known invariants") {
  LoadedProgram p = load_bench("bubble_sort");
  const ChcSystem& sys = p.chc.system;
  const Solution j = bubble_sort_invariants(true);
  std::mt19937_64 rng(7);
  std::size_t nonvacuous = 0;
  for (const auto& c : sys.clauses)
    for (int r = 0; r < 200; ++r) {
      Valuation env = random_env(c, rng);
      CHECK(ground_check_clause(sys, c, j, env));
      if (!ground_check_clause(sys, c, all_true_solution(sys), env)) ++nonvacuous;
    }
  // some envs reach the assertion and violate it under all-true
  CHECK(nonvacuous > 0);

  Teacher t(sys, test_solver_config());
  CHECK(t.find_counterexample(j).is_valid());
  CHECK(t.find_counterexample(all_true_solution(sys)).is_counterexample());
}

TEST_CASE("pattern extraction") {
  LoadedProgram p = load_bench("bubble_sort");
  CHECK(has_pattern(p.patterns, "(<= v1 v2)"));
  CHECK(has_pattern(p.patterns, "(= v1 1)"));
  // a[i - 1] > a[i], normalized over the integers
  CHECK(std::any_of(p.patterns.begin(), p.patterns.end(), [](const Pattern& q) {
    return q.to_string() == "(<= (+ v1 1) v2)" && q.hole_kind(0) == HoleKind::Cell && q.hole_kind(1) == HoleKind::Cell;
  }));
  // i = i + 1 relates i to its own update and gives no pattern
  CHECK_FALSE(has_pattern(p.patterns, "(= v1 (+ v2 1))"));
  for (const auto& q : p.patterns) {
    CHECK(q.arity >= 1);
    CHECK(q.arity <= 3);
    CHECK(q.kinds.size() == q.arity);
  }
  // the quantified comparison k1 <= k2 of the assertion
  CHECK(std::any_of(p.patterns.begin(), p.patterns.end(), [](const Pattern& q) {
    return q.to_string() == "(<= v1 v2)" && q.hole_kind(0) == HoleKind::Quantifier &&
           q.hole_kind(1) == HoleKind::Quantifier;
  }));
  // tmp = a[i] relates a scalar to a cell
  CHECK(std::any_of(p.patterns.begin(), p.patterns.end(), [](const Pattern& q) {
    return q.to_string() == "(= v1 v2)" && q.hole_kind(0) == HoleKind::Scalar && q.hole_kind(1) == HoleKind::Cell;
  }));

  auto sorted = p.patterns;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

}  // TEST_SUITE
