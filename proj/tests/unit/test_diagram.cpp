#include "doctest.h"

#include "../common/bubble_samples.hpp"
#include "../common/diagram_oracles.hpp"
#include "../common/random_samples.hpp"
#include "../common/random_terms.hpp"
#include "qice/logic/errors.hpp"
#include "qice/logic/eval.hpp"
#include "qice/logic/term_io.hpp"

using namespace qice;
using namespace qice::testing;

namespace {

Diagram i0_diagram(long n, bool s, long k1, long k2, long v1, long v2, long len) {
  return {"I0", {n, s ? 1 : 0, k1, k2, v1, v2, len}};
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("scheme layout") {
  auto qs = QuantifierScheme::build(bubble_system_cached(), 2);
  const auto& ps = qs.at("I1");
  std::vector<std::string> names;
  for (const auto& v : ps.vars) names.push_back(v.name);
  CHECK(names == std::vector<std::string>{"N", "s", "i", "k1", "k2", "a_k1", "a_k2", "l_a"});
  // fresh with respect to parameters
  ChcSystem sys;
  sys.predicates.push_back({"P", {{"k1", Sort::integer()}, {"a", Sort::array(Sort::integer())}}});
  auto q2 = QuantifierScheme::build(sys, 1);
  CHECK(q2.at("P").vars[1].name != "k1");
  CHECK(q2.at("P").index_of("k1") == 0);
}

TEST_CASE("diagrams of <I0, 2, [1,0], false>") {
  auto qs = QuantifierScheme::build(bubble_system_cached(), 2);
  auto x1 = i0(2, {1, 0}, false);
  auto d1 = i0_diagram(2, false, 0, 0, 1, 1, 2);
  auto d2 = i0_diagram(2, false, 0, 1, 1, 0, 2);
  auto d3 = i0_diagram(2, false, 1, 0, 0, 1, 2);
  auto d4 = i0_diagram(2, false, 1, 1, 0, 0, 2);
  CHECK(diagrams_of(x1, qs, false) == std::vector<Diagram>{d1, d2, d3, d4});
  CHECK(diagrams_of(x1, qs, true) == std::vector<Diagram>{d1, d2, d4});
  CHECK(d2.to_string(qs.at("I0")) == "<I0, N=2, s=false, k1=0, k2=1, a_k1=1, a_k2=0, l_a=2>");

  auto shared = i0_diagram(2, false, 1, 1, 0, 0, 2);
  auto x2 = i0(2, {0, 0}, false);
  auto dx2 = diagrams_of(x2, qs, false);
  CHECK(std::find(dx2.begin(), dx2.end(), shared) != dx2.end());

  auto complete = complete_diagrams(x1, qs);
  CHECK(std::find(complete.begin(), complete.end(), d2) != complete.end());
  CHECK(complete == std::vector<Diagram>{d2, d3});
  CHECK(complete_diagrams(x1, qs, true) == std::vector<Diagram>{d2});
}

TEST_CASE("empty arrays and short quantifier lists are rejected") {
  auto qs = QuantifierScheme::build(bubble_system_cached(), 1);
  CHECK_THROWS_AS(diagrams_of(i0(0, {}, false), qs, false), Error);
  CHECK_THROWS_AS(complete_diagrams(i0(2, {1, 0}, false), qs), Error);
  auto one = complete_diagrams(i0(1, {5}, true), qs);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Diagram{"I0", {1, 1, 0, 5, 1}});
}

TEST_CASE("diagram counts") {
  SampleGen gen(5);
  for (int round = 0; round < 200; ++round) {
    auto x = gen.point(1, 4);
    const std::size_t len = x.get("a").size();
    for (int n = 1; n <= 3; ++n) {
      auto qs = QuantifierScheme::build(gen.system(), n);
      std::size_t unordered = 1;
      for (int j = 0; j < n; ++j) unordered *= len;
      CHECK(diagrams_of(x, qs, false).size() == unordered);
      CHECK(diagrams_of(x, qs, true).size() == binom(len + n - 1, n));
    }
  }
}

TEST_CASE("complete diagrams are unique to their point") {
  // every P-point with x in [-1,1] and arrays of length 1..2 over [-1,1]
  auto sys = sample_predicates();
  std::vector<DataPoint> pts;
  for (const auto& a : domain_of(Sort::array(Sort::integer()), -1, 1, 2, 1))
    for (int x = -1; x <= 1; ++x) pts.push_back(DataPoint::of(sys.predicates[0], {Value::of_int(x), a}));
  for (int n = 2; n <= 3; ++n) {
    auto qs = QuantifierScheme::build(sys, n);
    std::map<Diagram, std::size_t> owner;
    for (std::size_t p = 0; p < pts.size(); ++p)
      for (const auto& d : complete_diagrams(pts[p], qs)) {
        auto [it, fresh] = owner.emplace(d, p);
        CHECK_MESSAGE(fresh, pts[p].to_string(), " shares a complete diagram with ", pts[it->second].to_string());
      }
  }
}

TEST_CASE("one quantifier is not enough for the two-chain sample") {
  Sample s = two_chain_sample();
  REQUIRE(s.is_consistent());
  for (bool ordered : {false, true}) {
    auto d1 = diagramize(s, QuantifierScheme::build(bubble_system_cached(), 1), ordered);
    CHECK_FALSE(d1.is_consistent());
    auto d2 = diagramize(s, QuantifierScheme::build(bubble_system_cached(), 2), ordered);
    CHECK(d2.is_consistent());
  }
}

TEST_CASE("single positive over a length-1 array") {
  Sample s;
  s.add_counterexample(HornImplication::positive(i0(1, {3}, true)));
  auto ds = diagramize(s, QuantifierScheme::build(bubble_system_cached(), 1), true);
  CHECK(ds.diagrams.size() == 1);
  REQUIRE(ds.constraints.size() == 1);
  CHECK(ds.constraints[0] == HornConstraint{{}, 0});
}

TEST_CASE("constraint translation") {
  // Compared against a direct construction from diagrams_of.
  Sample s = bubble_trace_sample(10);
  for (bool ordered : {false, true}) {
    auto qs = QuantifierScheme::build(bubble_system_cached(), 2);
    auto ds = diagramize(s, qs, ordered);
    std::set<std::pair<std::vector<Diagram>, std::optional<Diagram>>> expect, got;
    for (const auto& imp : s.implications()) {
      std::set<Diagram> body;
      for (const auto& x : imp.body)
        for (const auto& d : diagrams_of(x, qs, ordered)) body.insert(d);
      std::vector<Diagram> bv(body.begin(), body.end());
      if (imp.head)
        for (const auto& d : diagrams_of(*imp.head, qs, ordered)) expect.insert({bv, d});
      else
        expect.insert({bv, std::nullopt});
    }
    for (const auto& c : ds.constraints) {
      std::vector<Diagram> bv;
      for (int b : c.body) bv.push_back(ds.diagrams[b]);
      std::optional<Diagram> h;
      if (c.head >= 0) h = ds.diagrams[c.head];
      got.insert({bv, h});
    }
    CHECK(got == expect);
    CHECK(got.size() == ds.constraints.size());
    CHECK(std::is_sorted(ds.diagrams.begin(), ds.diagrams.end()));
    // the iteration-10 classifier labels the diagram sample consistently
    const auto& p0 = qs.at("I0");
    const auto& p1 = qs.at("I1");
    Term sorted = mk_leq(mk_var("a_k1", Sort::integer()), mk_var("a_k2", Sort::integer()));
    Term j0 = mk_or({mk_var("s", Sort::boolean()), sorted});
    // the quantifier-free I1 formula needs s as well: I1(3,[1,1,0],2,F) -> I1(3,[1,0,1],3,T)
    Term j1 = mk_or({mk_var("s", Sort::boolean()), mk_leq(mk_var("i", Sort::integer()), mk_var("k2", Sort::integer())), sorted});
    if (!ordered) {
      // without the order, pairs with k1 > k2 are unconstrained
      Term le = mk_leq(mk_var("k1", Sort::integer()), mk_var("k2", Sort::integer()));
      j0 = mk_or({mk_not(le), j0});
      j1 = mk_or({mk_not(le), j1});
    }
    std::vector<char> label;
    for (const auto& d : ds.diagrams)
      label.push_back(eval_bool(d.pred == "I0" ? j0 : j1, d.valuation(d.pred == "I0" ? p0 : p1)));
    CHECK(labeling_satisfies(label, ds.constraints));
  }
}

TEST_CASE("lift") {
  auto qs = QuantifierScheme::build(bubble_system_cached(), 2);
  Term j0 = parse_term("(or s (<= a_k1 a_k2))", qs.at("I0").sort_env());
  auto sol = lift({{"I0", j0}}, qs, true);
  CHECK(property_to_string(sol.at("I0")) == "(qprop true ((a k1 k2)) (<= k1 k2) (or s (<= (read a k1) (read a k2))))");
  CHECK(property_to_string(sol.at("I1")) == "(qprop true ((a k1 k2)) (<= k1 k2) true)");
  auto un = lift({{"I0", parse_term("(<= l_a 3)", qs.at("I0").sort_env())}}, qs, false);
  CHECK(property_to_string(un.at("I0")) == "(qprop true ((a k1 k2)) true (<= (len a) 3))");
  CHECK_THROWS_AS(lift({{"I0", mk_var("j", Sort::integer())}}, qs, false), Error);
  CHECK_THROWS_AS(lift({{"I0", mk_leq(mk_var("s", Sort::integer()), mk_int(0))}}, qs, false), Error);
}

TEST_CASE("ordered and unordered lifts agree on symmetric closures") {
  auto qs = QuantifierScheme::build(bubble_system_cached(), 2);
  const auto env0 = qs.at("I1").sort_env();
  for (const char* text : {"(or s (<= a_k1 a_k2))", "(or (<= i k2) (<= a_k1 a_k2))", "(<= (+ a_k1 1) a_k2)",
                           "(or (< k1 i) (= a_k1 a_k2))"}) {
    Term phi = parse_term(text, env0);
    // phi on ordered pairs, and its closure over both orders
    Substitution swap{{"k1", mk_var("k2", Sort::integer())}, {"k2", mk_var("k1", Sort::integer())},
                      {"a_k1", mk_var("a_k2", Sort::integer())}, {"a_k2", mk_var("a_k1", Sort::integer())}};
    Term k12 = mk_leq(mk_var("k1", Sort::integer()), mk_var("k2", Sort::integer()));
    Term k21 = mk_leq(mk_var("k2", Sort::integer()), mk_var("k1", Sort::integer()));
    Term sym = mk_and({mk_implies(k12, phi), mk_implies(k21, substitute(phi, swap))});
    auto ord = lift({{"I1", phi}}, qs, true).at("I1");
    auto un = lift({{"I1", sym}}, qs, false).at("I1");
    SortEnv params = bubble_system_cached().sig("I1").sort_env();
    enumerate_envs(
        params, -1, 2, 3,
        [&](const Valuation& env) {
          REQUIRE(eval_property(ord, env) == eval_property(un, env));
          return false;
        },
        1);
  }
}

TEST_CASE("lifted classifiers classify the data sample") {
  SampleGen gen(11);
  int checked = 0;
  for (int round = 0; round < 150; ++round) {
    Sample s = gen.sample(8, true);
    for (int n = 1; n <= 3; ++n)
      for (bool ordered : {false, true}) {
        auto qs = QuantifierScheme::build(gen.system(), n);
        auto ds = diagramize(s, qs, ordered);
        auto closure = ds.closure();
        if (!closure.consistent) continue;
        std::vector<std::vector<char>> labels{closure.pos};
        std::vector<char> upper(ds.diagrams.size());
        for (std::size_t i = 0; i < upper.size(); ++i) upper[i] = !closure.neg[i];
        labels.push_back(upper);
        for (int t = 0; t < 20; ++t) {
          std::vector<char> r(ds.diagrams.size());
          for (auto& b : r) b = gen.uniform(0, 1);
          labels.push_back(r);
        }
        for (const auto& label : labels) {
          if (!labeling_satisfies(label, ds.constraints)) continue;
          auto sol = lift(labeling_formula(ds, label, qs), qs, ordered);
          CHECK(satisfies(s, sol));
          ++checked;
        }
      }
  }
  CHECK(checked > 300);
}

TEST_CASE("enough quantifiers give a consistent diagram sample") {
  SampleGen gen(23);
  for (int round = 0; round < 150; ++round) {
    Sample s = gen.sample(8, true);
    const int n = static_cast<int>(max_array_length(s));
    for (bool ordered : {false, true}) {
      auto qs = QuantifierScheme::build(gen.system(), n);
      auto ds = diagramize(s, qs, ordered);
      auto label = complete_diagram_witness(s, ds, qs, ordered, s.propagate().pos);
      CHECK(labeling_satisfies(label, ds.constraints));
      CHECK(ds.is_consistent());
    }
  }
}

}  // TEST_SUITE
