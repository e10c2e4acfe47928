#include "doctest.h"

#include "../common/bubble_samples.hpp"
#include "../common/random_samples.hpp"
#include "qice/learner/learner.hpp"
#include "qice/logic/errors.hpp"
#include "qice/logic/eval.hpp"
#include "qice/logic/fragment.hpp"
#include "qice/logic/term_io.hpp"

using namespace qice;
using namespace qice::testing;

namespace {

ChcSystem one_pred(std::vector<Param> params) {
  ChcSystem sys;
  sys.predicates.push_back({"P", std::move(params)});
  return sys;
}

bool has_atom(const AttributePool& pool, const std::string& pred, const Term& atom, const PredScheme& ps) {
  auto a = attribute_from_atom(ps, atom, AttributeKind::Extracted);
  REQUIRE(a.has_value());
  for (const auto& b : pool.of(pred))
    if (b.key() == a->key()) return true;
  return false;
}

// Is there a labeling, constant on attribute-equivalent diagrams, that
// satisfies the constraints? Exhaustive over labelings.
bool brute_sufficient(const DiagramSample& ds, const AttributePool& pool) {
  const std::size_t n = ds.diagrams.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<char> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = (mask >> i) & 1;
    bool uniform = true;
    for (std::size_t i = 0; i < n && uniform; ++i)
      for (std::size_t j = i + 1; j < n && uniform; ++j) {
        if (ds.diagrams[i].pred != ds.diagrams[j].pred || label[i] == label[j]) continue;
        bool same = true;
        for (const auto& a : pool.of(ds.diagrams[i].pred))
          same = same && a.eval(ds.diagrams[i]) == a.eval(ds.diagrams[j]);
        if (same) uniform = false;
      }
    if (uniform && labeling_satisfies(label, ds.constraints)) return true;
  }
  return false;
}

DiagramSample manual_sample(std::vector<Diagram> ds, std::vector<HornConstraint> cs) {
  DiagramSample out;
  out.diagrams = std::move(ds);
  out.constraints = std::move(cs);
  return out;
}

}  // namespace

TEST_SUITE("learner") {

TEST_CASE("attribute instantiation") {
  auto sys = one_pred({{"i", Sort::integer()}, {"a", Sort::array(Sort::integer())}});
  auto qs = QuantifierScheme::build(sys, 2);
  const auto& ps = qs.at("P");
  auto i = mk_var("i", Sort::integer());
  auto k2 = mk_var("k2", Sort::integer());
  auto p0 = make_pool(qs, 0, {}, true);
  auto p1 = generate_attributes(p0, qs);
  CHECK(p1.k == 1);
  CHECK_FALSE(has_atom(p0, "P", mk_leq(i, mk_int(1)), ps));
  for (const Term& t : {mk_leq(i, mk_int(1)), mk_leq(mk_neg(i), mk_int(1)), mk_leq(i, k2),
                        mk_leq(mk_add(i, k2), mk_int(1)), mk_leq(mk_sub(i, k2), mk_int(1))})
    CHECK_MESSAGE(has_atom(p1, "P", t, ps), t.to_string());
  // outside the fragment: two quantifier variables with a constant, or mixed with values
  auto k1 = mk_var("k1", Sort::integer());
  auto ak1 = mk_var("a_k1", Sort::integer());
  CHECK_FALSE(has_atom(p1, "P", mk_leq(mk_sub(k1, k2), mk_int(1)), ps));
  CHECK_FALSE(has_atom(p1, "P", mk_leq(ak1, k1), ps));
  CHECK_FALSE(has_atom(p1, "P", mk_leq(k1, k2), ps));  // implied by the order
  CHECK(has_atom(make_pool(qs, 0, {}, false), "P", mk_leq(k1, k2), ps));
  CHECK(has_atom(p1, "P", mk_leq(ak1, i), ps));
  // strict growth and prefix order
  std::size_t prev = p0.size();
  AttributePool p = p0;
  for (int k = 1; k <= 4; ++k) {
    auto next = generate_attributes(p, qs);
    CHECK(next.size() > prev);
    for (std::size_t j = 0; j < p.of("P").size(); ++j) CHECK(next.of("P")[j].key() == p.of("P")[j].key());
    prev = next.size();
    p = next;
  }
  // keys are unique and atoms agree with the compiled form
  std::set<std::string> keys;
  auto pts = diagrams_of(DataPoint::of(sys.predicates[0], {Value::of_int(-1), Value::int_array({2, -1, 0})}), qs, false);
  for (const auto& a : p.of("P")) {
    CHECK(keys.insert(a.key()).second);
    for (const auto& d : pts) REQUIRE(a.eval(d) == eval_bool(a.atom, d.valuation(ps)));
  }
}

TEST_CASE("extracted patterns") {
  auto qs = QuantifierScheme::build(bubble_system_cached(), 1);
  const auto& ps = qs.at("I1");
  Pattern diff{3, parse_term("(= v1 (- v2 v3))", {{"v1", Sort::integer()}, {"v2", Sort::integer()}, {"v3", Sort::integer()}})};
  auto pool = make_pool(qs, 1, {diff}, true);
  auto t = parse_term("(= i (- N l_a))", ps.sort_env());
  CHECK(has_atom(pool, "I1", t, ps));
  for (const auto& a : pool.of("I1"))
    if (a.key() == attribute_from_atom(ps, t, AttributeKind::Extracted)->key()) CHECK(a.kind == AttributeKind::Extracted);
}

TEST_CASE("sufficiency") {
  auto sys = one_pred({{"a", Sort::array(Sort::integer())}});
  auto qs = QuantifierScheme::build(sys, 1);
  const auto& ps = qs.at("P");  // k1, a_k1, l_a
  // differ only in a_k1; one forced true, one forced false
  auto ds = manual_sample({{"P", {0, 0, 1}}, {"P", {0, 3, 1}}}, {{{}, 0}, {{1}, HornConstraint::kBottom}});
  AttributePool pool;
  pool.attrs["P"].push_back(*attribute_from_atom(ps, parse_term("(<= k1 0)", ps.sort_env()), AttributeKind::Interval));
  CHECK_FALSE(sufficient(pool, ds));
  CHECK_FALSE(brute_sufficient(ds, pool));
  pool.attrs["P"].push_back(*attribute_from_atom(ps, parse_term("(<= a_k1 0)", ps.sort_env()), AttributeKind::Interval));
  CHECK(sufficient(pool, ds));
  CHECK(brute_sufficient(ds, pool));

  // separable only by comparing the two value variables
  auto q2 = QuantifierScheme::build(sys, 2);  // k1 k2 a_k1 a_k2 l_a
  auto ds2 = manual_sample({{"P", {0, 1, 5, 7, 2}}, {"P", {0, 1, 7, 5, 2}}, {"P", {0, 1, 6, 6, 2}}},
                           {{{}, 0}, {{}, 2}, {{1}, HornConstraint::kBottom}});
  auto full = make_pool(q2, 0, {}, true);
  AttributePool intervals = full;
  auto& v = intervals.attrs["P"];
  v.erase(std::remove_if(v.begin(), v.end(), [](const Attribute& a) { return a.kind != AttributeKind::Interval; }), v.end());
  CHECK_FALSE(sufficient(intervals, ds2));
  CHECK_FALSE(brute_sufficient(ds2, intervals));
  CHECK(sufficient(full, ds2));
  CHECK(brute_sufficient(ds2, full));

  // random agreement with the exhaustive check
  SampleGen gen(3);
  for (int round = 0; round < 60; ++round) {
    Sample s = gen.sample(3, true);
    auto q = QuantifierScheme::build(gen.system(), 1);
    auto d = diagramize(s, q, true);
    if (d.diagrams.size() > 12 || !d.is_consistent()) continue;
    AttributePool small;
    auto all = make_pool(q, 0, {}, true);
    for (auto& [pred, attrs] : all.attrs)
      for (std::size_t i = 0; i < attrs.size(); i += 7) small.attrs[pred].push_back(attrs[i]);
    CHECK(sufficient(small, d) == brute_sufficient(d, small));
  }
}

TEST_CASE("tree to formula") {
  auto sys = one_pred({{"x", Sort::integer()}, {"y", Sort::integer()}});
  auto qs = QuantifierScheme::build(sys, 1);
  const auto& ps = qs.at("P");
  auto a = *attribute_from_atom(ps, parse_term("(<= x 0)", ps.sort_env()), AttributeKind::Interval);
  auto b = *attribute_from_atom(ps, parse_term("(<= y x)", ps.sort_env()), AttributeKind::UpperBound);
  using T = DecisionTree;
  CHECK(tree_to_formula(T::make_leaf(true)).is_true());
  CHECK(tree_to_formula(T::make_leaf(false)).is_false());
  CHECK(tree_to_formula(T::make_node(a, T::make_leaf(true), T::make_leaf(false))) == a.atom);
  auto t3 = T::make_node(a, T::make_leaf(false), T::make_node(b, T::make_leaf(true), T::make_leaf(false)));
  CHECK(tree_to_formula(t3) == mk_and(mk_not(a.atom), b.atom));
  CHECK(tree_to_cnf(t3) == mk_and({mk_not(a.atom), mk_or(a.atom, b.atom)}));
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y) {
      Diagram d{"P", {x, y}};
      auto env = d.valuation(ps);
      CHECK(eval_bool(tree_to_formula(t3), env) == t3.classify(d));
      CHECK(eval_bool(tree_to_cnf(t3), env) == t3.classify(d));
    }
}

TEST_CASE("small trees") {
  auto sys = one_pred({{"x", Sort::integer()}});
  auto qs = QuantifierScheme::build(sys, 1);
  auto pool = make_pool(qs, 1, {}, true);
  auto all_pos = learn_tree(manual_sample({{"P", {0}}, {"P", {1}}}, {{{}, 0}, {{}, 1}}), pool);
  CHECK(all_pos.at("P").leaf);
  CHECK(all_pos.at("P").label);
  auto split = learn_tree(manual_sample({{"P", {0}}, {"P", {1}}}, {{{}, 0}, {{1}, HornConstraint::kBottom}}), pool);
  CHECK(split.at("P").depth() == 1);
}

TEST_CASE("trees on the bubble-sort samples") {
  for (std::size_t k = 0; k <= 10; ++k) {
    Sample s = bubble_trace_sample(k);
    auto qs = QuantifierScheme::build(bubble_system_cached(), 2);
    auto ds = diagramize(s, qs, true);
    REQUIRE(ds.is_consistent());
    auto pool = make_pool(qs, 1, {}, true);
    while (!sufficient(pool, ds)) pool = generate_attributes(pool, qs);
    auto trees = learn_tree(ds, pool);
    std::vector<char> label;
    for (const auto& d : ds.diagrams) {
      const auto& t = trees.at(d.pred);
      label.push_back(t.classify(d));
      REQUIRE(eval_bool(tree_to_formula(t), d.valuation(qs.at(d.pred))) == t.classify(d));
    }
    CHECK(labeling_satisfies(label, ds.constraints));
  }
}

TEST_CASE("learner loop") {
  const auto& sys = bubble_system_cached();
  LearnerConfig cfg;
  std::vector<std::string> lines;
  cfg.trace = [&](const std::string& l) { lines.push_back(l); };

  SUBCASE("empty sample gives true") {
    LearnerState st = LearnerState::initial(cfg);
    auto sol = learn(sys, Sample{}, st, cfg);
    for (const auto& [pred, p] : sol) CHECK(property_to_string(p) == "(qprop true ((a k1)) true true)");
  }
  SUBCASE("two-chain sample needs two quantifiers") {
    LearnerState st = LearnerState::initial(cfg);
    Sample s = two_chain_sample();
    auto sol = learn(sys, s, st, cfg);
    CHECK(st.n == 2);
    CHECK(satisfies(s, sol));
    CHECK(std::find(lines.begin(), lines.end(), "learn n=2 (diagram sample inconsistent)") != lines.end());
  }
  SUBCASE("bubble-sort iterations") {
    LearnerState st = LearnerState::initial(cfg);
    int last_n = st.n, last_k = st.k;
    for (std::size_t k = 0; k <= 10; ++k) {
      Sample s = bubble_trace_sample(k);
      auto sol = learn(sys, s, st, cfg);
      CHECK(satisfies(s, sol));
      CHECK(st.n >= last_n);
      CHECK(st.k >= last_k);
      last_n = st.n;
      last_k = st.k;
      for (const auto& [pred, p] : sol) CHECK_MESSAGE(check_fragment(p).ok, property_to_string(p));
    }
  }
  SUBCASE("budget") {
    LearnerConfig tight = cfg;
    tight.max_n = 1;
    LearnerState st = LearnerState::initial(tight);
    CHECK_THROWS_AS(learn(sys, two_chain_sample(), st, tight), BudgetError);
  }
  SUBCASE("inconsistent input") {
    Sample s;
    s.add_counterexample(HornImplication::positive(i0(1, {0}, true)));
    s.add_counterexample(HornImplication::negative({i0(1, {0}, true)}));
    LearnerState st = LearnerState::initial(cfg);
    CHECK_THROWS_AS(learn(sys, s, st, cfg), Error);
  }
}

TEST_CASE("learned solutions classify random samples") {
  SampleGen gen(17);
  for (int round = 0; round < 100; ++round) {
    Sample s = gen.sample(8, true);
    LearnerConfig cfg;
    cfg.ordered = round % 2 == 0;
    LearnerState st = LearnerState::initial(cfg);
    auto sol = learn(gen.system(), s, st, cfg);
    REQUIRE_MESSAGE(satisfies(s, sol), s.dump());
  }
}

}  // TEST_SUITE
