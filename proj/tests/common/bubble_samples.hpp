#pragma once

// Bubble-sort data points and the samples accumulated while verifying it.
// I0 has parameters (N, a, s); I1 has (N, a, s, i).

#include "fixtures.hpp"
#include "qice/sample/sample.hpp"

namespace qice::testing {

inline const ChcSystem& bubble_system_cached() {
  static const ChcSystem sys = bubble_sort_system();
  return sys;
}

inline DataPoint i0(long long n, const std::vector<long long>& a, bool s) {
  return DataPoint::of(bubble_system_cached().sig("I0"), {Value::of_int(n), Value::int_array(a), Value::of_bool(s)});
}

inline DataPoint i1(long long n, const std::vector<long long>& a, long long i, bool s) {
  return DataPoint::of(bubble_system_cached().sig("I1"),
                       {Value::of_int(n), Value::int_array(a), Value::of_bool(s), Value::of_int(i)});
}

/// The sample that has a classifier but needs two quantifiers per array:
/// two chains T -> I0(..,T) -> I1(..,1,F) -> I1(..,2,F) -> I0(..,F) for the
/// arrays [0,0] and [1,1], and I0(2,[1,0],F) -> false.
inline Sample two_chain_sample() {
  Sample s;
  for (const std::vector<long long>& a : {std::vector<long long>{0, 0}, std::vector<long long>{1, 1}}) {
    s.add_counterexample(HornImplication::positive(i0(2, a, true)));
    s.add_counterexample(HornImplication::conditional({i0(2, a, true)}, i1(2, a, 1, false)));
    s.add_counterexample(HornImplication::conditional({i1(2, a, 1, false)}, i1(2, a, 2, false)));
    s.add_counterexample(HornImplication::conditional({i1(2, a, 2, false)}, i0(2, a, false)));
  }
  s.add_counterexample(HornImplication::negative({i0(2, {1, 0}, false)}));
  return s;
}

/// The counterexamples returned in the first `k` iterations of the bubble-sort
/// run (k <= 10).
inline std::vector<HornImplication> bubble_trace_counterexamples() {
  using H = HornImplication;
  return {
      H::negative({i0(2, {1, 0}, false)}),
      H::positive(i0(1, {0}, true)),
      H::positive(i0(2, {0, 0}, true)),
      H::positive(i0(1, {1}, true)),
      H::conditional({i1(1, {1}, 1, false)}, i0(1, {1}, false)),
      H::conditional({i1(2, {0, 0}, 2, false)}, i0(2, {0, 0}, false)),
      H::positive(i0(2, {1, 0}, true)),
      H::conditional({i1(2, {1, 0}, 2, false)}, i0(2, {1, 0}, false)),
      H::conditional({i0(2, {1, 0}, true)}, i1(2, {1, 0}, 1, false)),
      H::conditional({i1(3, {1, 1, 0}, 2, false)}, i1(3, {1, 0, 1}, 3, true)),
  };
}

inline Sample bubble_trace_sample(std::size_t k) {
  Sample s;
  auto all = bubble_trace_counterexamples();
  for (std::size_t i = 0; i < k && i < all.size(); ++i) s.add_counterexample(all[i]);
  return s;
}

}  // namespace qice::testing
