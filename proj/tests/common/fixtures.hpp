#pragma once

// Shared fixtures: the bubble-sort clause system and its known invariants.

#include <fstream>
#include <sstream>
#include <string>

#include "qice/chc/chc_io.hpp"
#include "qice/chc/system.hpp"
#include "qice/logic/term_io.hpp"

namespace qice::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string source_path(const std::string& rel) { return std::string(QICE_SOURCE_DIR) + "/" + rel; }

inline ChcSystem bubble_sort_system() { return load_chc_file(source_path("benchmarks/bubble_sort.chc")); }

/// The sortedness invariants found for bubble sort:
///   I0: forall k1 <= k2. a[k1] <= a[k2] \/ s
///   I1: forall k1 <= k2. a[k1] <= a[k2] \/ i <= k2 \/ s
/// With `with_length`, both are conjoined with |a| = N, without which the
/// inner-loop exit clause is not preserved when |a| > N.
inline Solution bubble_sort_invariants(bool with_length) {
  const Sort ia = Sort::array(Sort::integer());
  SortEnv e0{{"N", Sort::integer()}, {"a", ia}, {"s", Sort::boolean()}};
  SortEnv e1 = e0;
  e1["i"] = Sort::integer();
  const std::string psi = with_length ? "(= (len a) N)" : "true";
  Solution j;
  j["I0"] = parse_property("(qprop " + psi + " ((a k1 k2)) (<= k1 k2) (or (<= (read a k1) (read a k2)) s))", e0);
  j["I1"] = parse_property(
      "(qprop " + psi + " ((a k1 k2)) (<= k1 k2) (or (<= (read a k1) (read a k2)) (<= i k2) s))", e1);
  return j;
}

}  // namespace qice::testing
