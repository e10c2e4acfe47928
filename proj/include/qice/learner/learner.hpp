#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qice/learner/tree.hpp"

namespace qice {

struct LearnerConfig {
  int initial_n = 1;
  int max_n = 4;
  int initial_k = -1;  // seed pool only
  int max_k = 32;
  bool ordered = true;
  std::vector<Pattern> patterns;
  /// Receives one line per event:
  ///   learn n=<n> (diagram sample inconsistent)
  ///   learn k=<k> attributes=<count>
  ///   learn trees n=<n> k=<k> diagrams=<d> classes=<c> nodes=<m> fragment_fallbacks=<f>
  std::function<void(const std::string&)> trace;
};

/// Quantifier count and constant bound; both persist across calls and never
/// decrease.
struct LearnerState {
  int n = 1;
  int k = 1;
  // last result, for reporting
  std::map<std::string, Term> jprime;
  std::map<std::string, DecisionTree> trees;

  static LearnerState initial(const LearnerConfig& cfg) {
    LearnerState st;
    st.n = cfg.initial_n;
    st.k = cfg.initial_k;
    return st;
  }
};

/// One learner round: diagramize with the current n (raising it while the
/// diagram sample is inconsistent), grow the attribute pool until it is
/// sufficient, build decision trees and lift them. Requires a consistent
/// sample; throws BudgetError past max_n or max_k.
Solution learn(const ChcSystem& sys, const Sample& s, LearnerState& state, const LearnerConfig& cfg);

}  // namespace qice
