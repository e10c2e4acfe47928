#pragma once

#include <map>
#include <string>
#include <vector>

#include "qice/chc/system.hpp"
#include "qice/sample/horn.hpp"
#include "qice/sample/sample.hpp"

namespace qice {

enum class DiagramRole : std::uint8_t { Scalar, Quantifier, Value, Length };

struct DiagramVar {
  std::string name;
  Sort sort;
  DiagramRole role;
  int array = -1;   // owning array (Quantifier, Value, Length)
  int source = -1;  // parameter index (Scalar), quantifier variable index (Value)
  IntClass cls = IntClass::Any;
};

/// Diagram variables of one predicate, in the order: non-array parameters,
/// quantifier variables k1..kn of each array, value variables a_k, lengths l_a.
struct PredScheme {
  std::string pred;
  std::vector<DiagramVar> vars;
  std::vector<std::string> arrays;
  std::vector<std::vector<int>> quantifiers;  // per array: indices into vars
  std::vector<std::vector<int>> values;       // per array: aligned with quantifiers
  std::vector<int> lengths;                   // per array
  std::vector<int> array_params;              // per array: parameter index

  int index_of(const std::string& name) const;  // -1 when absent
  SortEnv sort_env() const;
};

/// Quantifier variables per array (same count n for every array) for every
/// predicate of a system. Quantifier variables are numbered k1, k2, ... across
/// all arrays of a predicate.
struct QuantifierScheme {
  int n = 1;
  std::map<std::string, PredScheme> preds;

  static QuantifierScheme build(const ChcSystem& sys, int n);
  const PredScheme& at(const std::string& pred) const;
};

/// Scalar projection of a data point; values aligned with the predicate's
/// scheme (booleans as 0/1).
struct Diagram {
  std::string pred;
  std::vector<BigInt> values;

  Valuation valuation(const PredScheme& ps) const;
  std::string to_string(const PredScheme& ps) const;

  friend bool operator==(const Diagram&, const Diagram&) = default;
  friend auto operator<=>(const Diagram& a, const Diagram& b) {
    if (auto c = a.pred <=> b.pred; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.values.begin(), a.values.end(), b.values.begin(), b.values.end(), [](const BigInt& x, const BigInt& y) {
          return x < y ? std::strong_ordering::less : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
        });
  }
};

/// All diagrams of x (index tuples nondecreasing per array when ordered),
/// sorted. Throws Error on empty arrays.
std::vector<Diagram> diagrams_of(const DataPoint& x, const QuantifierScheme& scheme, bool ordered);

/// Diagrams whose quantifier values cover every index of every array.
/// Throws Error when some array is longer than n.
std::vector<Diagram> complete_diagrams(const DataPoint& x, const QuantifierScheme& scheme, bool ordered = false);

struct DiagramSample {
  std::vector<Diagram> diagrams;  // sorted
  std::vector<HornConstraint> constraints;
  /// Diagram ids of each data point of the source sample.
  std::vector<std::vector<int>> of_point;

  int id_of(const Diagram& d) const;
  HornClosure closure() const { return horn_closure(diagrams.size(), constraints); }
  bool is_consistent() const { return closure().consistent; }
};

/// Diagram sample: the union of the diagrams of all points, with each
/// implication translated (positive targets fan out to every diagram; bodies
/// become the union of the diagrams of their points; conditionals produce one
/// implication per head diagram).
DiagramSample diagramize(const Sample& s, const QuantifierScheme& scheme, bool ordered);

/// Quantifier-free diagram formulas lifted to quantified properties: value
/// variables become reads a[k], lengths become |a|. In ordered mode the guard
/// is k1 <= ... <= kn per array.
Solution lift(const std::map<std::string, Term>& jprime, const QuantifierScheme& scheme, bool ordered);

}  // namespace qice
