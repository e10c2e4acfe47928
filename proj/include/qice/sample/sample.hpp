#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qice/chc/system.hpp"
#include "qice/sample/horn.hpp"

namespace qice {

/// Concrete argument tuple of a predicate; values follow the signature order.
struct DataPoint {
  std::string pred;
  std::vector<std::string> names;
  std::vector<Value> values;

  static DataPoint of(const PredicateSig& sig, std::vector<Value> values);
  static DataPoint from_valuation(const PredicateSig& sig, const Valuation& env);
  Valuation valuation() const;
  const Value& get(const std::string& name) const;
  /// Tuple notation, e.g. <I0, 2, [1,0], false>.
  std::string to_string() const;

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
  friend auto operator<=>(const DataPoint&, const DataPoint&) = default;
};

enum class ImplicationKind { Positive, Negative, Conditional };

/// true -> head (Positive), body -> false (Negative), body -> head (Conditional).
/// A Negative with an empty body stands for true -> false.
struct HornImplication {
  ImplicationKind kind = ImplicationKind::Positive;
  std::vector<DataPoint> body;
  std::optional<DataPoint> head;

  static HornImplication positive(DataPoint x);
  static HornImplication negative(std::vector<DataPoint> body);
  static HornImplication conditional(std::vector<DataPoint> body, DataPoint head);
  std::string to_string() const;

  friend bool operator==(const HornImplication&, const HornImplication&) = default;
};

/// Data points and Horn implications with their closure S+/S-.
class Sample {
 public:
  /// Adds the implication and its points (shared points are merged).
  void add_counterexample(const HornImplication& imp);
  int add_point(const DataPoint& x);
  int id_of(const DataPoint& x) const;  // -1 when absent

  const std::vector<DataPoint>& points() const { return points_; }
  const std::vector<HornImplication>& implications() const { return implications_; }
  const std::vector<HornConstraint>& constraints() const { return constraints_; }
  bool empty() const { return points_.empty() && implications_.empty(); }

  /// Closure of the current implications (cached until the next addition).
  const HornClosure& propagate() const;
  std::vector<DataPoint> positives() const;
  std::vector<DataPoint> negatives() const;
  bool is_consistent() const { return propagate().consistent; }

  /// Points in both S+ and S-, plus the bodies of false-headed implications
  /// that lie entirely in S+.
  std::string explain_inconsistency() const;
  std::string dump() const;

 private:
  std::vector<DataPoint> points_;
  std::map<DataPoint, int> index_;
  std::vector<HornImplication> implications_;
  std::vector<HornConstraint> constraints_;
  mutable std::optional<HornClosure> closure_;
};

/// Label of a point under `j`.
bool classify(const Solution& j, const DataPoint& x);
/// Does every implication hold when points are labeled by `j`?
bool satisfies(const Sample& s, const Solution& j);

}  // namespace qice
