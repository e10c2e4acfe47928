#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "qice/logic/sort.hpp"

namespace qice {

/// Concrete value of sort Int, Bool or array. Boolean array elements are
/// stored as 0/1.
class Value {
 public:
  Value() = default;

  static Value of_int(const BigInt& v);
  static Value of_int(long long v) { return of_int(BigInt(v)); }
  static Value of_bool(bool v);
  static Value of_array(Sort element, std::vector<BigInt> elems);
  static Value int_array(const std::vector<long long>& elems);
  static Value bool_array(const std::vector<bool>& elems);
  /// Default value of a sort: 0, false, or the empty array.
  static Value zero(Sort sort);

  Sort sort() const { return sort_; }
  const BigInt& as_int() const;
  bool as_bool() const;
  const std::vector<BigInt>& elems() const;
  std::size_t size() const { return elems().size(); }
  /// Element as a value of the element sort; out-of-range gives the default.
  Value at(const BigInt& idx) const;

  std::string to_string() const;

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Sort sort_ = Sort::integer();
  BigInt num_;
  std::vector<BigInt> elems_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

using Valuation = std::map<std::string, Value>;

std::string valuation_to_string(const Valuation& env);

}  // namespace qice
