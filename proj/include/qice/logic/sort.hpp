#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <ostream>
#include <string>

namespace qice {

using BigInt = boost::multiprecision::cpp_int;

enum class SortKind : std::uint8_t { Int, Bool, Array };

/// Int, Bool, or a one-dimensional array whose elements are Int or Bool.
class Sort {
 public:
  constexpr Sort() = default;

  static constexpr Sort integer() { return Sort(SortKind::Int, SortKind::Int); }
  static constexpr Sort boolean() { return Sort(SortKind::Bool, SortKind::Bool); }
  /// Throws SortError when `element` is itself an array sort.
  static Sort array(Sort element);

  SortKind kind() const { return kind_; }
  bool is_int() const { return kind_ == SortKind::Int; }
  bool is_bool() const { return kind_ == SortKind::Bool; }
  bool is_array() const { return kind_ == SortKind::Array; }
  /// Element sort of an array sort; throws SortError otherwise.
  Sort element() const;

  std::string to_string() const;

  friend bool operator==(const Sort&, const Sort&) = default;
  friend auto operator<=>(const Sort&, const Sort&) = default;

 private:
  constexpr Sort(SortKind kind, SortKind elem) : kind_(kind), elem_(elem) {}

  SortKind kind_ = SortKind::Int;
  SortKind elem_ = SortKind::Int;
};

inline std::ostream& operator<<(std::ostream& os, const Sort& s) { return os << s.to_string(); }

}  // namespace qice
