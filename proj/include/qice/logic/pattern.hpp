#pragma once

#include <string>
#include <vector>

#include "qice/logic/term.hpp"

namespace qice {

/// Index-like (array positions, lengths) or value-like (array contents)
/// integers; Any when unknown or mixed.
enum class IntClass : std::uint8_t { Any, Index, Value };

/// What a hole stood for in the source atom: a program scalar, a quantified
/// index, an array cell or a length. Any when unknown.
enum class HoleKind : std::uint8_t { Any, Scalar, Quantifier, Cell, Length };

/// An integer atom over holes v1..vm, e.g. (= v1 (- v2 v3)). Instantiated by
/// substituting distinct integer variables for the holes.
struct Pattern {
  std::size_t arity = 0;
  Term atom = mk_true();
  /// Class of each hole; empty means Any throughout.
  std::vector<IntClass> holes;
  /// Kind of each hole; empty means Any throughout.
  std::vector<HoleKind> kinds;

  IntClass hole_class(std::size_t i) const { return i < holes.size() ? holes[i] : IntClass::Any; }
  HoleKind hole_kind(std::size_t i) const { return i < kinds.size() ? kinds[i] : HoleKind::Any; }

  static std::string hole(std::size_t i) { return "v" + std::to_string(i + 1); }
  Term instantiate(const std::vector<Term>& vars) const;
  std::string to_string() const { return atom.to_string(); }

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.arity == b.arity && a.atom == b.atom && a.holes == b.holes && a.kinds == b.kinds;
  }
  friend bool operator<(const Pattern& a, const Pattern& b) {
    if (a.arity != b.arity) return a.arity < b.arity;
    if (a.atom != b.atom) return a.atom < b.atom;
    if (a.holes != b.holes) return a.holes < b.holes;
    return a.kinds < b.kinds;
  }
};

}  // namespace qice
