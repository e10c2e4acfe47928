#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qice/diagram/diagram.hpp"
#include "qice/logic/pattern.hpp"

namespace qice {

enum class AttributeKind : std::uint8_t { Boolean, Interval, UpperBound, Octagon, Extracted };

/// A split predicate over the diagram variables of one predicate. Linear
/// attributes are sum(coeff * var) <= bound (or = bound); boolean ones test a
/// boolean diagram variable.
struct Attribute {
  enum class Rel : std::uint8_t { Leq, Eq, Bool };

  std::string pred;
  Term atom = mk_true();
  AttributeKind kind = AttributeKind::Boolean;
  std::optional<BigInt> constant;

  Rel rel = Rel::Bool;
  std::vector<std::pair<int, BigInt>> coeffs;  // diagram variable index, coefficient
  BigInt bound = 0;
  int var = -1;  // Bool

  bool eval(const Diagram& d) const;
  /// Normal form used for deduplication.
  std::string key() const;
};

/// Attributes per predicate for a given quantifier scheme and constant bound.
struct AttributePool {
  int k = 1;
  bool ordered = true;
  std::vector<Pattern> patterns;
  std::map<std::string, std::vector<Attribute>> attrs;
  std::map<std::string, PredScheme> schemes;

  std::size_t size() const;
  const std::vector<Attribute>& of(const std::string& pred) const;
};

/// Does a linear atom stay within the decidable fragment once lifted?
/// Quantifier variables occur alone (coefficient +-1, no value variables) or
/// as a bare comparison k - k' <= 0; value variables never meet quantifier
/// variables. In ordered mode same-array comparisons are dropped as redundant.
bool admissible(const PredScheme& ps, const std::vector<std::pair<int, BigInt>>& coeffs, Attribute::Rel rel,
                const BigInt& bound, bool ordered);

/// Boolean variables, upper bounds v1 <= v2 and extracted patterns, plus
/// intervals and octagons with |c| <= k, over each predicate's diagram
/// variables. k = -1 is the seed pool without the constant families.
AttributePool make_pool(const QuantifierScheme& scheme, int k, std::vector<Pattern> patterns, bool ordered);

/// The pool re-instantiated with constant bound k + 1.
AttributePool generate_attributes(const AttributePool& pool, const QuantifierScheme& scheme);

/// Linear attribute from an integer atom over diagram variables; nullopt when
/// the atom is not a linear comparison over them.
std::optional<Attribute> attribute_from_atom(const PredScheme& ps, const Term& atom, AttributeKind kind);

}  // namespace qice
