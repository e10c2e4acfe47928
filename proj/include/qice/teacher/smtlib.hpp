#pragma once

#include <map>
#include <string>
#include <vector>

#include "qice/chc/system.hpp"

namespace qice {

/// Quotes a symbol with |...| unless it is a simple SMT-LIB symbol.
std::string smt_symbol(const std::string& name);
std::string smt_sort(Sort s);

/// Standard-theory rendering of a formula over parametric-size arrays: each
/// array variable a becomes an unbounded array u_a with an integer length
/// l_a; reads outside [0, l_a) yield the element default, out-of-range
/// writes leave the array unchanged, |a| becomes l_a.
struct Encoded {
  struct ArrayVar {
    std::string u, l;
    Sort sort;
  };
  std::string formula;
  std::vector<std::string> declarations;  // declare-const commands
  std::vector<std::string> side;          // l_a >= 0 per array
  std::map<std::string, ArrayVar> arrays;  // by original variable name
};

/// Encodes `f` whose free variables are given by `env` (scalars keep their
/// names). Encoded names are fresh with respect to every name in f and env.
Encoded encode(const Term& f, const SortEnv& env);

/// The system in SMT-LIB HORN form with predicates uninterpreted; each array
/// parameter is passed as an unbounded array and its length.
std::string export_horn(const ChcSystem& sys);

}  // namespace qice
