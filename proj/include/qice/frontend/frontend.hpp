#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qice/chc/system.hpp"
#include "qice/frontend/ast.hpp"
#include "qice/logic/pattern.hpp"

namespace qice {

/// Parses a mini-C program. Throws ParseError (with position) on syntax
/// errors and UnsupportedError for constructs outside the language
/// (pointers, dynamic memory, division, nonlinear arithmetic).
ProgramAst parse_program(std::string_view source);

/// Resolves scopes (shadowed declarations get fresh unique names) and
/// annotates every expression with its sort. Throws SortError.
void typecheck(ProgramAst& ast);

struct Location {
  std::string pred;
  std::string procedure;
  std::string kind;  // "loop", "pre" or "post"
  SourcePos pos;
};
using LocationMap = std::vector<Location>;

struct ChcOutput {
  ChcSystem system;
  LocationMap locations;
};

/// Constrained Horn clauses whose satisfiability is equivalent to the
/// safety of the program. Requires a typechecked AST.
ChcOutput gen_chc(const ProgramAst& ast);

/// Atoms of conditions, assignments and assume/assert properties with
/// variables and array reads abstracted to holes v1, v2, ... (integer atoms
/// with one to three holes).
std::vector<Pattern> extract_patterns(const ProgramAst& ast);

struct LoadedProgram {
  ProgramAst ast;
  ChcOutput chc;
  std::vector<Pattern> patterns;
};

LoadedProgram load_program(std::string_view source);
LoadedProgram load_program_file(const std::string& path);

}  // namespace qice
