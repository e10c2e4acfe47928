#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qice/logic/term.hpp"

namespace qice {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class ExprKind : std::uint8_t {
  IntLit,
  BoolLit,
  Var,
  Read,    // name[args[0]]
  Unary,   // op: "-" or "!"
  Binary,  // op: + - * / % < <= > >= == != && || =>
  Call,    // name(args)
  Forall,  // forall bound. args[0]
  Embedded,  // (qprop ...) or another s-expression formula; `term` after typecheck
};

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  SourcePos pos;
  std::string op;
  std::string name;  // variable, array, callee; unique name after typecheck
  BigInt value = 0;
  bool flag = false;  // BoolLit
  std::vector<std::string> bound;  // Forall
  std::vector<std::string> bound_arrays;  // Forall, filled by typecheck (unique names)
  std::string text;  // Embedded source
  Term term;         // Embedded, after typecheck (over unique names)
  std::vector<std::shared_ptr<Expr>> args;
  Sort sort;  // after typecheck
};
using ExprPtr = std::shared_ptr<Expr>;

enum class StmtKind : std::uint8_t {
  VarDecl,     // type name [= init]
  ArrayDecl,   // type name[size]
  Assign,      // name = value   (value may be a Call)
  ArrayStore,  // name[index] = value
  If,
  While,
  Assume,
  Assert,
  CallStmt,  // value is the Call
  Return,    // optional value
  Block,
};

struct Stmt {
  StmtKind kind = StmtKind::Block;
  SourcePos pos;
  std::string name;  // declared / assigned variable (unique after typecheck)
  Sort sort;         // VarDecl / ArrayDecl: declared sort
  bool is_unsigned = false;
  ExprPtr value;  // init, assigned value, size (ArrayDecl), condition, property, returned value
  ExprPtr index;  // ArrayStore
  std::vector<std::shared_ptr<Stmt>> body;       // Block, If-then, While body
  std::vector<std::shared_ptr<Stmt>> else_body;  // If
  bool has_else = false;
};
using StmtPtr = std::shared_ptr<Stmt>;

struct ParamDecl {
  std::string name;  // unique after typecheck
  Sort sort;
  bool is_unsigned = false;
  SourcePos pos;
};

struct Procedure {
  std::string name;
  std::optional<Sort> result;  // nullopt for void
  std::vector<ParamDecl> params;
  std::vector<StmtPtr> body;
  SourcePos pos;
};

struct VarInfo {
  std::string unique;
  std::string source;
  Sort sort;
  bool is_unsigned = false;
  std::string procedure;
};

struct ProgramAst {
  std::vector<Procedure> procedures;
  /// Filled by typecheck: every declared variable in declaration order.
  std::vector<VarInfo> vars;
  bool typed = false;

  const Procedure* find(const std::string& name) const;
};

}  // namespace qice
