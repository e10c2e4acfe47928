#include <cctype>
#include <fstream>
#include <sstream>

#include "qice/frontend/frontend.hpp"
#include "qice/logic/errors.hpp"

namespace qice {

const Procedure* ProgramAst::find(const std::string& name) const {
  for (const auto& p : procedures)
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

enum class Tok : std::uint8_t { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  std::size_t offset = 0;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* puncts[] = {"<=", ">=", "==", "!=", "&&", "||", "=>", "++", "--", "+=", "-=",
                                 "{",  "}",  "(",  ")",  "[",  "]",  ";",  ",",  ".",  "=",  "<",
                                 ">",  "+",  "-",  "*",  "/",  "%",  "!",  "&",  "?",  ":"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (src.substr(i, 2) == "/*") {
      SourcePos start{line, col};
      advance(2);
      while (i < src.size() && src.substr(i, 2) != "*/") advance(1);
      if (i >= src.size()) throw ParseError("unterminated comment", start.line, start.column);
      advance(2);
      continue;
    }
    Token t;
    t.pos = {line, col};
    t.offset = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      bool found = false;
      for (const char* p : puncts) {
        std::string_view pv(p);
        if (src.substr(i, pv.size()) == pv) {
          t.kind = Tok::Punct;
          t.text = std::string(pv);
          advance(pv.size());
          found = true;
          break;
        }
      }
      if (!found) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = {line, col};
  end.offset = src.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  ProgramAst program() {
    ProgramAst ast;
    while (peek().kind != Tok::End) ast.procedures.push_back(procedure());
    return ast;
  }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
  bool is(const std::string& text, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind != Tok::End && t.kind != Tok::Number && t.text == text;
  }
  bool accept(const std::string& text) {
    if (!is(text)) return false;
    ++at_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.pos.line, t.pos.column);
  }
  const Token& expect(const std::string& text) {
    if (!is(text)) fail("expected '" + text + "'");
    return toks_[at_++];
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    if (is_keyword(peek().text)) fail("unexpected keyword");
    return toks_[at_++].text;
  }

  static bool is_keyword(const std::string& s) {
    static const char* kws[] = {"int",    "bool",   "void", "unsigned", "if",     "else",  "while", "for",
                                "return", "assume", "assert", "true",   "false",  "forall"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  static void unsupported(const Token& t, const std::string& what) {
    throw UnsupportedError(std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) + ": " + what +
                           " is not supported");
  }

  bool at_type() const { return is("int") || is("bool") || is("unsigned") || is("void"); }

  // Returns nullopt for void.
  std::optional<Sort> type(bool& is_unsigned) {
    is_unsigned = false;
    std::optional<Sort> s;
    if (accept("void")) {
      s = std::nullopt;
    } else if (accept("bool")) {
      s = Sort::boolean();
    } else if (accept("unsigned")) {
      accept("int");
      is_unsigned = true;
      s = Sort::integer();
    } else if (accept("int")) {
      s = Sort::integer();
    } else {
      fail("expected type");
    }
    if (is("*")) unsupported(peek(), "pointer type");
    return s;
  }

  Procedure procedure() {
    Procedure p;
    p.pos = peek().pos;
    bool uns = false;
    p.result = type(uns);
    p.name = ident();
    expect("(");
    if (is("void") && is(")", 1)) {
      ++at_;
    } else if (!is(")")) {
      do {
        ParamDecl d;
        d.pos = peek().pos;
        auto s = type(d.is_unsigned);
        if (!s) fail("parameter of type void");
        d.name = ident();
        if (accept("[")) {
          expect("]");
          d.sort = Sort::array(*s);
        } else {
          d.sort = *s;
        }
        p.params.push_back(d);
      } while (accept(","));
    }
    expect(")");
    p.body = block();
    return p;
  }

  std::vector<StmtPtr> block() {
    expect("{");
    std::vector<StmtPtr> out;
    while (!is("}")) {
      if (peek().kind == Tok::End) fail("expected '}'");
      statement(out);
    }
    expect("}");
    return out;
  }

  // Body of if/while/for: a block or a single statement.
  std::vector<StmtPtr> body() {
    if (is("{")) return block();
    std::vector<StmtPtr> out;
    statement(out);
    return out;
  }

  static StmtPtr make(StmtKind k, SourcePos pos) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    s->pos = pos;
    return s;
  }

  void declaration(std::vector<StmtPtr>& out) {
    SourcePos pos = peek().pos;
    bool uns = false;
    auto s = type(uns);
    if (!s) fail("variable of type void");
    do {
      SourcePos dpos = peek().pos;
      std::string name = ident();
      if (accept("[")) {
        auto st = make(StmtKind::ArrayDecl, dpos);
        st->name = name;
        st->sort = Sort::array(*s);
        st->is_unsigned = uns;
        st->value = expr();
        expect("]");
        out.push_back(st);
      } else {
        auto st = make(StmtKind::VarDecl, dpos);
        st->name = name;
        st->sort = *s;
        st->is_unsigned = uns;
        if (accept("=")) st->value = expr();
        out.push_back(st);
      }
    } while (accept(","));
    (void)pos;
  }

  void statement(std::vector<StmtPtr>& out) {
    SourcePos pos = peek().pos;
    if (is("{")) {
      auto st = make(StmtKind::Block, pos);
      st->body = block();
      out.push_back(st);
      return;
    }
    if (at_type()) {
      declaration(out);
      expect(";");
      return;
    }
    if (accept("if")) {
      auto st = make(StmtKind::If, pos);
      expect("(");
      st->value = expr();
      expect(")");
      st->body = body();
      if (accept("else")) {
        st->has_else = true;
        st->else_body = body();
      }
      out.push_back(st);
      return;
    }
    if (accept("while")) {
      auto st = make(StmtKind::While, pos);
      expect("(");
      st->value = expr();
      expect(")");
      st->body = body();
      out.push_back(st);
      return;
    }
    if (accept("for")) {
      // for (init; cond; step) body  ==>  { init; while (cond) { body; step } }
      auto outer = make(StmtKind::Block, pos);
      expect("(");
      if (!is(";")) {
        if (at_type())
          declaration(outer->body);
        else
          simple(outer->body);
      }
      expect(";");
      auto loop = make(StmtKind::While, pos);
      if (is(";")) {
        loop->value = std::make_shared<Expr>();
        loop->value->kind = ExprKind::BoolLit;
        loop->value->flag = true;
        loop->value->pos = pos;
      } else {
        loop->value = expr();
      }
      expect(";");
      std::vector<StmtPtr> step;
      if (!is(")")) simple(step);
      expect(")");
      auto inner = make(StmtKind::Block, pos);
      inner->body = body();
      loop->body.push_back(inner);
      for (auto& s : step) loop->body.push_back(s);
      outer->body.push_back(loop);
      out.push_back(outer);
      return;
    }
    if (accept("assume") || accept("assert")) {
      bool assume = toks_[at_ - 1].text == "assume";
      auto st = make(assume ? StmtKind::Assume : StmtKind::Assert, pos);
      expect("(");
      st->value = expr();
      expect(")");
      expect(";");
      out.push_back(st);
      return;
    }
    if (accept("return")) {
      auto st = make(StmtKind::Return, pos);
      if (!is(";")) st->value = expr();
      expect(";");
      out.push_back(st);
      return;
    }
    if (accept(";")) return;
    simple(out);
    expect(";");
  }

  static ExprPtr binary(const std::string& op, ExprPtr a, ExprPtr b, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Binary;
    e->op = op;
    e->pos = pos;
    e->args = {std::move(a), std::move(b)};
    return e;
  }
  static ExprPtr int_lit(long long v, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::IntLit;
    e->value = v;
    e->pos = pos;
    return e;
  }
  static ExprPtr var_ref(const std::string& name, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->name = name;
    e->pos = pos;
    return e;
  }

  // Assignment-like statements without the trailing ';'.
  void simple(std::vector<StmtPtr>& out) {
    SourcePos pos = peek().pos;
    if (is("*") || is("&")) unsupported(peek(), "pointer");
    if (is("++") || is("--")) {
      std::string op = toks_[at_++].text == "++" ? "+" : "-";
      SourcePos vpos = peek().pos;
      std::string name = ident();
      auto st = make(StmtKind::Assign, pos);
      st->name = name;
      st->value = binary(op, var_ref(name, vpos), int_lit(1, pos), pos);
      out.push_back(st);
      return;
    }
    std::string name = ident();
    if (name == "malloc" || name == "free") unsupported(toks_[at_ - 1], "dynamic memory");
    if (is("(")) {
      auto st = make(StmtKind::CallStmt, pos);
      st->value = call(name, pos);
      out.push_back(st);
      return;
    }
    ExprPtr index;
    if (accept("[")) {
      index = expr();
      expect("]");
    }
    auto target = [&]() {
      if (!index) return var_ref(name, pos);
      auto r = std::make_shared<Expr>();
      r->kind = ExprKind::Read;
      r->name = name;
      r->pos = pos;
      r->args = {index};
      return r;
    };
    ExprPtr value;
    if (accept("=")) {
      value = expr();
    } else if (is("++") || is("--") || is("+=") || is("-=")) {
      std::string op = toks_[at_++].text;
      std::string bop = op[0] == '+' ? "+" : "-";
      ExprPtr rhs = op.size() == 2 && op[1] == '=' ? expr() : int_lit(1, pos);
      value = binary(bop, target(), rhs, pos);
    } else {
      fail("expected assignment");
    }
    auto st = make(index ? StmtKind::ArrayStore : StmtKind::Assign, pos);
    st->name = name;
    st->index = index;
    st->value = value;
    out.push_back(st);
  }

  ExprPtr call(const std::string& name, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Call;
    e->name = name;
    e->pos = pos;
    expect("(");
    if (!is(")")) {
      do e->args.push_back(expr());
      while (accept(","));
    }
    expect(")");
    return e;
  }

  ExprPtr expr() { return implication(); }

  ExprPtr implication() {
    if (is("forall")) return forall();
    SourcePos pos = peek().pos;
    ExprPtr lhs = disjunction();
    if (accept("=>")) return binary("=>", lhs, implication(), pos);
    return lhs;
  }

  ExprPtr forall() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Forall;
    e->pos = peek().pos;
    expect("forall");
    do {
      e->bound.push_back(ident());
      accept(",");
    } while (!is("."));
    expect(".");
    e->args = {implication()};
    return e;
  }

  ExprPtr disjunction() {
    ExprPtr lhs = conjunction();
    while (is("||")) {
      SourcePos pos = peek().pos;
      ++at_;
      lhs = binary("||", lhs, conjunction(), pos);
    }
    return lhs;
  }

  ExprPtr conjunction() {
    ExprPtr lhs = equality();
    while (is("&&")) {
      SourcePos pos = peek().pos;
      ++at_;
      lhs = binary("&&", lhs, equality(), pos);
    }
    return lhs;
  }

  ExprPtr equality() {
    ExprPtr lhs = relational();
    while (is("==") || is("!=")) {
      SourcePos pos = peek().pos;
      std::string op = toks_[at_++].text;
      lhs = binary(op, lhs, relational(), pos);
    }
    return lhs;
  }

  // Chains such as 0 <= k1 <= k2 < N read as conjunctions.
  ExprPtr relational() {
    ExprPtr first = additive();
    ExprPtr result;
    ExprPtr prev = first;
    while (is("<") || is("<=") || is(">") || is(">=")) {
      SourcePos pos = peek().pos;
      std::string op = toks_[at_++].text;
      ExprPtr next = additive();
      ExprPtr cmp = binary(op, prev, next, pos);
      result = result ? binary("&&", result, cmp, pos) : cmp;
      prev = next;
    }
    return result ? result : first;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (is("+") || is("-")) {
      SourcePos pos = peek().pos;
      std::string op = toks_[at_++].text;
      lhs = binary(op, lhs, multiplicative(), pos);
    }
    return lhs;
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (is("*") || is("/") || is("%")) {
      if (!is("*")) unsupported(peek(), "division");
      SourcePos pos = peek().pos;
      ++at_;
      lhs = binary("*", lhs, unary(), pos);
    }
    return lhs;
  }

  ExprPtr unary() {
    SourcePos pos = peek().pos;
    if (is("-") || is("!")) {
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::Unary;
      e->op = toks_[at_++].text;
      e->pos = pos;
      e->args = {unary()};
      return e;
    }
    if (is("&") || is("*")) unsupported(peek(), "pointer");
    return primary();
  }

  ExprPtr embedded() {
    const Token& open = peek();
    int depth = 0;
    std::size_t j = at_;
    for (; j < toks_.size(); ++j) {
      if (toks_[j].kind == Tok::End) throw ParseError("unbalanced s-expression", open.pos.line, open.pos.column);
      if (toks_[j].kind == Tok::Punct && toks_[j].text == "(") ++depth;
      if (toks_[j].kind == Tok::Punct && toks_[j].text == ")" && --depth == 0) break;
    }
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Embedded;
    e->pos = open.pos;
    e->text = std::string(src_.substr(open.offset, toks_[j].offset + 1 - open.offset));
    at_ = j + 1;
    return e;
  }

  ExprPtr primary() {
    SourcePos pos = peek().pos;
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      ++at_;
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::IntLit;
      e->value = BigInt(t.text);
      e->pos = pos;
      return e;
    }
    if (accept("true") || accept("false")) {
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::BoolLit;
      e->flag = toks_[at_ - 1].text == "true";
      e->pos = pos;
      return e;
    }
    if (is("(")) {
      if (is("qprop", 1) || (is("forall", 1) && is("-", 2))) return embedded();
      ++at_;
      ExprPtr inner = expr();
      expect(")");
      return inner;
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      std::string name = ident();
      if (name == "malloc" || name == "free") unsupported(t, "dynamic memory");
      if (is("(")) return call(name, pos);
      if (accept("[")) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Read;
        e->name = name;
        e->pos = pos;
        e->args = {expr()};
        expect("]");
        return e;
      }
      return var_ref(name, pos);
    }
    fail("expected expression");
  }
};

}  // namespace

ProgramAst parse_program(std::string_view source) { return Parser(source).program(); }

LoadedProgram load_program(std::string_view source) {
  LoadedProgram out;
  out.ast = parse_program(source);
  typecheck(out.ast);
  out.chc = gen_chc(out.ast);
  out.patterns = extract_patterns(out.ast);
  return out;
}

LoadedProgram load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_program(ss.str());
}

}  // namespace qice
