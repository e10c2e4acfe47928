#include "qice/logic/sexpr.hpp"

#include <cctype>

#include "qice/logic/errors.hpp"

namespace qice {

std::string SExpr::head() const {
  if (atom || items.empty() || !items[0].atom) return "";
  return items[0].text;
}

std::string SExpr::to_string() const {
  if (atom) return text;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].to_string();
  }
  return out + ")";
}

void parse_fail(const SExpr& at, const std::string& msg) { throw ParseError(msg, at.line, at.column); }

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < s_.size()) {
      out.push_back(one());
      skip();
    }
    return out;
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr one() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = s_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '(') {
      advance();
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unterminated list", e.line, e.column);
        if (s_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(one());
      }
      return e;
    }
    e.atom = true;
    if (c == '|') {
      advance();
      while (pos_ < s_.size() && s_[pos_] != '|') {
        e.text.push_back(s_[pos_]);
        advance();
      }
      if (pos_ >= s_.size()) throw ParseError("unterminated quoted symbol", e.line, e.column);
      advance();
      return e;
    }
    if (c == '"') {
      e.text.push_back(c);
      advance();
      while (pos_ < s_.size() && s_[pos_] != '"') {
        e.text.push_back(s_[pos_]);
        advance();
      }
      if (pos_ >= s_.size()) throw ParseError("unterminated string", e.line, e.column);
      e.text.push_back('"');
      advance();
      return e;
    }
    while (pos_ < s_.size()) {
      char d = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      e.text.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) { return Reader(text).all(); }

SExpr parse_sexpr(std::string_view text) {
  auto all = parse_sexprs(text);
  if (all.size() != 1) throw ParseError("expected exactly one s-expression", 1, 1);
  return all.front();
}

}  // namespace qice
