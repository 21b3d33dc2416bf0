#include <cctype>
#include <string>
#include <vector>

#include "coopsem/error.hpp"
#include "coopsem/lang.hpp"

namespace coopsem {

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.type = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.type = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      static const char* two[] = {":=", "==", "<=", "||"};
      t.type = Tok::Sym;
      for (const char* s : two) {
        if (src.substr(i, 2) == s) t.text = s;
      }
      if (t.text.empty()) {
        if (std::string_view("+-*;(){}").find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        t.text = std::string(1, c);
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) {
  static const char* kws[] = {"skip",  "if",     "else",   "while", "async", "yield", "block", "blockuntil",
                              "finish", "choice", "or",    "rfork", "true",  "false", "not",   "and"};
  for (const char* k : kws)
    if (s == k) return true;
  return false;
}

class Parser {
 public:
  Parser(std::string_view src, const Config& cfg, ParseOptions opts)
      : toks_(lex(src)), cfg_(cfg), opts_(opts) {}

  CmdPtr command_eof() {
    CmdPtr c = command();
    expect_end();
    return c;
  }

  NExpPtr nexp_eof() {
    NExpPtr e = nexp();
    expect_end();
    return e;
  }

  BExpPtr bexp_eof() {
    BExpPtr b = bexp();
    expect_end();
    return b;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_sym(const char* s) const { return peek().type == Tok::Sym && peek().text == s; }
  bool at_kw(const char* s) const { return peek().type == Tok::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  std::string describe() const {
    if (peek().type == Tok::End) return "end of input";
    return "'" + peek().text + "'";
  }

  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "' but found " + describe());
    ++pos_;
  }

  void expect_kw(const char* s) {
    if (!at_kw(s)) fail(std::string("expected '") + s + "' but found " + describe());
    ++pos_;
  }

  void expect_end() {
    if (peek().type != Tok::End) fail("unexpected " + describe() + " after end of command");
  }

  void need_extensions(const char* what) {
    if (!opts_.allow_extensions) fail(std::string("'") + what + "' requires language extensions to be enabled");
  }

  // Com ::= Seq ("||" Seq)*
  CmdPtr command() {
    CmdPtr c = sequence();
    while (at_sym("||")) {
      need_extensions("||");
      ++pos_;
      c = par(c, sequence());
    }
    return c;
  }

  // Seq ::= Atom (";" Seq)?
  CmdPtr sequence() {
    CmdPtr a = atom();
    if (at_sym(";")) {
      ++pos_;
      return seq(a, sequence());
    }
    return a;
  }

  CmdPtr braced() {
    expect_sym("{");
    CmdPtr c = command();
    expect_sym("}");
    return c;
  }

  CmdPtr atom() {
    const Token& t = peek();
    if (at_sym("(")) {
      ++pos_;
      CmdPtr c = command();
      expect_sym(")");
      return c;
    }
    if (t.type != Tok::Ident) fail("expected a command but found " + describe());
    const std::string word = t.text;
    if (word == "skip") {
      ++pos_;
      return skip();
    }
    if (word == "yield") {
      ++pos_;
      return yield();
    }
    if (word == "block") {
      ++pos_;
      return block();
    }
    if (word == "if") {
      ++pos_;
      BExpPtr b = bexp();
      CmdPtr th = braced();
      expect_kw("else");
      return if_(b, th, braced());
    }
    if (word == "while") {
      ++pos_;
      BExpPtr b = bexp();
      return while_(b, braced());
    }
    if (word == "async") {
      ++pos_;
      return async(braced());
    }
    if (word == "blockuntil") {
      ++pos_;
      return blockuntil(bexp());
    }
    if (word == "finish") {
      need_extensions("finish");
      ++pos_;
      return finish(braced());
    }
    if (word == "rfork") {
      need_extensions("rfork");
      ++pos_;
      return rfork(braced());
    }
    if (word == "choice") {
      need_extensions("choice");
      ++pos_;
      CmdPtr a = braced();
      expect_kw("or");
      return choice(a, braced());
    }
    if (is_keyword(word)) fail("unexpected keyword '" + word + "'");
    const auto idx = cfg_.var_index(word);
    if (!idx) fail("unknown variable '" + word + "'");
    ++pos_;
    expect_sym(":=");
    return assign(word, *idx, nexp());
  }

  // NExp ::= Term (("+" | "-") Term)*
  NExpPtr nexp() {
    NExpPtr e = term();
    while (at_sym("+") || at_sym("-")) {
      const NOp op = at_sym("+") ? NOp::Add : NOp::Sub;
      ++pos_;
      e = bin(op, e, term());
    }
    return e;
  }

  NExpPtr term() {
    NExpPtr e = factor();
    while (at_sym("*")) {
      ++pos_;
      e = bin(NOp::Mul, e, factor());
    }
    return e;
  }

  NExpPtr factor() {
    const Token& t = peek();
    if (at_sym("(")) {
      ++pos_;
      NExpPtr e = nexp();
      expect_sym(")");
      return e;
    }
    if (t.type == Tok::Number) {
      if (t.text.size() > 9 || std::stoi(t.text) >= cfg_.k)
        fail("literal " + t.text + " is out of range for modulus " + std::to_string(cfg_.k));
      const int n = std::stoi(t.text);
      ++pos_;
      return lit(n);
    }
    if (t.type == Tok::Ident && !is_keyword(t.text)) {
      const auto idx = cfg_.var_index(t.text);
      if (!idx) fail("unknown variable '" + t.text + "'");
      ++pos_;
      return var(t.text, *idx);
    }
    fail("expected an expression but found " + describe());
  }

  // BExp ::= Conj ("or" Conj)*
  BExpPtr bexp() {
    BExpPtr b = conj();
    while (at_kw("or") && !next_is_brace()) {
      ++pos_;
      b = bor(b, conj());
    }
    return b;
  }

  // `choice { C } or { D }` never reaches here, but keep the test explicit.
  bool next_is_brace() const {
    return toks_[pos_ + 1].type == Tok::Sym && toks_[pos_ + 1].text == "{";
  }

  BExpPtr conj() {
    BExpPtr b = negation();
    while (at_kw("and")) {
      ++pos_;
      b = band(b, negation());
    }
    return b;
  }

  BExpPtr negation() {
    if (at_kw("not")) {
      ++pos_;
      return bnot(negation());
    }
    return batom();
  }

  BExpPtr batom() {
    if (at_kw("true")) {
      ++pos_;
      return btrue();
    }
    if (at_kw("false")) {
      ++pos_;
      return bfalse();
    }
    if (at_sym("(")) {
      // Either a parenthesised boolean or a comparison whose left operand
      // starts with a parenthesis. Try the boolean reading first.
      const std::size_t save = pos_;
      try {
        ++pos_;
        BExpPtr b = bexp();
        expect_sym(")");
        if (!at_sym("==") && !at_sym("<=")) return b;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    NExpPtr l = nexp();
    BOp op;
    if (at_sym("==")) {
      op = BOp::Eq;
    } else if (at_sym("<=")) {
      op = BOp::Le;
    } else {
      fail("expected '==' or '<=' but found " + describe());
    }
    ++pos_;
    return cmp(op, l, nexp());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Config& cfg_;
  ParseOptions opts_;
};

}  // namespace

CmdPtr parse(std::string_view text, const Config& cfg, ParseOptions opts) {
  cfg.validate();
  return Parser(text, cfg, opts).command_eof();
}

NExpPtr parse_nexp(std::string_view text, const Config& cfg) { return Parser(text, cfg, {}).nexp_eof(); }

BExpPtr parse_bexp(std::string_view text, const Config& cfg) { return Parser(text, cfg, {}).bexp_eof(); }

}  // namespace coopsem
