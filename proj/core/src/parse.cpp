#include "bitbranch/parse.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace bitbranch {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + msg),
      line(line),
      column(column) {}

namespace {

enum class Tok {
  Ident,
  Int,
  KwVar,
  KwHavoc,
  KwAssume,
  KwError,
  KwIf,
  KwElse,
  KwWhile,
  KwIte,
  KwWidth,
  KwTrue,
  KwFalse,
  Assign,  // :=
  Semi,
  Comma,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Question,
  Colon,
  At,
  Star,
  Plus,
  Minus,
  Slash,
  Percent,
  Amp,
  Pipe,
  Caret,
  Shl,
  Shr,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  Ne,
  AmpAmp,
  PipePipe,
  Bang,
  Tilde,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

const std::map<std::string, Tok, std::less<>>& keywords() {
  static const std::map<std::string, Tok, std::less<>> kw = {
      {"var", Tok::KwVar},     {"havoc", Tok::KwHavoc},
      {"assume", Tok::KwAssume}, {"error", Tok::KwError},
      {"if", Tok::KwIf},       {"else", Tok::KwElse},
      {"while", Tok::KwWhile}, {"ite", Tok::KwIte},
      {"WIDTH", Tok::KwWidth}, {"true", Tok::KwTrue},
      {"false", Tok::KwFalse},
  };
  return kw;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i < text.size() && text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto peek = [&](std::size_t off = 0) -> char {
    return i + off < text.size() ? text[i + off] : '\0';
  };
  auto push = [&](Tok kind, std::string tok_text, int l, int c) {
    out.push_back(Token{kind, std::move(tok_text), 0, l, c});
  };

  while (i < text.size()) {
    const char c = peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < text.size() && peek() != '\n') bump(1);
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      const int l = line, cc = col;
      bump(2);
      while (i < text.size() && !(peek() == '*' && peek(1) == '/')) bump(1);
      if (i >= text.size()) throw ParseError("unterminated comment", l, cc);
      bump(2);
      continue;
    }
    const int l = line, cc = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits.push_back(peek());
        bump(1);
      }
      std::uint64_t v = 0;
      for (char d : digits) {
        v = v * 10 + static_cast<std::uint64_t>(d - '0');
        if (v > static_cast<std::uint64_t>(INT64_MAX)) {
          throw ParseError("integer literal out of range", l, cc);
        }
      }
      Token t{Tok::Int, digits, static_cast<std::int64_t>(v), l, cc};
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name.push_back(peek());
        bump(1);
      }
      auto it = keywords().find(name);
      push(it != keywords().end() ? it->second : Tok::Ident, std::move(name), l,
           cc);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    if (two(':', '=')) { push(Tok::Assign, ":=", l, cc); bump(2); continue; }
    if (two('<', '<')) { push(Tok::Shl, "<<", l, cc); bump(2); continue; }
    if (two('>', '>')) { push(Tok::Shr, ">>", l, cc); bump(2); continue; }
    if (two('<', '=')) { push(Tok::Le, "<=", l, cc); bump(2); continue; }
    if (two('>', '=')) { push(Tok::Ge, ">=", l, cc); bump(2); continue; }
    if (two('=', '=')) { push(Tok::EqEq, "==", l, cc); bump(2); continue; }
    if (two('!', '=')) { push(Tok::Ne, "!=", l, cc); bump(2); continue; }
    if (two('&', '&')) { push(Tok::AmpAmp, "&&", l, cc); bump(2); continue; }
    if (two('|', '|')) { push(Tok::PipePipe, "||", l, cc); bump(2); continue; }
    Tok kind;
    switch (c) {
      case ';': kind = Tok::Semi; break;
      case ',': kind = Tok::Comma; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '?': kind = Tok::Question; break;
      case ':': kind = Tok::Colon; break;
      case '@': kind = Tok::At; break;
      case '*': kind = Tok::Star; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '/': kind = Tok::Slash; break;
      case '%': kind = Tok::Percent; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Pipe; break;
      case '^': kind = Tok::Caret; break;
      case '<': kind = Tok::Lt; break;
      case '>': kind = Tok::Gt; break;
      case '!': kind = Tok::Bang; break;
      case '~': kind = Tok::Tilde; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
    }
    push(kind, std::string(1, c), l, cc);
    bump(1);
  }
  out.push_back(Token{Tok::End, "<end>", 0, line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, bool check_scope)
      : toks_(lex(text)), check_scope_(check_scope) {}

  Program program() {
    Program p;
    while (at(Tok::KwVar)) {
      advance();
      const Token& name = expect(Tok::Ident, "variable name");
      if (!declared_.insert(name.text).second) {
        throw ParseError("duplicate declaration of '" + name.text + "'",
                         name.line, name.column);
      }
      p.decls.push_back(Ident{name.text});
      expect(Tok::Semi, "';'");
    }
    while (!at(Tok::End)) p.body.push_back(statement());
    renumber_origins(p);
    return p;
  }

  ExprPtr expression_only() {
    ExprPtr e = expression();
    expect(Tok::End, "end of input");
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next(std::size_t off = 1) const {
    return toks_[std::min(pos_ + off, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  void advance() { if (pos_ + 1 < toks_.size()) ++pos_; }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) {
      throw ParseError("expected " + what + ", found '" + cur().text + "'",
                       cur().line, cur().column);
    }
    const Token& t = cur();
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, cur().line, cur().column);
  }

  Ident var_ref(const Token& t) {
    if (check_scope_ && !declared_.count(t.text)) {
      throw ParseError("undeclared variable '" + t.text + "'", t.line,
                       t.column);
    }
    return Ident{t.text};
  }

  Block block() {
    expect(Tok::LBrace, "'{'");
    Block b;
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) fail("unterminated block");
      b.push_back(statement());
    }
    advance();
    return b;
  }

  StmtPtr statement() {
    switch (cur().kind) {
      case Tok::KwVar:
        fail("declarations must precede statements");
      case Tok::KwHavoc: {
        advance();
        const Token& name = expect(Tok::Ident, "variable name");
        Ident id = var_ref(name);
        expect(Tok::Semi, "';'");
        return havoc(std::move(id));
      }
      case Tok::KwAssume: {
        advance();
        ExprPtr c = expression();
        expect(Tok::Semi, "';'");
        return assume(std::move(c));
      }
      case Tok::KwError: {
        advance();
        expect(Tok::Semi, "';'");
        return error();
      }
      case Tok::KwIf: {
        advance();
        expect(Tok::LParen, "'('");
        if (at(Tok::Star) && next().kind == Tok::RParen) {
          advance();
          advance();
          Block then_b = block();
          Block else_b;
          if (at(Tok::KwElse)) {
            advance();
            else_b = block();
          }
          return if_nondet(std::move(then_b), std::move(else_b));
        }
        ExprPtr c = expression();
        expect(Tok::RParen, "')'");
        Block then_b = block();
        Block else_b;
        if (at(Tok::KwElse)) {
          advance();
          else_b = block();
        }
        return if_cond(std::move(c), std::move(then_b), std::move(else_b));
      }
      case Tok::KwWhile: {
        advance();
        expect(Tok::LParen, "'('");
        if (at(Tok::Star) && next().kind == Tok::RParen) {
          fail("nondeterministic loop conditions are not supported");
        }
        ExprPtr c = expression();
        expect(Tok::RParen, "')'");
        Block body = block();
        return while_loop(std::move(c), std::move(body));
      }
      case Tok::Ident: {
        const Token name = cur();
        advance();
        expect(Tok::Assign, "':='");
        Ident id = var_ref(name);
        if (at(Tok::Star) && next().kind == Tok::Semi) {
          // x := * is sugar for havoc x
          advance();
          advance();
          return havoc(std::move(id));
        }
        ExprPtr rhs = expression();
        expect(Tok::Semi, "';'");
        return assign(std::move(id), std::move(rhs));
      }
      default:
        fail("expected a statement, found '" + cur().text + "'");
    }
  }

  // Precedence, loosest first: ?:  ||  &&  relational  |  ^  &  + -  * / %
  // << >>  unary.
  ExprPtr expression() { return ternary(); }

  ExprPtr ternary() {
    ExprPtr c = log_or();
    if (at(Tok::Question)) {
      advance();
      ExprPtr t = expression();
      expect(Tok::Colon, "':'");
      ExprPtr e = ternary();
      return ite(std::move(c), std::move(t), std::move(e));
    }
    return c;
  }

  ExprPtr log_or() {
    ExprPtr e = log_and();
    while (at(Tok::PipePipe)) {
      advance();
      e = binary(BinOp::LogOr, std::move(e), log_and());
    }
    return e;
  }

  ExprPtr log_and() {
    ExprPtr e = relational();
    while (at(Tok::AmpAmp)) {
      advance();
      e = binary(BinOp::LogAnd, std::move(e), relational());
    }
    return e;
  }

  ExprPtr relational() {
    ExprPtr e = bit_or();
    for (;;) {
      BinOp op;
      switch (cur().kind) {
        case Tok::Lt: op = BinOp::Lt; break;
        case Tok::Le: op = BinOp::Le; break;
        case Tok::Gt: op = BinOp::Gt; break;
        case Tok::Ge: op = BinOp::Ge; break;
        case Tok::EqEq: op = BinOp::Eq; break;
        case Tok::Ne: op = BinOp::Ne; break;
        default: return e;
      }
      advance();
      e = binary(op, std::move(e), bit_or());
    }
  }

  ExprPtr bit_or() {
    ExprPtr e = bit_xor();
    while (at(Tok::Pipe)) {
      advance();
      e = binary(BinOp::BitOr, std::move(e), bit_xor());
    }
    return e;
  }

  ExprPtr bit_xor() {
    ExprPtr e = bit_and();
    while (at(Tok::Caret)) {
      advance();
      e = binary(BinOp::BitXor, std::move(e), bit_and());
    }
    return e;
  }

  ExprPtr bit_and() {
    ExprPtr e = additive();
    while (at(Tok::Amp)) {
      advance();
      e = binary(BinOp::BitAnd, std::move(e), additive());
    }
    return e;
  }

  ExprPtr additive() {
    ExprPtr e = multiplicative();
    for (;;) {
      if (at(Tok::Plus)) {
        advance();
        e = binary(BinOp::Add, std::move(e), multiplicative());
      } else if (at(Tok::Minus)) {
        advance();
        e = binary(BinOp::Sub, std::move(e), multiplicative());
      } else {
        return e;
      }
    }
  }

  ExprPtr multiplicative() {
    ExprPtr e = shift();
    for (;;) {
      BinOp op;
      switch (cur().kind) {
        case Tok::Star: op = BinOp::Mul; break;
        case Tok::Slash: op = BinOp::Div; break;
        case Tok::Percent: op = BinOp::Mod; break;
        default: return e;
      }
      advance();
      e = binary(op, std::move(e), shift());
    }
  }

  ExprPtr shift() {
    ExprPtr e = unary_expr();
    for (;;) {
      BinOp op;
      switch (cur().kind) {
        case Tok::Shl: op = BinOp::Shl; break;
        case Tok::Shr: op = BinOp::Shr; break;
        default: return e;
      }
      advance();
      e = binary(op, std::move(e), unary_expr());
    }
  }

  ExprPtr unary_expr() {
    switch (cur().kind) {
      case Tok::Minus:
        advance();
        return unary(UnOp::Neg, unary_expr());
      case Tok::Bang:
        advance();
        return unary(UnOp::LogNot, unary_expr());
      case Tok::Tilde:
        advance();
        return unary(UnOp::BitNot, unary_expr());
      default:
        return primary();
    }
  }

  ExprPtr primary() {
    switch (cur().kind) {
      case Tok::Int: {
        const std::int64_t v = cur().value;
        advance();
        return lit(v);
      }
      case Tok::KwTrue:
        advance();
        return boolean(true);
      case Tok::KwFalse:
        advance();
        return boolean(false);
      case Tok::KwWidth:
        advance();
        return width();
      case Tok::Ident: {
        const Token t = cur();
        advance();
        return var(var_ref(t));
      }
      case Tok::LParen: {
        advance();
        ExprPtr e = expression();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::KwIte: {
        advance();
        expect(Tok::LParen, "'('");
        ExprPtr c = expression();
        expect(Tok::Comma, "','");
        ExprPtr t = expression();
        expect(Tok::Comma, "','");
        ExprPtr e = expression();
        expect(Tok::RParen, "')'");
        return ite(std::move(c), std::move(t), std::move(e));
      }
      case Tok::At: {
        advance();
        expect(Tok::LParen, "'('");
        ExprPtr e = expression();
        expect(Tok::RParen, "')'");
        return opaque(std::move(e));
      }
      case Tok::Star:
        fail("'*' is only allowed as 'x := *;' or 'if (*)'");
      default:
        fail("expected an expression, found '" + cur().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool check_scope_ = false;
  std::set<std::string, std::less<>> declared_;
};

}  // namespace

Program parse_program(std::string_view text) {
  Parser p(text, /*check_scope=*/true);
  return p.program();
}

ExprPtr parse_expr(std::string_view text) {
  Parser p(text, /*check_scope=*/false);
  return p.expression_only();
}

}  // namespace bitbranch
