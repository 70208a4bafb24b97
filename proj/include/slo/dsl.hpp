#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "slo/error.hpp"
#include "slo/signature.hpp"
#include "slo/term.hpp"

namespace slo {

// Grammar (whitespace-insensitive, '#' starts a line comment):
//   signature := "signature" NAME item* "end"
//   item      := "op" NAME ":" INT | "const" NAME | "join" NAME | "zero" NAME | "unit" NAME
//   term      := NAME | NAME "(" term ("," term)* ")"
//   identity  := term "=" term

namespace detail {

struct Token {
  enum class Kind { name, lparen, rparen, comma, colon, equals, end };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  Token expect(Token::Kind kind, const char* what) {
    if (current_.kind != kind) fail(std::string("expected ") + what + ", found " + describe(current_));
    return take();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, current_.line, current_.column); }

  static std::string describe(const Token& t) {
    switch (t.kind) {
    case Token::Kind::name: return "'" + t.text + "'";
    case Token::Kind::end: return "end of input";
    default: return "'" + t.text + "'";
    }
  }

private:
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        bump();
      } else {
        break;
      }
    }
    const std::size_t line = line_;
    const std::size_t col = col_;
    if (pos_ >= src_.size()) {
      current_ = {Token::Kind::end, "", line, col};
      return;
    }
    const char c = src_[pos_];
    auto single = [&](Token::Kind k) {
      current_ = {k, std::string(1, c), line, col};
      bump();
    };
    switch (c) {
    case '(': single(Token::Kind::lparen); return;
    case ')': single(Token::Kind::rparen); return;
    case ',': single(Token::Kind::comma); return;
    case ':': single(Token::Kind::colon); return;
    case '=': single(Token::Kind::equals); return;
    default: break;
    }
    if (!name_char(c)) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    std::string text;
    while (pos_ < src_.size() && name_char(src_[pos_])) {
      text += src_[pos_];
      bump();
    }
    current_ = {Token::Kind::name, std::move(text), line, col};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_{Token::Kind::end, "", 1, 1};
};

inline Term parse_term_from(Lexer& lex, const Signature& sig) {
  const Token head = lex.expect(Token::Kind::name, "a name");
  const auto idx = sig.find(head.text);
  if (lex.peek().kind != Token::Kind::lparen) {
    if (!idx) return Term::var(head.text);
    if (sig.op(*idx).arity != 0)
      throw SemanticError("symbol '" + head.text + "' expects " + std::to_string(sig.op(*idx).arity) +
                          " arguments, got 0 at " + std::to_string(head.line) + ":" + std::to_string(head.column));
    return Term::op(head.text);
  }
  if (!idx)
    throw SemanticError("unknown symbol '" + head.text + "' at " + std::to_string(head.line) + ":" +
                        std::to_string(head.column));
  lex.take();
  std::vector<Term> args;
  args.push_back(parse_term_from(lex, sig));
  while (lex.peek().kind == Token::Kind::comma) {
    lex.take();
    args.push_back(parse_term_from(lex, sig));
  }
  lex.expect(Token::Kind::rparen, "')'");
  if (args.size() != sig.op(*idx).arity)
    throw SemanticError("symbol '" + head.text + "' expects " + std::to_string(sig.op(*idx).arity) +
                        " arguments, got " + std::to_string(args.size()) + " at " + std::to_string(head.line) + ":" +
                        std::to_string(head.column));
  return Term::op(head.text, std::move(args));
}

} // namespace detail

/// Parse a signature block. A `const` symbol becomes the unit unless the
/// block contains an explicit `unit` item or designates it as the zero.
inline Signature parse_signature(std::string_view text) {
  using detail::Token;
  detail::Lexer lex(text);
  const Token kw = lex.expect(Token::Kind::name, "'signature'");
  if (kw.text != "signature") throw ParseError("expected 'signature', found '" + kw.text + "'", kw.line, kw.column);
  Signature sig(lex.expect(Token::Kind::name, "signature name").text);
  std::vector<std::string> consts;
  bool explicit_unit = false;
  while (true) {
    const Token item = lex.expect(Token::Kind::name, "an item or 'end'");
    if (item.text == "end") break;
    auto located = [&](const std::string& msg) {
      return SemanticError(msg + " at " + std::to_string(item.line) + ":" + std::to_string(item.column));
    };
    const Token name = lex.expect(Token::Kind::name, "a symbol name");
    try {
      if (item.text == "op") {
        lex.expect(Token::Kind::colon, "':'");
        const Token ar = lex.expect(Token::Kind::name, "an arity");
        if (ar.text.empty() || ar.text.find_first_not_of("0123456789") != std::string::npos || ar.text.size() > 6)
          throw ParseError("arity must be a non-negative integer, found '" + ar.text + "'", ar.line, ar.column);
        sig.add_op(name.text, std::stoul(ar.text));
      } else if (item.text == "const") {
        sig.add_op(name.text, 0);
        consts.push_back(name.text);
      } else if (item.text == "join") {
        sig.set_join(name.text);
      } else if (item.text == "zero") {
        sig.set_zero(name.text);
      } else if (item.text == "unit") {
        sig.set_unit(name.text);
        explicit_unit = true;
      } else {
        throw ParseError("unknown item '" + item.text + "'", item.line, item.column);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const SemanticError& e) {
      throw located(e.what());
    }
  }
  lex.expect(Token::Kind::end, "end of input");
  if (!explicit_unit)
    for (const std::string& c : consts)
      if (!sig.zero_symbol() || *sig.zero_symbol() != c) {
        sig.set_unit(c);
        break;
      }
  sig.validate();
  return sig;
}

/// Canonical DSL text; parse_signature(print_signature(s)) == s.
inline std::string print_signature(const Signature& sig) {
  std::string out = "signature " + sig.name();
  for (const OpSymbol& op : sig.ops()) {
    // Plain constants use the `op c:0` form so that re-parsing does not turn them into the unit.
    if (op.arity == 0 && sig.unit_symbol() == op.name)
      out += " const " + op.name;
    else
      out += " op " + op.name + ":" + std::to_string(op.arity);
  }
  if (sig.join_symbol()) out += " join " + *sig.join_symbol();
  if (sig.zero_symbol()) out += " zero " + *sig.zero_symbol();
  if (sig.unit_symbol()) out += " unit " + *sig.unit_symbol();
  return out + " end";
}

/// Parse a prefix term. Names that are not symbols of `sig` are variables.
inline Term parse_term(std::string_view text, const Signature& sig) {
  detail::Lexer lex(text);
  Term t = detail::parse_term_from(lex, sig);
  lex.expect(detail::Token::Kind::end, "end of input");
  return t;
}

inline Identity parse_identity(std::string_view text, const Signature& sig) {
  detail::Lexer lex(text);
  Term lhs = detail::parse_term_from(lex, sig);
  lex.expect(detail::Token::Kind::equals, "'='");
  Term rhs = detail::parse_term_from(lex, sig);
  lex.expect(detail::Token::Kind::end, "end of input");
  return {std::move(lhs), std::move(rhs)};
}

} // namespace slo
