#ifndef DLCHOW_EXPR_PARSER_HPP
#define DLCHOW_EXPR_PARSER_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dlchow/arith.hpp"

namespace dlchow {

/// Thrown for malformed expression text; carries the byte offset.
class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Recursive-descent parser for ring expressions.
///
///   expr    := ['+'|'-'] term { ('+'|'-') term }
///   term    := factor { ['*' | '/'] factor }     juxtaposition multiplies
///   factor  := ['-'] primary [ '^' ['-'] digits ]
///   primary := digits | ident [ '[' raw ']' ] | '(' expr ')'
///
/// Ops supplies the ring: constant(Integer), identifier(name),
/// bracket(name, raw), power(V, int), divide(V, Integer) and the usual
/// +, -, * on V.
template <class V, class Ops>
class ExprParser {
public:
  ExprParser(std::string_view text, Ops& ops) : text_(text), ops_(ops) {}

  V parse() {
    V v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return v;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_primary(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           c == '(';
  }

  V expr() {
    V acc;
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      acc = term();
      if (c == '-') acc = -acc;
    } else {
      acc = term();
    }
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      V rhs = term();
      acc = c == '+' ? V(acc + rhs) : V(acc - rhs);
    }
    return acc;
  }

  V term() {
    V acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        Integer d = digits();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = ops_.divide(acc, d);
      } else if (starts_primary(c)) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  V factor() {
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    V base = primary();
    if (peek() == '^') {
      ++pos_;
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      skip_ws();
      std::size_t at = pos_;
      Integer e = digits();
      if (e > 4096) throw ParseError("exponent too large", at);
      int k = static_cast<int>(e);
      base = ops_.power(base, neg ? -k : k);
    }
    return base;
  }

  V primary() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ops_.constant(digits());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '[') {
        std::size_t close = text_.find(']', pos_);
        if (close == std::string_view::npos) throw ParseError("unterminated '['", pos_);
        std::string raw(text_.substr(pos_ + 1, close - pos_ - 1));
        pos_ = close + 1;
        try {
          return ops_.bracket(name, raw);
        } catch (const ParseError&) {
          throw;
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), at);
        }
      }
      try {
        return ops_.identifier(name);
      } catch (const ParseError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
      }
    }
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", start);
    return parse_integer(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  Ops& ops_;
  std::size_t pos_ = 0;
};

} // namespace dlchow

#endif // DLCHOW_EXPR_PARSER_HPP
