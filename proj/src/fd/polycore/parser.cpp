#include "fd/polycore/parser.hpp"

#include <cctype>

namespace fd::polycore {

namespace {

class Parser {
 public:
  Parser(std::string_view text, VarUniverse::Ptr universe)
      : text_(text), universe_(std::move(universe)) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Polynomial d = factor();
        if (!d.is_constant())
          throw ParseError("division by a non-constant expression", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc * (Rational(1) / d.terms()[0].coeff);
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("exponent must be a nonnegative integer literal", at);
      return b.pow(natural(at));
    }
    return b;
  }

  std::uint32_t natural(std::size_t at) {
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 1000000) throw ParseError("exponent too large", at);
      ++pos_;
    }
    return static_cast<std::uint32_t>(v);
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      std::size_t at = pos_++;
      Polynomial p = expr();
      if (!accept(')')) throw ParseError("missing ')'", at);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return integer_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Polynomial integer_literal() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    mpz_class z(std::string(text_.substr(start, pos_ - start)), 10);
    return Polynomial::constant(universe_, Rational(z));
  }

  Polynomial identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++pos_;
      else
        break;
    }
    std::string name(text_.substr(start, pos_ - start));
    auto idx = universe_->index_of(name);
    if (!idx)
      throw ParseError("unknown variable '" + name + "'", start);
    return Polynomial::variable(universe_, *idx);
  }

  std::string_view text_;
  VarUniverse::Ptr universe_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, VarUniverse::Ptr universe) {
  return Parser(text, std::move(universe)).run();
}

}  // namespace fd::polycore
