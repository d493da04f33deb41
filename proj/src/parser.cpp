#include "cotton/parser.hpp"

#include <algorithm>
#include <cctype>

namespace cotton {

namespace {

class Parser {
 public:
  Parser(std::string_view source, const std::vector<std::string>& variables)
      : source_(source), variables_(variables) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    Polynomial result = expr();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
    return result;
  }

 private:
  bool at_end() const { return pos_ >= source_.size(); }
  char peek() const { return at_end() ? '\0' : source_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(source_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial result = term();
    if (negate) result = -result;
    for (;;) {
      if (accept('+')) {
        result += term();
      } else if (accept('-')) {
        result -= term();
      } else {
        return result;
      }
    }
  }

  Polynomial term() {
    Polynomial result = factor();
    for (;;) {
      if (accept('*')) {
        result *= factor();
      } else if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        const std::string digits = integer("divisor");
        const Rational divisor = Rational::parse(digits);
        if (divisor.is_zero()) throw ParseError("division by zero", at);
        result *= Rational(1) / divisor;
      } else {
        return result;
      }
    }
  }

  Polynomial factor() {
    Polynomial base_value = base();
    if (!accept('^')) return base_value;
    skip_space();
    const std::size_t at = pos_;
    if (peek() == '-') throw ParseError("negative exponent", at);
    if (peek() == '(') throw ParseError("exponent must be a nonnegative integer literal", at);
    const std::string digits = integer("exponent");
    if (peek() == '.' || peek() == '/') {
      throw ParseError("fractional exponent", at);
    }
    if (digits.size() > 4) throw ParseError("exponent too large", at);
    return base_value.pow(static_cast<unsigned>(std::stoul(digits)));
  }

  Polynomial base() {
    skip_space();
    const std::size_t at = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::string digits = integer("number");
      if (peek() == '.') throw ParseError("decimal literals are not allowed in expressions", pos_);
      return Polynomial::constant(variables_, Rational::parse(digits));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        name.push_back(source_[pos_++]);
      }
      const auto it = std::find(variables_.begin(), variables_.end(), name);
      if (it == variables_.end()) throw ParseError("unknown variable '" + name + "'", at);
      return Polynomial::variable(variables_, static_cast<std::size_t>(it - variables_.begin()));
    }
    if (at_end()) throw ParseError("unexpected end of expression", at);
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string integer(const char* what) {
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(source_[pos_++]);
    if (digits.empty()) throw ParseError(std::string("expected integer ") + what, pos_);
    return digits;
  }

  std::string_view source_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_expr(std::string_view source, const std::vector<std::string>& variables) {
  return Parser(source, variables).parse();
}

}  // namespace cotton
