#include "latlab/expr.hpp"

#include <cctype>
#include <cmath>

#include "latlab/errors.hpp"

namespace latlab {

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw contract_error("expression '" + s + "': " + why + " at position " +
                         std::to_string(pos));
  }

  ParsedReal expr() {
    ParsedReal lhs = term();
    while (true) {
      skip_ws();
      if (consume('+')) {
        ParsedReal rhs = term();
        lhs.value += rhs.value;
        lhs.exact = (lhs.exact && rhs.exact) ? std::optional<Rational>(*lhs.exact + *rhs.exact)
                                             : std::nullopt;
      } else if (consume('-')) {
        ParsedReal rhs = term();
        lhs.value -= rhs.value;
        lhs.exact = (lhs.exact && rhs.exact) ? std::optional<Rational>(*lhs.exact - *rhs.exact)
                                             : std::nullopt;
      } else {
        return lhs;
      }
    }
  }

  ParsedReal term() {
    ParsedReal lhs = factor();
    while (true) {
      skip_ws();
      if (consume('*')) {
        ParsedReal rhs = factor();
        lhs.value *= rhs.value;
        lhs.exact = (lhs.exact && rhs.exact) ? std::optional<Rational>(*lhs.exact * *rhs.exact)
                                             : std::nullopt;
      } else if (consume('/')) {
        ParsedReal rhs = factor();
        if (rhs.value == 0.0L) fail("division by zero");
        lhs.value /= rhs.value;
        lhs.exact = (lhs.exact && rhs.exact && *rhs.exact != 0)
                        ? std::optional<Rational>(*lhs.exact / *rhs.exact)
                        : std::nullopt;
      } else {
        return lhs;
      }
    }
  }

  ParsedReal factor() {
    skip_ws();
    if (consume('-')) {
      ParsedReal r = factor();
      r.value = -r.value;
      if (r.exact) r.exact = -*r.exact;
      return r;
    }
    if (consume('(')) {
      ParsedReal r = expr();
      if (!consume(')')) fail("expected ')'");
      return r;
    }
    if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
      const std::string name = s.substr(start, pos - start);
      if (!consume('(')) fail("expected '(' after function name");
      ParsedReal arg = expr();
      if (!consume(')')) fail("expected ')'");
      ParsedReal r;
      if (name == "sqrt") {
        if (arg.value < 0.0L) fail("sqrt of a negative value");
        r.value = sqrtl(arg.value);
      } else if (name == "cbrt") {
        r.value = cbrtl(arg.value);
      } else {
        fail("unknown function '" + name + "'");
      }
      return r;  // irrational in general: no exact part
    }
    return number();
  }

  ParsedReal number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
      ++pos;
    if (pos == start) fail("expected a number");
    const std::string tok = s.substr(start, pos - start);
    ParsedReal r;
    r.exact = rat_from_string(tok);
    r.value = strtold(tok.c_str(), nullptr);
    if (tok.find('.') != std::string::npos) {
      // keep the exact decimal reading as the value as well
      r.value = static_cast<long double>(r.exact->get_num().get_d()) /
                static_cast<long double>(r.exact->get_den().get_d());
    }
    return r;
  }
};

}  // namespace

ParsedReal parse_real_expr(const std::string& text) {
  Parser p{text};
  ParsedReal r = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters");
  return r;
}

}  // namespace latlab
