#pragma once

#include <optional>
#include <string>

#include "latlab/rational.hpp"

namespace latlab {

// A real-valued flag expression, evaluated once at extended precision.
// Rational-only expressions also carry their exact value.
struct ParsedReal {
  long double value = 0.0L;
  std::optional<Rational> exact;

  double d() const { return static_cast<double>(value); }
};

// Recursive-descent parser for numeric flag expressions: decimal literals,
// rationals written p/q, sqrt(x), cbrt(x), + - * /, parentheses, unary minus.
ParsedReal parse_real_expr(const std::string& text);

}  // namespace latlab
