#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "quadric/core.hpp"

namespace quadric::cli {

enum class ParseErrorKind { SyntaxError, DegreeError, UnknownVariable };

std::string_view to_string(ParseErrorKind k);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& detail);

  ParseErrorKind kind() const noexcept { return kind_; }
  /// Zero-based byte offset into the input.
  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
  std::string detail_;
};

/// Parses `expr ('=' expr)?` over the variables x, y, z with total degree at
/// most 2. Terms are products of numbers and variables (`2*x*y`, `3 x y`,
/// `x^2/9`, `3/4 z`); a number may be followed directly by a variable (`2x`)
/// but letters always form one token, so `xy` and `2xy` are rejected.
///
/// Throws ParseError; a polynomial that cancels to zero raises the library's
/// AllZero GeometryError.
Quadric parse_quadric(std::string_view text);

/// Fixed-order polynomial `c*x^2 + c*y^2 + c*z^2 + c*x*y + c*x*z + c*y*z +
/// c*x + c*y + c*z + c = 0` with zero terms dropped and every coefficient
/// printed with 17 significant digits, so parse_quadric reproduces the
/// coefficients exactly.
std::string emit_polynomial(const Quadric& q);

}  // namespace quadric::cli
