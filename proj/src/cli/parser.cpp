#include "quadric/cli/parser.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace quadric::cli {

std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::SyntaxError: return "SyntaxError";
    case ParseErrorKind::DegreeError: return "DegreeError";
    case ParseErrorKind::UnknownVariable: return "UnknownVariable";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t position, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at " + std::to_string(position) + ": " + detail),
      kind_(kind),
      position_(position),
      detail_(detail) {}

namespace {

// Coefficients indexed by exponent of (x, y, z), each 0..2.
using Poly = std::array<double, 27>;
int slot(int i, int j, int k) { return i * 9 + j * 3 + k; }

enum class Tok { Number, Var, Plus, Minus, Star, Slash, Caret, Equals, End };

struct Token {
  Tok kind;
  std::size_t pos;
  double value = 0.0;  // Number
  int var = 0;         // Var: 0, 1, 2
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    Token t{Tok::End, i};
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j == i + 1 && ch == '.') throw ParseError(ParseErrorKind::SyntaxError, i, "expected digits");
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      const std::string lexeme(s.substr(i, j - i));
      t.kind = Tok::Number;
      t.value = std::strtod(lexeme.c_str(), nullptr);
      if (!std::isfinite(t.value)) throw ParseError(ParseErrorKind::SyntaxError, i, "number out of range");
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      const std::string_view word = s.substr(i, j - i);
      if (word.size() == 1 && (ch == 'x' || ch == 'y' || ch == 'z')) {
        t.kind = Tok::Var;
        t.var = ch - 'x';
      } else if (word.find_first_not_of("xyz") == std::string_view::npos) {
        throw ParseError(ParseErrorKind::SyntaxError, i,
                         "ambiguous token '" + std::string(word) + "'; separate variables with '*' or a space");
      } else {
        throw ParseError(ParseErrorKind::UnknownVariable, i,
                         "unknown variable '" + std::string(word) + "'; expected one of {x, y, z}");
      }
      i = j;
    } else {
      switch (ch) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '=': t.kind = Tok::Equals; break;
        default:
          throw ParseError(ParseErrorKind::SyntaxError, i, std::string("unexpected character '") + ch + "'");
      }
      ++i;
    }
    out.push_back(t);
  }
  out.push_back({Tok::End, s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Poly equation() {
    Poly lhs = expr();
    if (peek().kind == Tok::Equals) {
      next();
      const Poly rhs = expr();
      for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] -= rhs[i];
    }
    if (peek().kind != Tok::End) fail_expected("{'+', '-', '=', end of input}");
    return lhs;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail_expected(const std::string& set) const {
    throw ParseError(ParseErrorKind::SyntaxError, peek().pos, "expected one of " + set);
  }

  Poly expr() {
    Poly p{};
    double sign = 1.0;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) sign = next().kind == Tok::Minus ? -1.0 : 1.0;
    term(p, sign);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      sign = next().kind == Tok::Minus ? -1.0 : 1.0;
      term(p, sign);
    }
    return p;
  }

  // term = factor (('*' | '/' number | implicit) factor)*
  void term(Poly& p, double sign) {
    const std::size_t start = peek().pos;
    double coef = sign;
    std::array<int, 3> exp{0, 0, 0};
    factor(coef, exp);
    for (;;) {
      const Tok k = peek().kind;
      if (k == Tok::Star) {
        next();
        factor(coef, exp);
      } else if (k == Tok::Slash) {
        next();
        if (peek().kind != Tok::Number) fail_expected("{number}");
        const double d = next().value;
        if (d == 0.0) throw ParseError(ParseErrorKind::SyntaxError, toks_[pos_ - 1].pos, "division by zero");
        coef /= d;
      } else if (k == Tok::Var) {
        factor(coef, exp);  // implicit product with a variable
      } else {
        break;
      }
    }
    if (!std::isfinite(coef)) throw ParseError(ParseErrorKind::SyntaxError, start, "coefficient out of range");
    if (exp[0] + exp[1] + exp[2] > 2)
      throw ParseError(ParseErrorKind::DegreeError, start,
                       "term of degree " + std::to_string(exp[0] + exp[1] + exp[2]) + " exceeds 2");
    p[slot(exp[0], exp[1], exp[2])] += coef;
  }

  void factor(double& coef, std::array<int, 3>& exp) {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      coef *= t.value;
      return;
    }
    if (t.kind != Tok::Var) fail_expected("{number, x, y, z}");
    next();
    int power = 1;
    if (peek().kind == Tok::Caret) {
      next();
      const Token& d = peek();
      if (d.kind != Tok::Number || d.value != std::floor(d.value) || d.value > 9)
        fail_expected("{single digit exponent}");
      next();
      power = static_cast<int>(d.value);
    }
    exp[t.var] += power;
    // Cap early so absurd exponents cannot overflow; the degree check reports them.
    if (exp[t.var] > 9) exp[t.var] = 9;
    if (exp[0] + exp[1] + exp[2] > 2)
      throw ParseError(ParseErrorKind::DegreeError, t.pos, "term degree exceeds 2");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Quadric parse_quadric(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError(ParseErrorKind::SyntaxError, 0, "empty expression");
  const Poly p = Parser(lex(text)).equation();
  // p(x,y,z) = 0 as  p^T Q p + 2 l.p - k.
  return Quadric(p[slot(2, 0, 0)], p[slot(0, 2, 0)], p[slot(0, 0, 2)], 0.5 * p[slot(0, 1, 1)],
                 0.5 * p[slot(1, 0, 1)], 0.5 * p[slot(1, 1, 0)], 0.5 * p[slot(1, 0, 0)],
                 0.5 * p[slot(0, 1, 0)], 0.5 * p[slot(0, 0, 1)], -p[slot(0, 0, 0)]);
}

std::string emit_polynomial(const Quadric& q) {
  const std::array<std::pair<double, const char*>, 10> terms{{
      {q.a(), "x^2"},
      {q.a1(), "y^2"},
      {q.a2(), "z^2"},
      {2.0 * q.b2(), "x*y"},
      {2.0 * q.b1(), "x*z"},
      {2.0 * q.b(), "y*z"},
      {2.0 * q.c(), "x"},
      {2.0 * q.c1(), "y"},
      {2.0 * q.c2(), "z"},
      {-q.k(), nullptr},
  }};
  std::string out;
  char buf[64];
  for (const auto& [c, mono] : terms) {
    if (c == 0.0) continue;
    const bool neg = std::signbit(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::snprintf(buf, sizeof buf, "%.17g", std::fabs(c));
    out += buf;
    if (mono) {
      out += "*";
      out += mono;
    }
  }
  return out + " = 0";
}

}  // namespace quadric::cli
