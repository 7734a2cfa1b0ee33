#include "jetph/parser.hpp"

#include <cctype>

namespace jetph {

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorKind::Parse, msg + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  long long integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    if (pos == start) error("expected integer");
    return std::stoll(text.substr(start, pos - start));
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size() || !std::isalpha((unsigned char)text[pos]))
      error("expected identifier");
    while (pos < text.size() &&
           (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }
};

struct Parser {
  Lexer lex;
  const Chart& chart;

  Expression resolve(const std::string& name) {
    if (chart.is_dep(name)) return Expression::jet(name);
    // Independent variables appearing as factors denote explicit coordinate
    // dependence; they enter expressions as parameter symbols.
    if (chart.is_indep(name)) return Expression::parameter(name);
    auto underscore = name.rfind('_');
    if (underscore != std::string::npos && underscore > 0 && underscore + 1 < name.size()) {
      const std::string head = name.substr(0, underscore);
      const std::string tail = name.substr(underscore + 1);
      if (chart.is_dep(head)) {
        std::vector<std::string> mindex;
        for (char c : tail) {
          const std::string dir(1, c);
          if (!chart.is_indep(dir))
            lex.error("unknown derivative letter '" + dir + "' in " + name);
          mindex.push_back(dir);
        }
        return Expression::jet(head, std::move(mindex));
      }
    }
    return Expression::parameter(name);
  }

  Expression atom() {
    char c = lex.peek();
    if (c == '(') {
      lex.consume('(');
      Expression e = expr();
      if (!lex.consume(')')) lex.error("expected ')'");
      return e;
    }
    if (std::isdigit((unsigned char)c)) return Expression(Rational(lex.integer()));
    return resolve(lex.identifier());
  }

  Expression factor() {
    Expression base = atom();
    if (lex.consume('^')) {
      int sign = lex.consume('-') ? -1 : 1;
      long long e = lex.integer();
      return base.pow((int)(sign * e));
    }
    return base;
  }

  Expression term() {
    Expression out = factor();
    while (true) {
      if (lex.consume('*')) {
        out = out * factor();
      } else if (lex.consume('/')) {
        out = out.divided_by(factor());
      } else {
        return out;
      }
    }
  }

  Expression expr() {
    bool neg = lex.consume('-');
    Expression out = term();
    if (neg) out = -out;
    while (true) {
      if (lex.consume('+')) {
        out = out + term();
      } else if (lex.peek() == '-') {
        lex.consume('-');
        out = out - term();
      } else {
        return out;
      }
    }
  }
};

}  // namespace

Expression parse_expression(const std::string& text, const Chart& chart) {
  Parser p{Lexer{text}, chart};
  Expression e = p.expr();
  p.lex.skip_ws();
  if (p.lex.pos != text.size()) p.lex.error("trailing input");
  return e;
}

}  // namespace jetph
