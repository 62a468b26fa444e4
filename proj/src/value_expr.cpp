#include "ctxkit/value_expr.hpp"

#include <cctype>

#include "ctxkit/errors.hpp"

namespace ctxkit {

Rational default_bracket_tolerance() {
  return Rational(1, boost::multiprecision::pow(BigInt(10), 12));
}

namespace {

using ExprPtr = std::shared_ptr<const ValueExpr>;

ExprPtr make(ValueExpr::Node node) { return std::make_shared<const ValueExpr>(std::move(node)); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    ExprPtr e = expr();
    skip_space();
    if (pos_ < text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        lhs = make(ValueExpr::Binary{ValueExpr::Op::Add, lhs, term()});
      } else if (accept('-')) {
        lhs = make(ValueExpr::Binary{ValueExpr::Op::Sub, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      skip_space();
      if (accept('*')) {
        lhs = make(ValueExpr::Binary{ValueExpr::Op::Mul, lhs, factor()});
      } else if (accept('/')) {
        lhs = make(ValueExpr::Binary{ValueExpr::Op::Div, lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    char ch = text_[pos_];
    if (ch == '-') {
      ++pos_;
      return make(ValueExpr::Negate{factor()});
    }
    if (ch == '(') {
      ++pos_;
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view ident = text_.substr(start, pos_ - start);
      if (ident != "sqrt") {
        throw ParseError("unknown identifier '" + std::string(ident) + "'", start);
      }
      skip_space();
      expect('(');
      ExprPtr inner = expr();
      expect(')');
      return make(ValueExpr::Sqrt{inner});
    }
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  ExprPtr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    std::string_view literal = text_.substr(start, pos_ - start);
    if (literal == ".") throw ParseError("malformed number", start);
    return make(ValueExpr::Literal{parse_rational(literal)});
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    skip_space();
    if (!accept(ch)) {
      if (pos_ >= text_.size()) {
        throw ParseError(std::string("expected '") + ch + "' before end of expression", pos_);
      }
      throw ParseError(std::string("expected '") + ch + "'", pos_);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Raised when an operation is undefined on the current enclosure but might be
// defined on a tighter one.
struct NeedsPrecision {};

ScalarInterval eval_at(const ValueExpr& expr, unsigned bits) {
  return std::visit(
      [bits](const auto& node) -> ScalarInterval {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ValueExpr::Literal>) {
          return ScalarInterval(node.value);
        } else if constexpr (std::is_same_v<T, ValueExpr::Negate>) {
          return -eval_at(*node.operand, bits);
        } else if constexpr (std::is_same_v<T, ValueExpr::Sqrt>) {
          ScalarInterval arg = eval_at(*node.operand, bits);
          if (!arg.is_exact() && arg.lo() < 0 && arg.hi() >= 0) throw NeedsPrecision{};
          return sqrt_enclosure(arg, bits);
        } else {
          ScalarInterval lhs = eval_at(*node.lhs, bits);
          ScalarInterval rhs = eval_at(*node.rhs, bits);
          switch (node.op) {
            case ValueExpr::Op::Add:
              return lhs + rhs;
            case ValueExpr::Op::Sub:
              return lhs - rhs;
            case ValueExpr::Op::Mul:
              return lhs * rhs;
            case ValueExpr::Op::Div:
              if (rhs.is_exact() && rhs.lo() == 0) throw DomainError("division by zero");
              if (rhs.contains_zero()) throw NeedsPrecision{};
              return lhs / rhs;
          }
          throw InternalError("unknown operator");
        }
      },
      expr.node());
}

// Final attempt: a radicand still straddling zero is taken to be zero.
ScalarInterval eval_final(const ValueExpr& expr, unsigned bits) {
  return std::visit(
      [bits](const auto& node) -> ScalarInterval {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ValueExpr::Literal>) {
          return ScalarInterval(node.value);
        } else if constexpr (std::is_same_v<T, ValueExpr::Negate>) {
          return -eval_final(*node.operand, bits);
        } else if constexpr (std::is_same_v<T, ValueExpr::Sqrt>) {
          return sqrt_enclosure(eval_final(*node.operand, bits), bits);
        } else {
          ScalarInterval lhs = eval_final(*node.lhs, bits);
          ScalarInterval rhs = eval_final(*node.rhs, bits);
          switch (node.op) {
            case ValueExpr::Op::Add:
              return lhs + rhs;
            case ValueExpr::Op::Sub:
              return lhs - rhs;
            case ValueExpr::Op::Mul:
              return lhs * rhs;
            case ValueExpr::Op::Div:
              return lhs / rhs;
          }
          throw InternalError("unknown operator");
        }
      },
      expr.node());
}

constexpr unsigned kFirstBits = 32;
constexpr unsigned kMaxBits = 8192;

const char* op_symbol(ValueExpr::Op op) {
  switch (op) {
    case ValueExpr::Op::Add:
      return " + ";
    case ValueExpr::Op::Sub:
      return " - ";
    case ValueExpr::Op::Mul:
      return " * ";
    case ValueExpr::Op::Div:
      return " / ";
  }
  return " ? ";
}

}  // namespace

bool ValueExpr::is_rational() const {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return true;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return node.operand->is_rational();
        } else if constexpr (std::is_same_v<T, Sqrt>) {
          return false;
        } else {
          return node.lhs->is_rational() && node.rhs->is_rational();
        }
      },
      node_);
}

std::string ValueExpr::to_string() const {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          if (boost::multiprecision::denominator(node.value) == 1) return boost::multiprecision::numerator(node.value).str();
          return "(" + ctxkit::to_string(node.value) + ")";
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "-" + node.operand->to_string();
        } else if constexpr (std::is_same_v<T, Sqrt>) {
          return "sqrt(" + node.operand->to_string() + ")";
        } else {
          return "(" + node.lhs->to_string() + op_symbol(node.op) + node.rhs->to_string() + ")";
        }
      },
      node_);
}

ValueExpr parse_value(std::string_view text) { return *Parser(text).parse(); }

ScalarInterval evaluate(const ValueExpr& expr, const Rational& tolerance) {
  if (tolerance <= 0) throw InputError("bracket tolerance must be positive");
  for (unsigned bits = kFirstBits; bits <= kMaxBits; bits *= 2) {
    try {
      ScalarInterval result = eval_at(expr, bits);
      if (result.width() <= tolerance) return result;
    } catch (const NeedsPrecision&) {
    }
  }
  ScalarInterval result = eval_final(expr, kMaxBits);
  if (result.width() > tolerance) throw DomainError("could not bracket value within tolerance");
  return result;
}

ScalarInterval evaluate_text(std::string_view text, const Rational& tolerance) {
  return evaluate(parse_value(text), tolerance);
}

Rational evaluate_exact(std::string_view text) {
  ValueExpr expr = parse_value(text);
  ScalarInterval value = evaluate(expr, default_bracket_tolerance());
  if (!value.is_exact()) {
    throw InputError("expected a rational value, got '" + std::string(text) + "'");
  }
  return value.lo();
}

}  // namespace ctxkit
