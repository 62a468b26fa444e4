#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "ctxkit/interval.hpp"
#include "ctxkit/rational.hpp"

namespace ctxkit {

// Default bracket width for irrational constants: 10^-12.
Rational default_bracket_tolerance();

// Parsed arithmetic expression over exact literals, + - * /, unary minus,
// parentheses and sqrt(...).
// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := NUMBER | '(' expr ')' | 'sqrt' '(' expr ')' | '-' factor
// NUMBER is an integer or decimal literal; decimals are read exactly.
class ValueExpr {
 public:
  enum class Op { Add, Sub, Mul, Div };

  struct Literal {
    Rational value;
  };
  struct Negate {
    std::shared_ptr<const ValueExpr> operand;
  };
  struct Sqrt {
    std::shared_ptr<const ValueExpr> operand;
  };
  struct Binary {
    Op op;
    std::shared_ptr<const ValueExpr> lhs;
    std::shared_ptr<const ValueExpr> rhs;
  };
  using Node = std::variant<Literal, Negate, Sqrt, Binary>;

  explicit ValueExpr(Node node) : node_(std::move(node)) {}

  const Node& node() const { return node_; }

  // True when the tree contains no sqrt, i.e. the value is rational.
  bool is_rational() const;

  // Source-like rendering, fully parenthesised for binary nodes.
  std::string to_string() const;

 private:
  Node node_;
};

// Throws ParseError (with offset) on malformed text or unknown identifiers.
ValueExpr parse_value(std::string_view text);

// Encloses the value of `expr` in an interval of width <= tolerance.
// Rational expressions come back as zero-width intervals. Refinement runs on
// a fixed sequence of dyadic precisions, so a smaller tolerance always yields
// a sub-interval of the one returned for a larger tolerance.
ScalarInterval evaluate(const ValueExpr& expr, const Rational& tolerance);

// parse_value + evaluate.
ScalarInterval evaluate_text(std::string_view text, const Rational& tolerance);

// Exact value of a sqrt-free expression. Throws InputError otherwise.
Rational evaluate_exact(std::string_view text);

}  // namespace ctxkit
