#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace nozzle {

/// Scalar expression in x and t parsed from configuration text.
///
/// Grammar: numbers, the variables `x` and `t`, binary `+ - * /`, right-associative `^`,
/// unary minus, parentheses and the functions exp, log, sin, cos, tanh, sqrt.
/// Derivatives are exact (forward-mode dual numbers), which the compatibility and
/// data-condition checks rely on.
class Expression {
 public:
  struct ValueAndSlope {
    double value;
    double slope;
  };

  Expression();  // the constant 0
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  double eval(double x, double t = 0.0) const;
  ValueAndSlope eval_dx(double x, double t = 0.0) const;
  ValueAndSlope eval_dt(double x, double t) const;

  bool uses_x() const;
  bool uses_t() const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expression(std::shared_ptr<const Node> root, std::string text);
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace nozzle
