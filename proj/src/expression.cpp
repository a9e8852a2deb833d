#include "nozzle/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

enum class Op { Number, X, T, Neg, Add, Sub, Mul, Div, Pow, Exp, Log, Sin, Cos, Tanh, Sqrt };

struct Dual {
  double v;
  double d;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

Dual dual_pow(Dual a, Dual b) {
  const double value = std::pow(a.v, b.v);
  double d = 0.0;
  if (a.d != 0.0) d += b.v * std::pow(a.v, b.v - 1.0) * a.d;
  if (b.d != 0.0) d += std::log(a.v) * value * b.d;
  return {value, d};
}

}  // namespace

struct Expression::Node {
  Op op;
  double number = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_shared<Expression::Node>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

NodePtr make_number(double value) {
  auto node = std::make_shared<Expression::Node>();
  node->op = Op::Number;
  node->number = value;
  return node;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression \"" + std::string(text_) + "\": " + what + " at column " +
                      std::to_string(pos_ + 1));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "x") return make(Op::X);
      if (name == "t") return make(Op::T);
      Op op;
      if (name == "exp") {
        op = Op::Exp;
      } else if (name == "log") {
        op = Op::Log;
      } else if (name == "sin") {
        op = Op::Sin;
      } else if (name == "cos") {
        op = Op::Cos;
      } else if (name == "tanh") {
        op = Op::Tanh;
      } else if (name == "sqrt") {
        op = Op::Sqrt;
      } else {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make(op, arg);
    }
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double value = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return make_number(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Forward-mode evaluation; `wrt` selects the variable whose seed derivative is 1.
Dual evaluate(const Expression::Node& n, double x, double t, Op wrt) {
  switch (n.op) {
    case Op::Number:
      return {n.number, 0.0};
    case Op::X:
      return {x, wrt == Op::X ? 1.0 : 0.0};
    case Op::T:
      return {t, wrt == Op::T ? 1.0 : 0.0};
    case Op::Neg: {
      const Dual a = evaluate(*n.lhs, x, t, wrt);
      return {-a.v, -a.d};
    }
    case Op::Add:
      return evaluate(*n.lhs, x, t, wrt) + evaluate(*n.rhs, x, t, wrt);
    case Op::Sub:
      return evaluate(*n.lhs, x, t, wrt) - evaluate(*n.rhs, x, t, wrt);
    case Op::Mul:
      return evaluate(*n.lhs, x, t, wrt) * evaluate(*n.rhs, x, t, wrt);
    case Op::Div:
      return evaluate(*n.lhs, x, t, wrt) / evaluate(*n.rhs, x, t, wrt);
    case Op::Pow:
      return dual_pow(evaluate(*n.lhs, x, t, wrt), evaluate(*n.rhs, x, t, wrt));
    case Op::Exp: {
      const Dual a = evaluate(*n.lhs, x, t, wrt);
      const double e = std::exp(a.v);
      return {e, e * a.d};
    }
    case Op::Log: {
      const Dual a = evaluate(*n.lhs, x, t, wrt);
      return {std::log(a.v), a.d / a.v};
    }
    case Op::Sin: {
      const Dual a = evaluate(*n.lhs, x, t, wrt);
      return {std::sin(a.v), std::cos(a.v) * a.d};
    }
    case Op::Cos: {
      const Dual a = evaluate(*n.lhs, x, t, wrt);
      return {std::cos(a.v), -std::sin(a.v) * a.d};
    }
    case Op::Tanh: {
      const Dual a = evaluate(*n.lhs, x, t, wrt);
      const double th = std::tanh(a.v);
      return {th, (1.0 - th * th) * a.d};
    }
    case Op::Sqrt: {
      const Dual a = evaluate(*n.lhs, x, t, wrt);
      const double s = std::sqrt(a.v);
      return {s, a.d / (2.0 * s)};
    }
  }
  return {0.0, 0.0};
}

bool uses(const Expression::Node& n, Op var) {
  if (n.op == var) return true;
  if (n.lhs && uses(*n.lhs, var)) return true;
  if (n.rhs && uses(*n.rhs, var)) return true;
  return false;
}

}  // namespace

Expression::Expression() : Expression(make_number(0.0), "0") {}

Expression::Expression(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  return Expression(parser.parse(), std::string(text));
}

Expression Expression::constant(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return Expression(make_number(value), buf);
}

double Expression::eval(double x, double t) const { return evaluate(*root_, x, t, Op::Number).v; }

Expression::ValueAndSlope Expression::eval_dx(double x, double t) const {
  const Dual r = evaluate(*root_, x, t, Op::X);
  return {r.v, r.d};
}

Expression::ValueAndSlope Expression::eval_dt(double x, double t) const {
  const Dual r = evaluate(*root_, x, t, Op::T);
  return {r.v, r.d};
}

bool Expression::uses_x() const { return uses(*root_, Op::X); }
bool Expression::uses_t() const { return uses(*root_, Op::T); }

}  // namespace nozzle
