#pragma once

#include <memory>
#include <string>

#include "srh/core/taylor1.hpp"

namespace srh {

// Arithmetic expressions in one variable `lambda`.  Grammar: numeric
// constants, lambda, + - * /, unary minus, parentheses, sin, cos, exp.
// Evaluation is available pointwise, as a first derivative, and as a
// truncated Taylor expansion about a center (used for series seeding).
class Expr {
 public:
  Expr() = default;
  static Expr parse(const std::string& text);  // throws ConfigError on bad input

  double operator()(double lam) const;
  double deriv(double lam) const;
  Taylor1 taylor(double center, int order) const;

  bool valid() const { return node_ != nullptr; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> node_;
  std::string text_;
};

// Scalar function of lambda together with its derivative and local Taylor
// expansions.  The solver needs all three for seed data.
struct SeedFn {
  Expr expr;

  static SeedFn from_expression(const std::string& text) { return SeedFn{Expr::parse(text)}; }
  double operator()(double lam) const { return expr(lam); }
  double deriv(double lam) const { return expr.deriv(lam); }
  Taylor1 taylor(double center, int order) const { return expr.taylor(center, order); }
};

}  // namespace srh
