#include "srh/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "srh/core/errors.hpp"

namespace srh {

struct Expr::Node {
  enum class Kind { number, variable, add, sub, mul, div, neg, sin, cos, exp };
  Kind kind;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr, double v = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->value = v;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    auto n = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression parse error at position " + std::to_string(pos_) + ": " + msg +
                      " in \"" + s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto n = term();
    for (;;) {
      if (consume('+')) {
        n = make(Kind::add, n, term());
      } else if (consume('-')) {
        n = make(Kind::sub, n, term());
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    auto n = unary();
    for (;;) {
      if (consume('*')) {
        n = make(Kind::mul, n, unary());
      } else if (consume('/')) {
        n = make(Kind::div, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (consume('-')) return make(Kind::neg, unary());
    if (consume('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      const double v = std::strtod(s_.c_str() + pos_, &end);
      if (end == s_.c_str() + pos_) fail("bad number");
      pos_ = static_cast<size_t>(end - s_.c_str());
      return make(Kind::number, nullptr, nullptr, v);
    }
    if (consume('(')) {
      auto n = expr();
      if (!consume(')')) fail("missing ')'");
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = pos_;
      while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
      const std::string name = s_.substr(pos_, j - pos_);
      pos_ = j;
      if (name == "lambda") return make(Kind::variable);
      Kind k;
      if (name == "sin") {
        k = Kind::sin;
      } else if (name == "cos") {
        k = Kind::cos;
      } else if (name == "exp") {
        k = Kind::exp;
      } else {
        fail("unknown identifier \"" + name + "\"");
      }
      if (!consume('(')) fail("expected '(' after function name");
      auto arg = expr();
      if (!consume(')')) fail("missing ')'");
      return make(k, arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, double lam) {
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::variable: return lam;
    case Kind::add: return eval_node(*n.lhs, lam) + eval_node(*n.rhs, lam);
    case Kind::sub: return eval_node(*n.lhs, lam) - eval_node(*n.rhs, lam);
    case Kind::mul: return eval_node(*n.lhs, lam) * eval_node(*n.rhs, lam);
    case Kind::div: return eval_node(*n.lhs, lam) / eval_node(*n.rhs, lam);
    case Kind::neg: return -eval_node(*n.lhs, lam);
    case Kind::sin: return std::sin(eval_node(*n.lhs, lam));
    case Kind::cos: return std::cos(eval_node(*n.lhs, lam));
    case Kind::exp: return std::exp(eval_node(*n.lhs, lam));
  }
  return 0.0;
}

Taylor1 taylor_node(const Expr::Node& n, double center, int order) {
  switch (n.kind) {
    case Kind::number: return Taylor1::constant(n.value, order);
    case Kind::variable: return Taylor1::variable(center, order);
    case Kind::add: return taylor_node(*n.lhs, center, order) + taylor_node(*n.rhs, center, order);
    case Kind::sub: return taylor_node(*n.lhs, center, order) - taylor_node(*n.rhs, center, order);
    case Kind::mul: return taylor_node(*n.lhs, center, order) * taylor_node(*n.rhs, center, order);
    case Kind::div: return taylor_node(*n.lhs, center, order) / taylor_node(*n.rhs, center, order);
    case Kind::neg: return -taylor_node(*n.lhs, center, order);
    case Kind::sin: return sin(taylor_node(*n.lhs, center, order));
    case Kind::cos: return cos(taylor_node(*n.lhs, center, order));
    case Kind::exp: return exp(taylor_node(*n.lhs, center, order));
  }
  return Taylor1(order);
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.node_ = Parser(text).run();
  e.text_ = text;
  return e;
}

double Expr::operator()(double lam) const {
  if (!node_) throw ConfigError("empty expression");
  return eval_node(*node_, lam);
}

double Expr::deriv(double lam) const { return taylor(lam, 1)[1]; }

Taylor1 Expr::taylor(double center, int order) const {
  if (!node_) throw ConfigError("empty expression");
  return taylor_node(*node_, center, order);
}

}  // namespace srh
