#include "rmt/expr.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace rmt {

namespace {

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Node {
  enum class Op { Const, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg, Fun1, Fun2 };
  Op op;
  double value = 0;
  int fun = 0;
  NodePtr a, b;
};

enum Fun1 { F_ABS, F_FLOOR, F_SQRT, F_EXP, F_LOG, F_SIN, F_COS, F_STEP };
enum Fun2 { F_MIN, F_MAX, F_LE };

double eval(const Node* n, double x, double y) {
  switch (n->op) {
    case Node::Op::Const: return n->value;
    case Node::Op::VarX: return x;
    case Node::Op::VarY: return y;
    case Node::Op::Add: return eval(n->a.get(), x, y) + eval(n->b.get(), x, y);
    case Node::Op::Sub: return eval(n->a.get(), x, y) - eval(n->b.get(), x, y);
    case Node::Op::Mul: return eval(n->a.get(), x, y) * eval(n->b.get(), x, y);
    case Node::Op::Div: return eval(n->a.get(), x, y) / eval(n->b.get(), x, y);
    case Node::Op::Pow: return std::pow(eval(n->a.get(), x, y), eval(n->b.get(), x, y));
    case Node::Op::Neg: return -eval(n->a.get(), x, y);
    case Node::Op::Fun1: {
      double v = eval(n->a.get(), x, y);
      switch (n->fun) {
        case F_ABS: return std::fabs(v);
        case F_FLOOR: return std::floor(v);
        case F_SQRT: return std::sqrt(v);
        case F_EXP: return std::exp(v);
        case F_LOG: return std::log(v);
        case F_SIN: return std::sin(v);
        case F_COS: return std::cos(v);
        case F_STEP: return v >= 0 ? 1.0 : 0.0;
      }
      break;
    }
    case Node::Op::Fun2: {
      double u = eval(n->a.get(), x, y), v = eval(n->b.get(), x, y);
      switch (n->fun) {
        case F_MIN: return std::min(u, v);
        case F_MAX: return std::max(u, v);
        case F_LE: return u <= v ? 1.0 : 0.0;
      }
      break;
    }
  }
  throw std::logic_error("bad expression node");
}

struct Parser {
  const std::string& s;
  size_t i = 0;
  bool allow_y;

  explicit Parser(const std::string& src, bool y) : s(src), allow_y(y) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("expression error at offset " + std::to_string(i) + ": " + msg);
  }

  NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr a = term();
    while (true) {
      if (eat('+'))
        a = make(Node::Op::Add, a, term());
      else if (eat('-'))
        a = make(Node::Op::Sub, a, term());
      else
        return a;
    }
  }

  NodePtr term() {
    NodePtr a = factor();
    while (true) {
      if (eat('*'))
        a = make(Node::Op::Mul, a, factor());
      else if (eat('/'))
        a = make(Node::Op::Div, a, factor());
      else
        return a;
    }
  }

  NodePtr factor() {
    NodePtr a = unary();
    if (eat('^')) return make(Node::Op::Pow, a, factor());  // right associative
    return a;
  }

  NodePtr unary() {
    if (eat('-')) return make(Node::Op::Neg, unary());
    return primary();
  }

  NodePtr primary() {
    skip();
    if (i >= s.size()) fail("unexpected end");
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end;
      double v = std::stod(s.substr(i), &end);
      i += end;
      auto n = make(Node::Op::Const);
      n->value = v;
      return n;
    }
    if (c == '(') {
      ++i;
      NodePtr a = expr();
      if (!eat(')')) fail("missing ')'");
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string name = s.substr(start, i - start);
      if (name == "x") return make(Node::Op::VarX);
      if (name == "y") {
        if (!allow_y) fail("variable y not available in a 1-d profile");
        return make(Node::Op::VarY);
      }
      static const std::map<std::string, int> fun1 = {
          {"abs", F_ABS}, {"floor", F_FLOOR}, {"sqrt", F_SQRT}, {"exp", F_EXP},
          {"log", F_LOG}, {"sin", F_SIN},     {"cos", F_COS},   {"step", F_STEP}};
      static const std::map<std::string, int> fun2 = {{"min", F_MIN}, {"max", F_MAX}, {"le", F_LE}};
      if (!eat('(')) fail("expected '(' after " + name);
      if (auto it = fun1.find(name); it != fun1.end()) {
        auto n = make(Node::Op::Fun1, expr());
        n->fun = it->second;
        if (!eat(')')) fail("missing ')'");
        return n;
      }
      if (auto it = fun2.find(name); it != fun2.end()) {
        NodePtr a = expr();
        if (!eat(',')) fail("expected ',' in " + name);
        NodePtr b = expr();
        if (!eat(')')) fail("missing ')'");
        auto n = make(Node::Op::Fun2, a, b);
        n->fun = it->second;
        return n;
      }
      fail("unknown function " + name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse() {
    NodePtr a = expr();
    skip();
    if (i != s.size()) fail("trailing input");
    return a;
  }
};

}  // namespace

Sigma2 compile_sigma2(const std::string& expr) {
  Parser p(expr, true);
  NodePtr root = p.parse();
  return [root](double x, double y) { return eval(root.get(), x, y); };
}

Sigma1 compile_sigma1(const std::string& expr) {
  Parser p(expr, false);
  NodePtr root = p.parse();
  return [root](double x) { return eval(root.get(), x, 0.0); };
}

Sigma2 profile2_by_name(const std::string& name) {
  if (name == "upper_triangular")
    return [](double x, double y) { return x <= y ? 1.0 : 0.0; };
  if (name.rfind("band2:", 0) == 0) {
    double a = std::stod(name.substr(6));
    return [a](double x, double) { return (x <= a || x >= 1.0 - a) ? 1.0 : 0.0; };
  }
  if (name.rfind("band:", 0) == 0) {
    double a = std::stod(name.substr(5));
    return [a](double x, double) { return x <= a ? 1.0 : 0.0; };
  }
  return compile_sigma2(name);
}

Sigma1 profile1_by_name(const std::string& name) {
  if (name.rfind("band2:", 0) == 0) {
    double a = std::stod(name.substr(6));
    return [a](double x) { return (x <= a || x >= 1.0 - a) ? 1.0 : 0.0; };
  }
  if (name.rfind("band:", 0) == 0) {
    double a = std::stod(name.substr(5));
    return [a](double x) { return x <= a ? 1.0 : 0.0; };
  }
  return compile_sigma1(name);
}

}  // namespace rmt
