#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "t1m/error.hpp"

namespace t1m {

// Arithmetic mini-language for scene files:
//   literals, named variables, + - * / ^ (right-assoc), unary -, parentheses,
//   functions sin cos tan sinh cosh tanh exp log sqrt abs, constant pi.
class Expression {
 public:
  using Env = std::map<std::string, double, std::less<>>;

  static Expression parse(std::string_view text, const std::vector<std::string>& variables);

  double eval(const Env& env) const { return eval_node(root_.get(), env); }

  double eval1(std::string_view var, double value) const {
    Env env;
    env.emplace(std::string(var), value);
    return eval(env);
  }

  std::string print() const { return print_node(root_.get(), 0); }

  const std::string& source() const { return source_; }

 private:
  enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Fun };

  struct Node {
    Op op;
    double num = 0.0;
    std::string name;  // variable or function name
    std::vector<std::unique_ptr<Node>> kids;
  };

  using NodePtr = std::unique_ptr<Node>;

  static double eval_node(const Node* n, const Env& env) {
    switch (n->op) {
      case Op::Num: return n->num;
      case Op::Var: {
        auto it = env.find(n->name);
        if (it == env.end())
          throw Error(ErrorCode::OutOfRange, "unbound variable '" + n->name + "'");
        return it->second;
      }
      case Op::Add: return eval_node(n->kids[0].get(), env) + eval_node(n->kids[1].get(), env);
      case Op::Sub: return eval_node(n->kids[0].get(), env) - eval_node(n->kids[1].get(), env);
      case Op::Mul: return eval_node(n->kids[0].get(), env) * eval_node(n->kids[1].get(), env);
      case Op::Div: return eval_node(n->kids[0].get(), env) / eval_node(n->kids[1].get(), env);
      case Op::Pow: return std::pow(eval_node(n->kids[0].get(), env), eval_node(n->kids[1].get(), env));
      case Op::Neg: return -eval_node(n->kids[0].get(), env);
      case Op::Fun: {
        double a = eval_node(n->kids[0].get(), env);
        if (n->name == "sin") return std::sin(a);
        if (n->name == "cos") return std::cos(a);
        if (n->name == "tan") return std::tan(a);
        if (n->name == "sinh") return std::sinh(a);
        if (n->name == "cosh") return std::cosh(a);
        if (n->name == "tanh") return std::tanh(a);
        if (n->name == "exp") return std::exp(a);
        if (n->name == "log") return std::log(a);
        if (n->name == "sqrt") return std::sqrt(a);
        if (n->name == "abs") return std::fabs(a);
        throw Error(ErrorCode::UnknownFunction, n->name);
      }
    }
    return 0.0;
  }

  // precedence: 0 additive, 1 multiplicative, 2 power, 3 atom
  static std::string print_node(const Node* n, int parent_prec) {
    auto wrap = [&](const std::string& s, int prec) {
      return prec < parent_prec ? "(" + s + ")" : s;
    };
    switch (n->op) {
      case Op::Num: {
        char buf[40];
        auto r = std::to_chars(buf, buf + sizeof(buf), n->num);
        return wrap(std::string(buf, r.ptr), 3);
      }
      case Op::Var: return n->name;
      case Op::Add: return wrap(print_node(n->kids[0].get(), 0) + "+" + print_node(n->kids[1].get(), 1), 0);
      case Op::Sub: return wrap(print_node(n->kids[0].get(), 0) + "-" + print_node(n->kids[1].get(), 1), 0);
      case Op::Mul: return wrap(print_node(n->kids[0].get(), 1) + "*" + print_node(n->kids[1].get(), 2), 1);
      case Op::Div: return wrap(print_node(n->kids[0].get(), 1) + "/" + print_node(n->kids[1].get(), 2), 1);
      case Op::Pow: return wrap(print_node(n->kids[0].get(), 3) + "^" + print_node(n->kids[1].get(), 2), 2);
      case Op::Neg: return wrap("-" + print_node(n->kids[0].get(), 2), 1);
      case Op::Fun: return n->name + "(" + print_node(n->kids[0].get(), 0) + ")";
    }
    return "";
  }

  struct Parser {
    std::string_view s;
    std::size_t at = 0;
    const std::vector<std::string>* vars;

    void skip_ws() {
      while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at;
    }

    bool peek_is(char c) {
      skip_ws();
      return at < s.size() && s[at] == c;
    }

    bool consume(char c) {
      if (peek_is(c)) {
        ++at;
        return true;
      }
      return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseFailure(at, msg); }

    NodePtr expression() {
      NodePtr lhs = term();
      for (;;) {
        if (consume('+')) {
          lhs = binary(Op::Add, std::move(lhs), term());
        } else if (consume('-')) {
          lhs = binary(Op::Sub, std::move(lhs), term());
        } else {
          return lhs;
        }
      }
    }

    NodePtr term() {
      NodePtr lhs = factor();
      for (;;) {
        if (consume('*')) {
          lhs = binary(Op::Mul, std::move(lhs), factor());
        } else if (consume('/')) {
          lhs = binary(Op::Div, std::move(lhs), factor());
        } else {
          return lhs;
        }
      }
    }

    // factor handles unary minus below ^ so that -x^2 parses as -(x^2)
    NodePtr factor() {
      if (consume('-')) {
        auto n = std::make_unique<Node>();
        n->op = Op::Neg;
        n->kids.push_back(factor());
        return n;
      }
      return power();
    }

    NodePtr power() {
      NodePtr base = primary();
      if (consume('^')) return binary(Op::Pow, std::move(base), factor());
      return base;
    }

    NodePtr primary() {
      skip_ws();
      if (at >= s.size()) fail("unexpected end of expression");
      char c = s[at];
      if (c == '(') {
        ++at;
        NodePtr inner = expression();
        skip_ws();
        if (!consume(')')) fail("expected ')'");
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
      fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
      double value = 0.0;
      const char* begin = s.data() + at;
      const char* end = s.data() + s.size();
      auto r = std::from_chars(begin, end, value);
      if (r.ec != std::errc()) fail("invalid number");
      at += static_cast<std::size_t>(r.ptr - begin);
      auto n = std::make_unique<Node>();
      n->op = Op::Num;
      n->num = value;
      return n;
    }

    NodePtr identifier() {
      std::size_t start = at;
      while (at < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[at])) || s[at] == '_'))
        ++at;
      std::string name(s.substr(start, at - start));
      if (peek_is('(')) {
        static const char* fns[] = {"sin", "cos",  "tan", "sinh", "cosh",
                                    "tanh", "exp", "log", "sqrt", "abs"};
        bool known = false;
        for (const char* f : fns) known = known || (name == f);
        if (!known) throw ParseFailure(start, "unknown function '" + name + "'",
                                       ErrorCode::UnknownFunction);
        ++at;  // '('
        auto n = std::make_unique<Node>();
        n->op = Op::Fun;
        n->name = name;
        n->kids.push_back(expression());
        skip_ws();
        if (!consume(')')) fail("expected ')' closing call to '" + name + "'");
        return n;
      }
      if (name == "pi") {
        auto n = std::make_unique<Node>();
        n->op = Op::Num;
        n->num = 3.14159265358979323846;
        return n;
      }
      for (const auto& v : *vars)
        if (v == name) {
          auto n = std::make_unique<Node>();
          n->op = Op::Var;
          n->name = name;
          return n;
        }
      throw ParseFailure(start, "unknown identifier '" + name + "'");
    }

    static NodePtr binary(Op op, NodePtr a, NodePtr b) {
      auto n = std::make_unique<Node>();
      n->op = op;
      n->kids.push_back(std::move(a));
      n->kids.push_back(std::move(b));
      return n;
    }
  };

  std::shared_ptr<Node> root_;
  std::string source_;
};

inline Expression Expression::parse(std::string_view text,
                                    const std::vector<std::string>& variables) {
  if (text.empty()) throw ParseFailure(0, "empty expression");
  Parser p{text, 0, &variables};
  NodePtr root = p.expression();
  p.skip_ws();
  if (p.at != text.size()) p.fail("trailing input");
  Expression e;
  e.root_ = std::shared_ptr<Node>(root.release());
  e.source_ = std::string(text);
  return e;
}

}  // namespace t1m
