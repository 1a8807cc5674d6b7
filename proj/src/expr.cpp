#include "trilab/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace trilab {

struct Expr::Node {
  enum class Op { Const, VarN, VarK, Add, Sub, Mul, Div, Neg };
  Op op;
  Rat value;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw std::invalid_argument("trailing input in expression at position " +
                                  std::to_string(pos_));
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("bad expression: " + what + " at position " +
                                std::to_string(pos_));
  }

  static NodePtr make(Expr::Node::Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr expr() {
    NodePtr acc = term();
    for (;;) {
      if (eat('+'))
        acc = make(Expr::Node::Op::Add, acc, term());
      else if (eat('-'))
        acc = make(Expr::Node::Op::Sub, acc, term());
      else
        return acc;
    }
  }

  NodePtr term() {
    NodePtr acc = unary();
    for (;;) {
      if (eat('*'))
        acc = make(Expr::Node::Op::Mul, acc, unary());
      else if (eat('/'))
        acc = make(Expr::Node::Op::Div, acc, unary());
      else
        return acc;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Expr::Node::Op::Neg, unary());
    return atom();
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (c == 'n' || c == 'k') {
      ++pos_;
      return make(c == 'n' ? Expr::Node::Op::VarN : Expr::Node::Op::VarK);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto n = std::make_shared<Expr::Node>();
      n->op = Expr::Node::Op::Const;
      n->value = Rat(Int(s_.substr(start, pos_ - start), 10));
      return n;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

Rat eval_node(const Expr::Node& node, long n, long k) {
  using Op = Expr::Node::Op;
  switch (node.op) {
    case Op::Const:
      return node.value;
    case Op::VarN:
      return Rat(static_cast<signed long>(n));
    case Op::VarK:
      return Rat(static_cast<signed long>(k));
    case Op::Add:
      return eval_node(*node.lhs, n, k) + eval_node(*node.rhs, n, k);
    case Op::Sub:
      return eval_node(*node.lhs, n, k) - eval_node(*node.rhs, n, k);
    case Op::Mul:
      return eval_node(*node.lhs, n, k) * eval_node(*node.rhs, n, k);
    case Op::Div: {
      Rat r = eval_node(*node.rhs, n, k);
      if (r == 0) throw std::domain_error("division by zero in expression");
      return eval_node(*node.lhs, n, k) / r;
    }
    case Op::Neg:
      return -eval_node(*node.lhs, n, k);
  }
  throw std::runtime_error("unreachable expression op");
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

Rat Expr::eval(long n, long k) const {
  if (!root_) throw std::runtime_error("evaluating an empty expression");
  return eval_node(*root_, n, k);
}

}  // namespace trilab
