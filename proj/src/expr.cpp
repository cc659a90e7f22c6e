#include "qlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>

#include "qlab/error.hpp"

namespace qlab {

namespace {

struct Node {
  char op = 0;  // 'n' number, 'x' variable, '~' negate, else binary operator
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(double x) const {
    switch (op) {
      case 'n': return value;
      case 'x': return x;
      case '~': return -lhs->eval(x);
      case '+': return lhs->eval(x) + rhs->eval(x);
      case '-': return lhs->eval(x) - rhs->eval(x);
      case '*': return lhs->eval(x) * rhs->eval(x);
      case '/': return lhs->eval(x) / rhs->eval(x);
      case '^': return std::pow(lhs->eval(x), rhs->eval(x));
      default: return 0.0;
    }
  }
};

using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("expression: " + what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (accept('+')) {
        n = binary('+', n, product());
      } else if (accept('-')) {
        n = binary('-', n, product());
      } else {
        return n;
      }
    }
  }

  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) {
        n = binary('*', n, unary());
      } else if (accept('/')) {
        n = binary('/', n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->op = '~';
      n->lhs = unary();
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      NodePtr n = sum();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (s_[pos_] == 'x') {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->op = 'x';
      return n;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number, 'x' or '('");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Node>();
    n->op = 'n';
    n->value = v;
    return n;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
  NodePtr root = Parser(text).parse();
  return [root](double x) { return root->eval(x); };
}

}  // namespace qlab
