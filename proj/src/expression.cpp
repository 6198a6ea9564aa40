#include "psesk/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "psesk/errors.hpp"

namespace psesk {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual double eval(double x) const = 0;
};
using NodePtr = std::shared_ptr<const Node>;

struct Constant : Node {
  double v;
  explicit Constant(double v) : v(v) {}
  double eval(double) const override { return v; }
};

struct Variable : Node {
  double eval(double x) const override { return x; }
};

struct Unary : Node {
  char op;
  NodePtr a;
  Unary(char op, NodePtr a) : op(op), a(std::move(a)) {}
  double eval(double x) const override {
    double v = a->eval(x);
    switch (op) {
      case '-': return -v;
      case 's': return 1.0 / std::cosh(v);
      case 't': return std::tanh(v);
      case 'e': return std::exp(v);
    }
    return v;
  }
};

struct Binary : Node {
  char op;
  NodePtr a, b;
  Binary(char op, NodePtr a, NodePtr b) : op(op), a(std::move(a)), b(std::move(b)) {}
  double eval(double x) const override {
    double u = a->eval(x), v = b->eval(x);
    switch (op) {
      case '+': return u + v;
      case '-': return u - v;
      case '*': return u * v;
      case '/': return u / v;
      case '^': return std::pow(u, v);
    }
    return 0.0;
  }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
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

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = std::make_shared<Binary>('+', n, term());
      else if (accept('-')) n = std::make_shared<Binary>('-', n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = std::make_shared<Binary>('*', n, unary());
      else if (accept('/')) n = std::make_shared<Binary>('/', n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return std::make_shared<Unary>('-', unary());
    if (accept('+')) return unary();
    return power();
  }

  // right associative; -x^2 parses as -(x^2)
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return std::make_shared<Binary>('^', base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return std::make_shared<Constant>(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "x") return std::make_shared<Variable>();
      char op = 0;
      if (name == "sech") op = 's';
      else if (name == "tanh") op = 't';
      else if (name == "exp") op = 'e';
      else {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return std::make_shared<Unary>(op, arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
  NodePtr root = Parser(text).parse();
  return [root](double x) { return root->eval(x); };
}

}  // namespace psesk
