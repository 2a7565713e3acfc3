#include <cctype>
#include <vector>

#include "ie/error.hpp"
#include "ie/expr.hpp"

namespace ie {

struct Expr::Node {
  Kind kind;
  Rational value;
  std::string name;
  Function function = Function::sin;
  std::vector<Expr> children;
};

Expr Expr::constant(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (kind != Kind::add && kind != Kind::sub && kind != Kind::mul && kind != Kind::div) {
    raise(ErrorCode::InvalidArgument, "not a binary operator");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, Expr exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->children = {std::move(base), std::move(exponent)};
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::neg;
  n->children = {std::move(operand)};
  return Expr(std::move(n));
}

Expr Expr::call(Function f, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->function = f;
  n->children = {std::move(argument)};
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Function Expr::function() const { return node_->function; }

const Expr& Expr::lhs() const { return node_->children.at(0); }
const Expr& Expr::rhs() const { return node_->children.at(1); }
const Expr& Expr::operand() const { return node_->children.at(0); }

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Expr::Kind::constant: return x.value() == y.value();
    case Expr::Kind::variable: return x.name() == y.name();
    case Expr::Kind::neg: return x.operand() == y.operand();
    case Expr::Kind::call: return x.function() == y.function() && x.operand() == y.operand();
    default: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::div, a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    raise(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos_) + " in '" +
                                      std::string(src_) + "'");
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() {
    skip_space();
    return pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.');
  }

  bool peek_ident() {
    skip_space();
    return pos_ < src_.size() &&
           (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_');
  }

  Rational read_number() {
    skip_space();
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      ++pos_;
    }
    try {
      return parse_rational(src_.substr(start, pos_ - start));
    } catch (const Error&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  std::string read_ident() {
    skip_space();
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (accept('+')) e = e + parse_term();
      else if (accept('-')) e = e - parse_term();
      else return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (accept('*')) {
        e = e * parse_factor();
      } else if (accept('/')) {
        Expr rhs = parse_factor();
        // p/q literals become one constant
        if (e.kind() == Expr::Kind::constant && rhs.kind() == Expr::Kind::constant &&
            rhs.value() != 0) {
          e = Expr::constant(e.value() / rhs.value());
        } else {
          e = e / rhs;
        }
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    Expr base = parse_base();
    if (accept('^')) return Expr::power(base, parse_exponent());
    return base;
  }

  Expr parse_exponent() {
    Expr e = [&] {
      if (accept('(')) {
        Expr inner = parse_expr();
        expect(')');
        return inner;
      }
      const bool negative = accept('-');
      Expr atom = [&] {
        if (peek_digit()) {
          Rational k = read_number();
          if (k.get_den() != 1) fail("exponent must be an integer");
          return Expr::constant(k);
        }
        if (peek_ident()) {
          std::string id = read_ident();
          skip_space();
          if (pos_ < src_.size() && src_[pos_] == '(') fail("function call in exponent needs parentheses");
          return Expr::variable(std::move(id));
        }
        fail("expected an integer or identifier exponent");
      }();
      if (!negative) return atom;
      if (atom.kind() == Expr::Kind::constant) return Expr::constant(-atom.value());
      return -atom;
    }();
    if (accept('^')) return Expr::power(e, parse_exponent());
    return e;
  }

  Expr parse_base() {
    if (accept('-')) {
      Expr inner = parse_base();
      if (inner.kind() == Expr::Kind::constant) return Expr::constant(-inner.value());
      return -inner;
    }
    if (accept('(')) {
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (peek_digit()) return Expr::constant(read_number());
    if (peek_ident()) {
      const size_t start = pos_;
      std::string id = read_ident();
      if (accept('(')) {
        auto f = function_from_name(id);
        if (!f) {
          pos_ = start;
          raise(ErrorCode::UnknownFunction, "unknown function '" + id + "' at position " +
                                                std::to_string(start));
        }
        Expr arg = parse_expr();
        expect(')');
        return Expr::call(*f, arg);
      }
      return Expr::variable(std::move(id));
    }
    if (pos_ >= src_.size()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, src_[pos_]) + "'");
  }

  std::string_view src_;
  size_t pos_ = 0;
};

bool is_natural_constant(const Expr& e) {
  return e.kind() == Expr::Kind::constant && e.value().get_den() == 1 && e.value() >= 0;
}

std::string wrap(const std::string& s) { return "(" + s + ")"; }

bool is_atom(const Expr& e) {
  return e.kind() == Expr::Kind::variable || e.kind() == Expr::Kind::call || is_natural_constant(e);
}

std::string render_node(const Expr& e);

// Right operand of + or -.
std::string render_additive_rhs(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::neg:
      return wrap(render_node(e));
    case Expr::Kind::constant:
      return e.value() < 0 ? wrap(render_node(e)) : render_node(e);
    default:
      return render_node(e);
  }
}

// Right operand of * or /.
std::string render_multiplicative_rhs(const Expr& e) {
  if (is_atom(e) || e.kind() == Expr::Kind::pow) return render_node(e);
  return wrap(render_node(e));
}

std::string render_exponent(const Expr& e) {
  if (e.kind() == Expr::Kind::constant && e.value().get_den() == 1) return render_node(e);
  if (e.kind() == Expr::Kind::variable) return e.name();
  if (e.kind() == Expr::Kind::neg && e.operand().kind() == Expr::Kind::variable) {
    return "-" + e.operand().name();
  }
  return wrap(render_node(e));
}

std::string render_node(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return to_string(e.value());
    case Expr::Kind::variable:
      return e.name();
    case Expr::Kind::call:
      return std::string(function_name(e.function())) + "(" + render_node(e.operand()) + ")";
    case Expr::Kind::add:
      return render_node(e.lhs()) + " + " + render_additive_rhs(e.rhs());
    case Expr::Kind::sub:
      return render_node(e.lhs()) + " - " + render_additive_rhs(e.rhs());
    case Expr::Kind::mul:
    case Expr::Kind::div: {
      const Expr& l = e.lhs();
      std::string left = (l.kind() == Expr::Kind::add || l.kind() == Expr::Kind::sub)
                             ? wrap(render_node(l))
                             : render_node(l);
      return left + (e.kind() == Expr::Kind::mul ? "*" : "/") + render_multiplicative_rhs(e.rhs());
    }
    case Expr::Kind::neg: {
      const Expr& o = e.operand();
      return "-" + (is_atom(o) ? render_node(o) : wrap(render_node(o)));
    }
    case Expr::Kind::pow: {
      const Expr& b = e.lhs();
      return (is_atom(b) ? render_node(b) : wrap(render_node(b))) + "^" + render_exponent(e.rhs());
    }
  }
  return "?";
}

void collect_variables(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::constant: return;
    case Expr::Kind::variable:
      if (e.name() != "eps" && e.name() != "H") out.insert(e.name());
      return;
    case Expr::Kind::neg:
    case Expr::Kind::call:
      collect_variables(e.operand(), out);
      return;
    default:
      collect_variables(e.lhs(), out);
      collect_variables(e.rhs(), out);
  }
}

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string render(const Expr& e) { return render_node(e); }

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

std::string function_variable(const Expr& e) {
  auto vars = free_variables(e);
  vars.erase("n");
  if (vars.empty()) return "x";
  if (vars.size() > 1) {
    raise(ErrorCode::InvalidArgument, "expression '" + render(e) + "' has more than one free variable");
  }
  return *vars.begin();
}

}  // namespace ie
