#include "ie/error.hpp"
#include "ie/expr.hpp"

namespace ie {

namespace {

bool is_const(const Expr& e, int v) { return e.kind() == Expr::Kind::constant && e.value() == v; }
bool is_const(const Expr& e) { return e.kind() == Expr::Kind::constant; }

Expr add(const Expr& a, const Expr& b) {
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() + b.value());
  return a + b;
}

Expr sub(const Expr& a, const Expr& b) {
  if (is_const(b, 0)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() - b.value());
  if (is_const(a, 0)) return -b;
  return a - b;
}

Expr mul(const Expr& a, const Expr& b) {
  if (is_const(a, 0) || is_const(b, 0)) return Expr::constant(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() * b.value());
  return a * b;
}

Expr div(const Expr& a, const Expr& b) {
  if (is_const(a, 0)) return a;
  if (is_const(b, 1)) return a;
  return a / b;
}

bool depends_on(const Expr& e, std::string_view var) { return free_variables(e).count(std::string(var)) > 0; }

}  // namespace

Expr symbolic_derivative(const Expr& e, std::string_view var) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return Expr::constant(0);
    case Expr::Kind::variable:
      return Expr::constant(e.name() == var ? 1 : 0);
    case Expr::Kind::add:
      return add(symbolic_derivative(e.lhs(), var), symbolic_derivative(e.rhs(), var));
    case Expr::Kind::sub:
      return sub(symbolic_derivative(e.lhs(), var), symbolic_derivative(e.rhs(), var));
    case Expr::Kind::neg: {
      const Expr d = symbolic_derivative(e.operand(), var);
      return is_const(d) ? Expr::constant(-d.value()) : -d;
    }
    case Expr::Kind::mul:
      return add(mul(symbolic_derivative(e.lhs(), var), e.rhs()), mul(e.lhs(), symbolic_derivative(e.rhs(), var)));
    case Expr::Kind::div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      const Expr top = sub(mul(symbolic_derivative(u, var), v), mul(u, symbolic_derivative(v, var)));
      return div(top, Expr::power(v, Expr::constant(2)));
    }
    case Expr::Kind::pow: {
      if (depends_on(e.rhs(), var)) {
        raise(ErrorCode::DomainError, "exponent of " + render(e) + " depends on " + std::string(var));
      }
      const Expr& k = e.rhs();
      const Expr k1 = is_const(k) ? Expr::constant(k.value() - 1) : Expr::binary(Expr::Kind::sub, k, Expr::constant(1));
      const Expr lowered = is_const(k1, 1) ? e.lhs() : Expr::power(e.lhs(), k1);
      return mul(mul(k, is_const(k1, 0) ? Expr::constant(1) : lowered), symbolic_derivative(e.lhs(), var));
    }
    case Expr::Kind::call: {
      const Expr& u = e.operand();
      const Expr du = symbolic_derivative(u, var);
      if (is_const(du, 0)) return du;
      switch (e.function()) {
        case Function::sin: return mul(Expr::call(Function::cos, u), du);
        case Function::cos: return mul(-Expr::call(Function::sin, u), du);
        case Function::exp: return mul(e, du);
        case Function::ln: return div(du, u);
        case Function::sqrt: return div(du, mul(Expr::constant(2), e));
        case Function::atan: return div(du, add(Expr::constant(1), Expr::power(u, Expr::constant(2))));
        case Function::abs: return mul(div(e, u), du);
      }
    }
  }
  raise(ErrorCode::InvalidArgument, "malformed expression");
}

}  // namespace ie
