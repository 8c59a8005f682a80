#include "exoform/expr.hpp"

#include <cmath>

#include "exoform/error.hpp"
#include "poly.hpp"

namespace exoform {

const char* func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::exp: return "exp";
    case Func::log: return "log";
  }
  return "?";
}

struct ExprNode {
  NodeKind kind = NodeKind::constant;
  Rational value;
  int var = -1;
  std::string param;
  Func fn = Func::sin;
  long long exp = 0;
  std::vector<Expr> children;
};

static const std::shared_ptr<const ExprNode>& zero_node() {
  static const auto node = std::make_shared<const ExprNode>();
  return node;
}

Expr::Expr() : node_(zero_node()) {}

Expr Expr::constant(Rational value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::constant;
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::integer(long long value) { return constant(Rational(value)); }

Expr Expr::variable(int index) {
  if (index < 0) throw Error(ErrorKind::chart, "negative variable index");
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::variable;
  n->var = index;
  return Expr(std::move(n));
}

Expr Expr::parameter(std::string name) {
  if (name.empty()) throw Error(ErrorKind::name, "empty parameter name");
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::parameter;
  n->param = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::call(Func fn, Expr argument) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::call;
  n->fn = fn;
  n->children.push_back(std::move(argument));
  return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }

static void require_kind(const ExprNode& n, NodeKind k, const char* what) {
  if (n.kind != k) throw Error(ErrorKind::internal, std::string("node is not a ") + what);
}

const Rational& Expr::constant_value() const {
  require_kind(*node_, NodeKind::constant, "constant");
  return node_->value;
}

int Expr::variable_index() const {
  require_kind(*node_, NodeKind::variable, "variable");
  return node_->var;
}

const std::string& Expr::parameter_name() const {
  require_kind(*node_, NodeKind::parameter, "parameter");
  return node_->param;
}

Func Expr::call_function() const {
  require_kind(*node_, NodeKind::call, "call");
  return node_->fn;
}

long long Expr::exponent() const {
  require_kind(*node_, NodeKind::power, "power");
  return node_->exp;
}

const std::vector<Expr>& Expr::children() const { return node_->children; }

Expr make_sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms[0];
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::sum;
  n->children = std::move(terms);
  return Expr(std::move(n));
}

Expr make_product(std::vector<Expr> factors) {
  if (factors.empty()) return Expr::integer(1);
  if (factors.size() == 1) return factors[0];
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::product;
  n->children = std::move(factors);
  return Expr(std::move(n));
}

Expr pow(const Expr& base, long long exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::power;
  n->exp = exponent;
  n->children.push_back(base);
  return Expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return make_sum({a, b}); }

Expr operator-(const Expr& a, const Expr& b) { return make_sum({a, -b}); }

Expr operator*(const Expr& a, const Expr& b) { return make_product({a, b}); }

Expr operator/(const Expr& a, const Expr& b) { return make_product({a, pow(b, -1)}); }

Expr Expr::operator-() const {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::negate;
  n->children.push_back(*this);
  return Expr(std::move(n));
}

int compare_trees(const Expr& a, const Expr& b) {
  const ExprNode& na = *a.node();
  const ExprNode& nb = *b.node();
  if (na.kind != nb.kind)
    return static_cast<int>(na.kind) < static_cast<int>(nb.kind) ? -1 : 1;
  switch (na.kind) {
    case NodeKind::constant:
      if (na.value != nb.value) return na.value < nb.value ? -1 : 1;
      return 0;
    case NodeKind::variable:
      if (na.var != nb.var) return na.var < nb.var ? -1 : 1;
      return 0;
    case NodeKind::parameter:
      return na.param.compare(nb.param);
    case NodeKind::call:
      if (na.fn != nb.fn) return static_cast<int>(na.fn) < static_cast<int>(nb.fn) ? -1 : 1;
      break;
    case NodeKind::power:
      if (na.exp != nb.exp) return na.exp < nb.exp ? -1 : 1;
      break;
    default:
      break;
  }
  if (na.children.size() != nb.children.size())
    return na.children.size() < nb.children.size() ? -1 : 1;
  for (std::size_t i = 0; i < na.children.size(); ++i) {
    int c = compare_trees(na.children[i], nb.children[i]);
    if (c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::sum: return 1;
    case NodeKind::negate: return 1;
    case NodeKind::product: return 2;
    case NodeKind::power: return 3;
    default: return 4;
  }
}

void print(const ExprNode& n, const Chart* chart, std::string& out);

void print_wrapped(const Expr& e, const Chart* chart, int min_prec, std::string& out) {
  const ExprNode& n = *e.node();
  bool wrap = precedence(n) < min_prec;
  if (!wrap && n.kind == NodeKind::constant && (n.value < 0 || min_prec >= 3))
    wrap = boost::multiprecision::denominator(n.value) != 1 || n.value < 0;
  if (wrap) out += '(';
  print(n, chart, out);
  if (wrap) out += ')';
}

void print(const ExprNode& n, const Chart* chart, std::string& out) {
  switch (n.kind) {
    case NodeKind::constant:
      out += to_string(n.value);
      return;
    case NodeKind::variable:
      if (chart && n.var < chart->dimension())
        out += chart->name(n.var);
      else
        out += "x" + std::to_string(n.var + 1);
      return;
    case NodeKind::parameter:
      out += n.param;
      return;
    case NodeKind::sum: {
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        const ExprNode& child = *n.children[i].node();
        if (i == 0) {
          print(child, chart, out);
        } else if (child.kind == NodeKind::negate) {
          out += " - ";
          print_wrapped(child.children[0], chart, 2, out);
        } else if (child.kind == NodeKind::constant && child.value < 0) {
          out += " - ";
          out += to_string(Rational(-child.value));
        } else {
          out += " + ";
          print_wrapped(n.children[i], chart, 2, out);
        }
      }
      return;
    }
    case NodeKind::product: {
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += '*';
        print_wrapped(n.children[i], chart, 2, out);
      }
      return;
    }
    case NodeKind::power: {
      print_wrapped(n.children[0], chart, 3, out);
      out += '^';
      if (n.exp < 0) {
        out += "(" + std::to_string(n.exp) + ")";
      } else {
        out += std::to_string(n.exp);
      }
      return;
    }
    case NodeKind::negate:
      out += '-';
      print_wrapped(n.children[0], chart, 2, out);
      return;
    case NodeKind::call:
      out += func_name(n.fn);
      out += '(';
      print(*n.children[0].node(), chart, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e, const Chart* chart) {
  std::string out;
  print(*e.node(), chart, out);
  return out;
}

// ---------------------------------------------------------------------------
// Operations over the canonical core

Expr simplify(const Expr& e) { return detail::render(detail::normalize(e)); }

Expr differentiate(const Expr& e, int var) {
  if (var < 0) throw Error(ErrorKind::chart, "negative variable index");
  return detail::render(detail::derivative(detail::normalize(e), var));
}

Expr differentiate(const Expr& e, const Chart& chart, const std::string& var) {
  int index = chart.index_of(var);
  if (index < 0)
    throw Error(ErrorKind::chart, "variable '" + var + "' is not on the chart");
  if (max_variable(e) >= chart.dimension())
    throw Error(ErrorKind::chart, "expression references a variable off the chart");
  return differentiate(e, index);
}

static Expr substitute_tree(const Expr& e, const std::map<int, Expr>& bindings) {
  const ExprNode& n = *e.node();
  switch (n.kind) {
    case NodeKind::constant:
    case NodeKind::parameter:
      return e;
    case NodeKind::variable: {
      auto it = bindings.find(n.var);
      return it == bindings.end() ? e : it->second;
    }
    case NodeKind::call:
      return Expr::call(n.fn, substitute_tree(n.children[0], bindings));
    case NodeKind::power:
      return pow(substitute_tree(n.children[0], bindings), n.exp);
    case NodeKind::negate:
      return -substitute_tree(n.children[0], bindings);
    case NodeKind::sum:
    case NodeKind::product: {
      std::vector<Expr> children;
      children.reserve(n.children.size());
      for (const auto& child : n.children) children.push_back(substitute_tree(child, bindings));
      return n.kind == NodeKind::sum ? make_sum(std::move(children))
                                     : make_product(std::move(children));
    }
  }
  throw Error(ErrorKind::internal, "unknown expression node");
}

Expr substitute(const Expr& e, const std::map<int, Expr>& bindings) {
  return simplify(substitute_tree(e, bindings));
}

Expr integrate_poly(const Expr& e, int var) {
  if (var < 0) throw Error(ErrorKind::chart, "negative variable index");
  return detail::render(detail::integrate(detail::normalize(e), var));
}

ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options) {
  return detail::poly_is_zero(detail::normalize(e), options);
}

std::optional<double> evaluate(const Expr& e, std::span<const double> variables,
                               const std::map<std::string, double>& parameters) {
  const ExprNode& n = *e.node();
  switch (n.kind) {
    case NodeKind::constant:
      return to_double(n.value);
    case NodeKind::variable:
      if (n.var >= static_cast<int>(variables.size())) return std::nullopt;
      return variables[static_cast<std::size_t>(n.var)];
    case NodeKind::parameter: {
      auto it = parameters.find(n.param);
      if (it == parameters.end()) return std::nullopt;
      return it->second;
    }
    case NodeKind::sum: {
      double acc = 0;
      for (const auto& child : n.children) {
        auto v = evaluate(child, variables, parameters);
        if (!v) return std::nullopt;
        acc += *v;
      }
      return std::isfinite(acc) ? std::optional<double>(acc) : std::nullopt;
    }
    case NodeKind::product: {
      double acc = 1;
      for (const auto& child : n.children) {
        auto v = evaluate(child, variables, parameters);
        if (!v) return std::nullopt;
        acc *= *v;
      }
      return std::isfinite(acc) ? std::optional<double>(acc) : std::nullopt;
    }
    case NodeKind::power: {
      auto v = evaluate(n.children[0], variables, parameters);
      if (!v) return std::nullopt;
      if (*v == 0 && n.exp < 0) return std::nullopt;
      double r = std::pow(*v, static_cast<double>(n.exp));
      return std::isfinite(r) ? std::optional<double>(r) : std::nullopt;
    }
    case NodeKind::negate: {
      auto v = evaluate(n.children[0], variables, parameters);
      if (!v) return std::nullopt;
      return -*v;
    }
    case NodeKind::call: {
      auto v = evaluate(n.children[0], variables, parameters);
      if (!v) return std::nullopt;
      double r = 0;
      switch (n.fn) {
        case Func::sin: r = std::sin(*v); break;
        case Func::cos: r = std::cos(*v); break;
        case Func::exp: r = std::exp(*v); break;
        case Func::log:
          if (*v <= 0) return std::nullopt;
          r = std::log(*v);
          break;
      }
      return std::isfinite(r) ? std::optional<double>(r) : std::nullopt;
    }
  }
  return std::nullopt;
}

bool contains_variable(const Expr& e, int var) {
  const ExprNode& n = *e.node();
  if (n.kind == NodeKind::variable) return n.var == var;
  for (const auto& child : n.children)
    if (contains_variable(child, var)) return true;
  return false;
}

int max_variable(const Expr& e) {
  const ExprNode& n = *e.node();
  int out = n.kind == NodeKind::variable ? n.var : -1;
  for (const auto& child : n.children) out = std::max(out, max_variable(child));
  return out;
}

bool contains_parameters_or_calls(const Expr& e) {
  const ExprNode& n = *e.node();
  if (n.kind == NodeKind::parameter || n.kind == NodeKind::call) return true;
  for (const auto& child : n.children)
    if (contains_parameters_or_calls(child)) return true;
  return false;
}

std::optional<Rational> as_rational(const Expr& e) {
  return detail::normalize(e).constant_value();
}

}  // namespace exoform
