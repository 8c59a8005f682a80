#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exoform/chart.hpp"
#include "exoform/rational.hpp"
#include "exoform/verdict.hpp"

namespace exoform {

enum class Func : std::uint8_t { sin, cos, exp, log };

const char* func_name(Func f);

enum class NodeKind : std::uint8_t {
  constant,   // rational constant
  variable,   // chart variable by index
  parameter,  // named symbolic constant (derivatives vanish)
  sum,
  product,
  power,      // integer exponent
  negate,
  call,       // unary transcendental
};

struct ExprNode;

// Immutable symbolic scalar expression. Construction is cheap and structural;
// simplify() produces the canonical form (a sum of normalized monomials over
// chart variables, parameters, and opaque transcendental atoms).
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(Rational value);
  static Expr integer(long long value);
  static Expr variable(int index);
  static Expr parameter(std::string name);
  static Expr call(Func fn, Expr argument);

  NodeKind kind() const;
  // Payload accessors; only valid for the matching node kind.
  const Rational& constant_value() const;
  int variable_index() const;
  const std::string& parameter_name() const;
  Func call_function() const;
  long long exponent() const;
  const std::vector<Expr>& children() const;

  bool is_constant() const { return kind() == NodeKind::constant; }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  const std::shared_ptr<const ExprNode>& node() const { return node_; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;

  friend Expr pow(const Expr& base, long long exponent);
  friend Expr make_sum(std::vector<Expr> terms);
  friend Expr make_product(std::vector<Expr> factors);
};

Expr pow(const Expr& base, long long exponent);
Expr make_sum(std::vector<Expr> terms);
Expr make_product(std::vector<Expr> factors);

// Deterministic structural total order on expression trees; 0 on equality.
int compare_trees(const Expr& a, const Expr& b);
inline bool same_tree(const Expr& a, const Expr& b) { return compare_trees(a, b) == 0; }

// Canonical simplification. Idempotent; preserves value on the domain.
Expr simplify(const Expr& e);

// Partial derivative with respect to a chart variable, in canonical form.
Expr differentiate(const Expr& e, int var);
// Chart-checked variant: the variable must belong to the chart.
Expr differentiate(const Expr& e, const Chart& chart, const std::string& var);

// Simultaneous substitution of chart variables, then simplification.
Expr substitute(const Expr& e, const std::map<int, Expr>& bindings);

// Antiderivative in v with zero constant; requires e polynomial in v.
Expr integrate_poly(const Expr& e, int var);

// Exact/probabilistic zero test. Exact decisions on the pure
// variable/parameter polynomial core; sampling otherwise.
ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options = {});

// Point evaluation in double precision. Variables take values by index;
// parameters by name. Returns nullopt on domain errors or non-finite results.
std::optional<double> evaluate(const Expr& e, std::span<const double> variables,
                               const std::map<std::string, double>& parameters = {});

bool contains_variable(const Expr& e, int var);
// Largest referenced variable index, or -1.
int max_variable(const Expr& e);
bool contains_parameters_or_calls(const Expr& e);

// Constant value of a canonically simplified expression, if it is one.
std::optional<Rational> as_rational(const Expr& e);

// Canonical text. Variables print with chart names when a chart is given,
// otherwise as x1, x2, ...
std::string to_string(const Expr& e, const Chart* chart = nullptr);

}  // namespace exoform
