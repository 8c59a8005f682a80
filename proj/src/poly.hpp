#pragma once

// Internal canonical representation behind Expr: Laurent polynomials over the
// rationals in "atoms" — chart variables, named parameters, transcendental
// calls with canonical arguments, and composite atoms (canonical polynomial
// bases raised to negative integer powers, the residue of division by a
// non-monomial). Everything the public simplify/differentiate/is_zero
// operations do happens here.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exoform/expr.hpp"

namespace exoform::detail {

enum class AtomKind : std::uint8_t { variable, parameter, call, composite };

struct Poly;
using PolyPtr = std::shared_ptr<const Poly>;

struct Atom {
  AtomKind kind;
  int var = -1;        // variable index
  std::string param;   // parameter name
  Func fn = Func::sin; // call function
  PolyPtr sub;         // call argument or composite base, canonical

  static Atom variable(int index);
  static Atom parameter(std::string name);
  static Atom call(Func fn, PolyPtr argument);
  static Atom composite(PolyPtr base);
};

using AtomPtr = std::shared_ptr<const Atom>;

int compare_atoms(const Atom& a, const Atom& b);
int compare_polys(const Poly& a, const Poly& b);

struct Factor {
  AtomPtr atom;
  long long exp;  // nonzero; composite atoms always carry negative exponents
};

// Product of atom powers, sorted by atom order; the empty monomial is 1.
struct Monomial {
  std::vector<Factor> factors;

  long long grade() const;
  bool is_unit() const { return factors.empty(); }
};

int compare_monomials(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_monomials(a, b) < 0;
  }
};

// Canonical Laurent polynomial: monomial -> nonzero rational coefficient.
struct Poly {
  std::map<Monomial, Rational, MonomialLess> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  std::optional<Rational> constant_value() const;
};

Poly poly_constant(const Rational& value);
Poly poly_atom(AtomPtr atom);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly mul(const Poly& a, const Poly& b);
Poly mul_scalar(const Poly& a, const Rational& c);
// Integer power; negative exponents invert monomials or mint composite
// atoms. Throws on 0^negative.
Poly pow_poly(const Poly& base, long long exponent);

// Partial derivative with respect to a chart variable (chain rule through
// call and composite atoms).
Poly derivative(const Poly& p, int var);

// Antiderivative in `var` with zero constant; requires every monomial
// polynomial in `var` and no atom argument mentioning it.
Poly integrate(const Poly& p, int var);

// Conversion to and from the public tree. normalize . render is the
// identity on canonical polys, which makes simplify idempotent.
Poly normalize(const Expr& e);
Expr render(const Poly& p);

// Structure queries. "Mentions" looks inside call arguments and composite
// bases.
bool mentions_variable(const Poly& p, int var);
int max_variable(const Poly& p);
bool has_calls_or_composites(const Poly& p);
void collect_parameters(const Poly& p, std::vector<std::string>& out);

// True when p is polynomial in the chart variables: variable exponents all
// positive and no atom argument mentions a variable (parameters and
// constant transcendentals pass).
bool polynomial_in_variables(const Poly& p);
// Total degree of a monomial in the chart variables alone.
long long variable_grade(const Monomial& m);

// Stable content key used to seed the per-expression sampler stream.
std::string poly_key(const Poly& p);

// Double evaluation at a point; nullopt on domain errors or non-finite
// intermediates. Parameters without an entry in `params` invalidate the
// evaluation.
std::optional<double> eval_poly(const Poly& p, std::span<const double> vars,
                                const std::map<std::string, double>& params);

// Exact zero decision where possible: empty poly, pure variable/parameter
// Laurent polynomials, and the rational-function class (composites cleared
// by multiplying through denominators). Seeded sampling elsewhere.
ZeroVerdict poly_is_zero(const Poly& p, const ZeroTestOptions& options);

}  // namespace exoform::detail
