#include "poly.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "exoform/error.hpp"

namespace exoform::detail {

// ---------------------------------------------------------------------------
// Atoms

Atom Atom::variable(int index) {
  Atom a;
  a.kind = AtomKind::variable;
  a.var = index;
  return a;
}

Atom Atom::parameter(std::string name) {
  Atom a;
  a.kind = AtomKind::parameter;
  a.param = std::move(name);
  return a;
}

Atom Atom::call(Func fn, PolyPtr argument) {
  Atom a;
  a.kind = AtomKind::call;
  a.fn = fn;
  a.sub = std::move(argument);
  return a;
}

Atom Atom::composite(PolyPtr base) {
  Atom a;
  a.kind = AtomKind::composite;
  a.sub = std::move(base);
  return a;
}

static int rank(AtomKind k) { return static_cast<int>(k); }

int compare_atoms(const Atom& a, const Atom& b) {
  if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind) ? -1 : 1;
  switch (a.kind) {
    case AtomKind::variable:
      return a.var == b.var ? 0 : (a.var < b.var ? -1 : 1);
    case AtomKind::parameter:
      return a.param.compare(b.param) < 0 ? -1 : (a.param == b.param ? 0 : 1);
    case AtomKind::call: {
      int fa = static_cast<int>(a.fn), fb = static_cast<int>(b.fn);
      if (fa != fb) return fa < fb ? -1 : 1;
      return compare_polys(*a.sub, *b.sub);
    }
    case AtomKind::composite:
      return compare_polys(*a.sub, *b.sub);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Monomials

long long Monomial::grade() const {
  long long g = 0;
  for (const auto& f : factors) g += f.exp;
  return g;
}

long long variable_grade(const Monomial& m) {
  long long g = 0;
  for (const auto& f : m.factors)
    if (f.atom->kind == AtomKind::variable) g += f.exp;
  return g;
}

// Graded order, then a lexicographic rule under which a higher power of an
// earlier atom ranks later in the map — so reverse map order is the usual
// display order (x^2 before x*y before y^2).
int compare_monomials(const Monomial& a, const Monomial& b) {
  long long ga = a.grade(), gb = b.grade();
  if (ga != gb) return ga < gb ? -1 : 1;
  std::size_t i = 0;
  for (; i < a.factors.size() && i < b.factors.size(); ++i) {
    int c = compare_atoms(*a.factors[i].atom, *b.factors[i].atom);
    if (c != 0) return c < 0 ? 1 : -1;  // earlier atom => later in map
    if (a.factors[i].exp != b.factors[i].exp)
      return a.factors[i].exp < b.factors[i].exp ? -1 : 1;
  }
  if (i < a.factors.size()) return 1;
  if (i < b.factors.size()) return -1;
  return 0;
}

static Monomial merge_monomials(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    int c = compare_atoms(*a.factors[i].atom, *b.factors[j].atom);
    if (c < 0) {
      out.factors.push_back(a.factors[i++]);
    } else if (c > 0) {
      out.factors.push_back(b.factors[j++]);
    } else {
      long long e = a.factors[i].exp + b.factors[j].exp;
      if (e != 0) out.factors.push_back({a.factors[i].atom, e});
      ++i;
      ++j;
    }
  }
  for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
  for (; j < b.factors.size(); ++j) out.factors.push_back(b.factors[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Poly construction and comparison

bool Poly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_unit());
}

std::optional<Rational> Poly::constant_value() const {
  if (terms.empty()) return Rational(0);
  if (terms.size() == 1 && terms.begin()->first.is_unit()) return terms.begin()->second;
  return std::nullopt;
}

Poly poly_constant(const Rational& value) {
  Poly p;
  if (value != 0) p.terms.emplace(Monomial{}, value);
  return p;
}

Poly poly_atom(AtomPtr atom) {
  Poly p;
  Monomial m;
  m.factors.push_back({std::move(atom), 1});
  p.terms.emplace(std::move(m), Rational(1));
  return p;
}

static Poly poly_one() { return poly_constant(Rational(1)); }

int compare_polys(const Poly& a, const Poly& b) {
  auto ia = a.terms.begin(), ib = b.terms.begin();
  for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
    int c = compare_monomials(ia->first, ib->first);
    if (c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms.end()) return 1;
  if (ib != b.terms.end()) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// Arithmetic

static void accumulate(Poly& acc, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = acc.terms.find(m);
  if (it == acc.terms.end()) {
    acc.terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) acc.terms.erase(it);
  }
}

Poly add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) accumulate(out, m, c);
  return out;
}

Poly neg(const Poly& a) { return mul_scalar(a, Rational(-1)); }

Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

Poly mul_scalar(const Poly& a, const Rational& c) {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, v] : a.terms) out.terms.emplace(m, v * c);
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) accumulate(out, merge_monomials(ma, mb), ca * cb);
  return out;
}

static Rational rational_pow(const Rational& base, long long exponent) {
  if (exponent == 0) return Rational(1);
  bool invert = exponent < 0;
  unsigned long long n = invert ? static_cast<unsigned long long>(-exponent)
                                : static_cast<unsigned long long>(exponent);
  Rational acc(1), b = base;
  while (n > 0) {
    if (n & 1ULL) acc *= b;
    b *= b;
    n >>= 1ULL;
  }
  if (invert) {
    if (acc == 0) throw Error(ErrorKind::unsupported, "division by zero");
    acc = Rational(1) / acc;
  }
  return acc;
}

// Content of a polynomial: positive rational gcd of the coefficients, signed
// so that the leading (largest-monomial) coefficient of base = p / content
// is positive. Minted composite bases are fixed points of this extraction,
// which is what keeps render/normalize a round trip.
static Rational content_of(const Poly& p) {
  Rational g(0);
  for (const auto& [m, c] : p.terms) g = rational_gcd(g, c);
  if (g == 0) return Rational(1);
  if (p.terms.rbegin()->second < 0) g = -g;
  return g;
}

static Poly pow_positive(const Poly& base, long long exponent) {
  Poly acc = poly_one();
  Poly b = base;
  unsigned long long n = static_cast<unsigned long long>(exponent);
  while (n > 0) {
    if (n & 1ULL) acc = mul(acc, b);
    if (n >>= 1ULL) b = mul(b, b);
  }
  return acc;
}

Poly pow_poly(const Poly& base, long long exponent) {
  if (exponent == 0) return poly_one();
  if (base.is_zero()) {
    if (exponent < 0) throw Error(ErrorKind::unsupported, "division by zero");
    return Poly{};
  }
  if (auto c = base.constant_value()) return poly_constant(rational_pow(*c, exponent));
  if (exponent > 0 && base.terms.size() > 1) return pow_positive(base, exponent);

  if (base.terms.size() == 1) {
    // Monomial: exponents multiply, the coefficient powers exactly. A
    // composite factor whose exponent turns positive expands back into its
    // base.
    const auto& [m, c] = *base.terms.begin();
    Monomial keep;
    Poly expanded = poly_one();
    for (const auto& f : m.factors) {
      long long e = f.exp * exponent;
      if (e == 0) continue;
      if (f.atom->kind == AtomKind::composite && e > 0) {
        expanded = mul(expanded, pow_poly(*f.atom->sub, e));
      } else {
        keep.factors.push_back({f.atom, e});
      }
    }
    Poly out;
    out.terms.emplace(std::move(keep), rational_pow(c, exponent));
    return mul(out, expanded);
  }

  // Negative power of a genuine sum: mint a composite atom over the
  // content-free base.
  Rational content = content_of(base);
  Poly monic = mul_scalar(base, Rational(1) / content);
  auto atom = std::make_shared<Atom>(Atom::composite(std::make_shared<Poly>(std::move(monic))));
  Poly out;
  Monomial m;
  m.factors.push_back({std::move(atom), exponent});
  out.terms.emplace(std::move(m), rational_pow(content, exponent));
  return out;
}

// ---------------------------------------------------------------------------
// Calculus

static Poly atom_poly_power(const AtomPtr& atom, long long exponent) {
  if (exponent == 0) return poly_one();
  Poly p;
  Monomial m;
  m.factors.push_back({atom, exponent});
  p.terms.emplace(std::move(m), Rational(1));
  return p;
}

// Derivative of the function an atom denotes (not of a power of it).
static Poly atom_derivative(const Atom& a, int var) {
  switch (a.kind) {
    case AtomKind::variable:
      return a.var == var ? poly_one() : Poly{};
    case AtomKind::parameter:
      return Poly{};
    case AtomKind::call: {
      Poly inner = derivative(*a.sub, var);
      if (inner.is_zero()) return Poly{};
      Poly outer;
      switch (a.fn) {
        case Func::sin:
          outer = poly_atom(std::make_shared<Atom>(Atom::call(Func::cos, a.sub)));
          break;
        case Func::cos:
          outer = neg(poly_atom(std::make_shared<Atom>(Atom::call(Func::sin, a.sub))));
          break;
        case Func::exp:
          outer = poly_atom(std::make_shared<Atom>(Atom::call(Func::exp, a.sub)));
          break;
        case Func::log:
          outer = pow_poly(*a.sub, -1);
          break;
      }
      return mul(outer, inner);
    }
    case AtomKind::composite:
      return derivative(*a.sub, var);
  }
  return Poly{};
}

Poly derivative(const Poly& p, int var) {
  Poly out;
  for (const auto& [m, c] : p.terms) {
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      const Factor& f = m.factors[i];
      Poly da = atom_derivative(*f.atom, var);
      if (da.is_zero()) continue;
      Monomial rest;
      rest.factors.reserve(m.factors.size());
      for (std::size_t j = 0; j < m.factors.size(); ++j)
        if (j != i) rest.factors.push_back(m.factors[j]);
      Poly term;
      term.terms.emplace(std::move(rest), c * Rational(f.exp));
      term = mul(term, atom_poly_power(f.atom, f.exp - 1));
      out = add(out, mul(term, da));
    }
  }
  return out;
}

Poly integrate(const Poly& p, int var) {
  Poly out;
  for (const auto& [m, c] : p.terms) {
    long long k = 0;
    Monomial rest;
    for (const auto& f : m.factors) {
      if (f.atom->kind == AtomKind::variable && f.atom->var == var) {
        k = f.exp;
        continue;
      }
      if (f.atom->sub && mentions_variable(*f.atom->sub, var))
        throw Error(ErrorKind::unsupported_integrand,
                    "integrand is not polynomial in the integration variable");
      rest.factors.push_back(f);
    }
    if (k < 0)
      throw Error(ErrorKind::unsupported_integrand,
                  "integrand has a negative power of the integration variable");
    Factor vf{std::make_shared<Atom>(Atom::variable(var)), k + 1};
    auto pos = std::lower_bound(rest.factors.begin(), rest.factors.end(), vf,
                                [](const Factor& a, const Factor& b) {
                                  return compare_atoms(*a.atom, *b.atom) < 0;
                                });
    rest.factors.insert(pos, vf);
    accumulate(out, rest, c / Rational(k + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree -> poly

Poly normalize(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::constant:
      return poly_constant(e.constant_value());
    case NodeKind::variable:
      return poly_atom(std::make_shared<Atom>(Atom::variable(e.variable_index())));
    case NodeKind::parameter:
      return poly_atom(std::make_shared<Atom>(Atom::parameter(e.parameter_name())));
    case NodeKind::negate:
      return neg(normalize(e.children()[0]));
    case NodeKind::sum: {
      Poly acc;
      for (const auto& child : e.children()) acc = add(acc, normalize(child));
      return acc;
    }
    case NodeKind::product: {
      Poly acc = poly_one();
      for (const auto& child : e.children()) {
        acc = mul(acc, normalize(child));
        if (acc.is_zero()) break;
      }
      return acc;
    }
    case NodeKind::power:
      return pow_poly(normalize(e.children()[0]), e.exponent());
    case NodeKind::call: {
      Poly arg = normalize(e.children()[0]);
      if (auto c = arg.constant_value()) {
        switch (e.call_function()) {
          case Func::sin:
            if (*c == 0) return Poly{};
            break;
          case Func::cos:
            if (*c == 0) return poly_one();
            break;
          case Func::exp:
            if (*c == 0) return poly_one();
            break;
          case Func::log:
            if (*c == 1) return Poly{};
            if (*c <= 0)
              throw Error(ErrorKind::unsupported, "log of a non-positive constant");
            break;
        }
      }
      return poly_atom(std::make_shared<Atom>(
          Atom::call(e.call_function(), std::make_shared<Poly>(std::move(arg)))));
    }
  }
  throw Error(ErrorKind::internal, "unknown expression node");
}

// ---------------------------------------------------------------------------
// Poly -> tree

static Expr atom_expr(const Atom& a) {
  switch (a.kind) {
    case AtomKind::variable:
      return Expr::variable(a.var);
    case AtomKind::parameter:
      return Expr::parameter(a.param);
    case AtomKind::call:
      return Expr::call(a.fn, render(*a.sub));
    case AtomKind::composite:
      return render(*a.sub);
  }
  throw Error(ErrorKind::internal, "unknown atom kind");
}

static Expr render_term(const Monomial& m, const Rational& coeff) {
  bool negative = coeff < 0;
  Rational mag = negative ? Rational(-coeff) : coeff;
  std::vector<Expr> factors;
  if (mag != 1 || m.factors.empty()) factors.push_back(Expr::constant(mag));
  for (const auto& f : m.factors) {
    Expr base = atom_expr(*f.atom);
    factors.push_back(f.exp == 1 ? base : pow(base, f.exp));
  }
  Expr product = factors.size() == 1 ? factors[0] : make_product(std::move(factors));
  return negative ? -product : product;
}

Expr render(const Poly& p) {
  if (p.terms.empty()) return Expr();
  std::vector<Expr> terms;
  terms.reserve(p.terms.size());
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it)
    terms.push_back(render_term(it->first, it->second));
  return terms.size() == 1 ? terms[0] : make_sum(std::move(terms));
}

// ---------------------------------------------------------------------------
// Structure queries

bool mentions_variable(const Poly& p, int var) {
  for (const auto& [m, c] : p.terms) {
    (void)c;
    for (const auto& f : m.factors) {
      if (f.atom->kind == AtomKind::variable && f.atom->var == var) return true;
      if (f.atom->sub && mentions_variable(*f.atom->sub, var)) return true;
    }
  }
  return false;
}

int max_variable(const Poly& p) {
  int out = -1;
  for (const auto& [m, c] : p.terms) {
    (void)c;
    for (const auto& f : m.factors) {
      if (f.atom->kind == AtomKind::variable) out = std::max(out, f.atom->var);
      if (f.atom->sub) out = std::max(out, max_variable(*f.atom->sub));
    }
  }
  return out;
}

bool has_calls_or_composites(const Poly& p) {
  for (const auto& [m, c] : p.terms) {
    (void)c;
    for (const auto& f : m.factors)
      if (f.atom->kind == AtomKind::call || f.atom->kind == AtomKind::composite) return true;
  }
  return false;
}

void collect_parameters(const Poly& p, std::vector<std::string>& out) {
  for (const auto& [m, c] : p.terms) {
    (void)c;
    for (const auto& f : m.factors) {
      if (f.atom->kind == AtomKind::parameter) out.push_back(f.atom->param);
      if (f.atom->sub) collect_parameters(*f.atom->sub, out);
    }
  }
}

bool polynomial_in_variables(const Poly& p) {
  for (const auto& [m, c] : p.terms) {
    (void)c;
    for (const auto& f : m.factors) {
      if (f.atom->kind == AtomKind::variable) {
        if (f.exp < 0) return false;
      } else if (f.atom->sub && max_variable(*f.atom->sub) >= 0) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Stable key

static void append_poly_key(const Poly& p, std::string& out);

static void append_atom_key(const Atom& a, std::string& out) {
  switch (a.kind) {
    case AtomKind::variable:
      out += 'v';
      out += std::to_string(a.var);
      return;
    case AtomKind::parameter:
      out += 'p';
      out += a.param;
      return;
    case AtomKind::call:
      out += func_name(a.fn);
      out += '(';
      append_poly_key(*a.sub, out);
      out += ')';
      return;
    case AtomKind::composite:
      out += "inv(";
      append_poly_key(*a.sub, out);
      out += ')';
      return;
  }
}

static void append_poly_key(const Poly& p, std::string& out) {
  bool first_term = true;
  for (const auto& [m, c] : p.terms) {
    if (!first_term) out += '+';
    first_term = false;
    out += to_string(c);
    for (const auto& f : m.factors) {
      out += '*';
      append_atom_key(*f.atom, out);
      if (f.exp != 1) {
        out += '^';
        out += std::to_string(f.exp);
      }
    }
  }
}

std::string poly_key(const Poly& p) {
  std::string out;
  append_poly_key(p, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

static std::optional<double> eval_atom(const Atom& a, std::span<const double> vars,
                                       const std::map<std::string, double>& params) {
  switch (a.kind) {
    case AtomKind::variable:
      if (a.var < 0 || a.var >= static_cast<int>(vars.size())) return std::nullopt;
      return vars[static_cast<std::size_t>(a.var)];
    case AtomKind::parameter: {
      auto it = params.find(a.param);
      if (it == params.end()) return std::nullopt;
      return it->second;
    }
    case AtomKind::call: {
      auto v = eval_poly(*a.sub, vars, params);
      if (!v) return std::nullopt;
      double r = 0;
      switch (a.fn) {
        case Func::sin: r = std::sin(*v); break;
        case Func::cos: r = std::cos(*v); break;
        case Func::exp: r = std::exp(*v); break;
        case Func::log:
          if (*v <= 0) return std::nullopt;
          r = std::log(*v);
          break;
      }
      if (!std::isfinite(r)) return std::nullopt;
      return r;
    }
    case AtomKind::composite:
      return eval_poly(*a.sub, vars, params);
  }
  return std::nullopt;
}

static std::optional<double> eval_monomial(const Monomial& m, const Rational& c,
                                           std::span<const double> vars,
                                           const std::map<std::string, double>& params) {
  double acc = to_double(c);
  for (const auto& f : m.factors) {
    auto v = eval_atom(*f.atom, vars, params);
    if (!v) return std::nullopt;
    if (*v == 0 && f.exp < 0) return std::nullopt;
    double powed = std::pow(*v, static_cast<double>(f.exp));
    if (!std::isfinite(powed)) return std::nullopt;
    acc *= powed;
  }
  if (!std::isfinite(acc)) return std::nullopt;
  return acc;
}

std::optional<double> eval_poly(const Poly& p, std::span<const double> vars,
                                const std::map<std::string, double>& params) {
  double sum = 0;
  for (const auto& [m, c] : p.terms) {
    auto v = eval_monomial(m, c, vars, params);
    if (!v) return std::nullopt;
    sum += *v;
  }
  if (!std::isfinite(sum)) return std::nullopt;
  return sum;
}

// ---------------------------------------------------------------------------
// Zero testing

static bool pure_laurent(const Poly& p) { return !has_calls_or_composites(p); }

// Multiplies through the denominators named by the top-level composite
// atoms: every a^e (e < 0, a = inv(B)) is replaced by B^{M+e} where M is the
// largest inverse power of a anywhere in p. The result is zero as a function
// exactly when p is.
static Poly clear_composites(const Poly& p) {
  std::vector<std::pair<AtomPtr, long long>> denominators;  // atom, max inverse power
  for (const auto& [m, c] : p.terms) {
    (void)c;
    for (const auto& f : m.factors) {
      if (f.atom->kind != AtomKind::composite) continue;
      auto it = std::find_if(denominators.begin(), denominators.end(), [&](const auto& d) {
        return compare_atoms(*d.first, *f.atom) == 0;
      });
      long long inv = -f.exp;
      if (it == denominators.end())
        denominators.emplace_back(f.atom, inv);
      else
        it->second = std::max(it->second, inv);
    }
  }
  Poly out;
  for (const auto& [m, c] : p.terms) {
    Monomial rest;
    Poly scaled;
    scaled.terms.emplace(Monomial{}, c);
    for (const auto& f : m.factors)
      if (f.atom->kind != AtomKind::composite) rest.factors.push_back(f);
    Poly term;
    term.terms.emplace(std::move(rest), Rational(1));
    scaled = mul(scaled, term);
    for (const auto& [atom, max_inv] : denominators) {
      long long have = 0;
      for (const auto& f : m.factors)
        if (f.atom->kind == AtomKind::composite && compare_atoms(*f.atom, *atom) == 0)
          have = -f.exp;
      long long need = max_inv - have;
      if (need > 0) scaled = mul(scaled, pow_positive(*atom->sub, need));
    }
    out = add(out, scaled);
  }
  return out;
}

static bool has_toplevel_calls(const Poly& p) {
  for (const auto& [m, c] : p.terms) {
    (void)c;
    for (const auto& f : m.factors)
      if (f.atom->kind == AtomKind::call) return true;
  }
  return false;
}

static std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

static ZeroVerdict sample_poly(const Poly& p, const ZeroTestOptions& options) {
  std::vector<std::string> params;
  collect_parameters(p, params);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  int nvars = max_variable(p) + 1;

  std::mt19937_64 rng(options.seed ^ fnv1a(poly_key(p)));
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);

  const int wanted = std::max(options.samples, 1);
  const int max_attempts = std::max(wanted * 8, 256);
  int valid = 0;
  for (int attempt = 0; attempt < max_attempts && valid < wanted; ++attempt) {
    std::vector<double> vars(static_cast<std::size_t>(nvars));
    for (auto& v : vars) v = static_cast<double>(num(rng)) / static_cast<double>(den(rng));
    std::map<std::string, double> pvals;
    for (const auto& name : params)
      pvals[name] = static_cast<double>(num(rng)) / static_cast<double>(den(rng));

    double sum = 0, scale = 0;
    bool ok = true;
    for (const auto& [m, c] : p.terms) {
      auto v = eval_monomial(m, c, vars, pvals);
      if (!v) {
        ok = false;
        break;
      }
      sum += *v;
      scale += std::abs(*v);
    }
    if (!ok || !std::isfinite(sum)) continue;
    ++valid;
    if (std::abs(sum) > 1e-9 * std::max(1.0, scale)) return ZeroVerdict::nonzero();
  }
  if (valid == 0) return ZeroVerdict::indeterminate();
  return ZeroVerdict::probable_zero();
}

static ZeroVerdict poly_is_zero_impl(const Poly& p, const ZeroTestOptions& options, int depth) {
  if (p.is_zero()) return ZeroVerdict::exact_zero();
  if (pure_laurent(p)) return ZeroVerdict::nonzero();
  if (!has_toplevel_calls(p) && depth < 16)
    return poly_is_zero_impl(clear_composites(p), options, depth + 1);
  return sample_poly(p, options);
}

ZeroVerdict poly_is_zero(const Poly& p, const ZeroTestOptions& options) {
  return poly_is_zero_impl(p, options, 0);
}

}  // namespace exoform::detail
