#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "exoform/error.hpp"
#include "exoform/form.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace exoform;

namespace {
const ChartPtr c2 = make_chart({"x", "y"});
const ChartPtr c3 = make_chart({"x", "y", "z"});
const Expr x = Expr::variable(0);
const Expr y = Expr::variable(1);
const Expr z = Expr::variable(2);

Form basis(const ChartPtr& chart, std::vector<int> idx) {
  Form f(chart, static_cast<int>(idx.size()));
  f.add_term(MultiIndex(std::move(idx)), Expr::integer(1));
  return f;
}
}  // namespace

TEST_CASE("multi-index invariants") {
  CHECK_THROWS_AS(MultiIndex({2, 1}), Error);
  auto sorted = MultiIndex::from_unsorted({2, 0, 1});
  CHECK(sorted->first.indices() == std::vector<int>{0, 1, 2});
  CHECK(sorted->second == 1);  // (2,0,1) is an even permutation
  CHECK(MultiIndex::from_unsorted({1, 0}).value().second == -1);
  CHECK(!MultiIndex::from_unsorted({1, 1}));
  MultiIndex i({0, 2});
  CHECK(i.complement(4).indices() == std::vector<int>{1, 3});
  CHECK(i.erased(0).indices() == std::vector<int>{2});
  CHECK(MultiIndex({0, 1}).complement_sign(2) == 1);
  CHECK(MultiIndex({1}).complement_sign(2) == -1);  // (1,0) is odd
}

TEST_CASE("forms drop exact zero coefficients") {
  Form f(c2, 1);
  f.add_term(MultiIndex({0}), x - x);
  CHECK(f.empty());
  f.add_term(MultiIndex({0}), x);
  f.add_term(MultiIndex({0}), -x);
  CHECK(f.empty());
  CHECK_THROWS_AS(f.add_term(MultiIndex({0, 1}), x), Error);
  CHECK_THROWS_AS(f.add_term(MultiIndex({1}), Expr::variable(5)), Error);
}

TEST_CASE("wedge matches hand values and signs") {
  Form xdy(c3, 1);
  xdy.add_term(MultiIndex({1}), x);
  Form ydz(c3, 1);
  ydz.add_term(MultiIndex({2}), y);
  CHECK(wedge(xdy, ydz).to_string() == "x*y dy^dz");
  CHECK(wedge(basis(c3, {1}), basis(c3, {0})).to_string() == "-dx^dy");
  CHECK(wedge(basis(c3, {0}), basis(c3, {0})).empty());
  CHECK(wedge(basis(c3, {0, 1}), basis(c3, {2})).to_string() == "dx^dy^dz");
  CHECK(wedge(basis(c3, {2}), basis(c3, {0, 1})).to_string() == "dx^dy^dz");
}

TEST_CASE("wedge is graded anticommutative on random forms") {
  testgen::Rng rng(201);
  for (int trial = 0; trial < 60; ++trial) {
    int p = rng.uniform(0, 2), q = rng.uniform(0, 2);
    Form a = testgen::random_form(rng, c3, p);
    Form b = testgen::random_form(rng, c3, q);
    Form lhs = wedge(a, b);
    Form rhs = wedge(b, a);
    if (p * q % 2 != 0) rhs = -rhs;
    CHECK(form_is_zero(lhs - rhs).is_zero_exact());
  }
}

TEST_CASE("exterior derivative matches the finite-difference oracle") {
  testgen::Rng rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    int p = rng.uniform(0, 2);
    Form f = testgen::random_form(rng, c3, p);
    Form d = exterior_derivative(f);
    auto point = testgen::random_point(rng, 3);
    // flat oracle: connection with no entries
    auto expected = oracle::evolutionary_values(f, Connection::flat(c3), point);
    CHECK(oracle::tables_match(oracle::values(d, point), expected, 1e-4));
  }
}

TEST_CASE("d composed with d vanishes exactly") {
  testgen::Rng rng(203);
  for (int trial = 0; trial < 60; ++trial) {
    Form f = testgen::random_form(rng, c3, rng.uniform(0, 2));
    CHECK(form_is_zero(exterior_derivative(exterior_derivative(f))).is_zero_exact());
  }
}

TEST_CASE("graded Leibniz rule for d") {
  testgen::Rng rng(204);
  for (int trial = 0; trial < 40; ++trial) {
    int p = rng.uniform(0, 2);
    Form a = testgen::random_form(rng, c3, p);
    Form b = testgen::random_form(rng, c3, rng.uniform(0, 2));
    Form lhs = exterior_derivative(wedge(a, b));
    Form rhs = wedge(exterior_derivative(a), b) +
               (p % 2 == 0 ? wedge(a, exterior_derivative(b)) : -wedge(a, exterior_derivative(b)));
    CHECK(form_is_zero(lhs - rhs).is_zero_exact());
  }
}

TEST_CASE("hodge star on pinned examples") {
  Metric g3 = Metric::euclidean(c3);
  CHECK(hodge_star(basis(c3, {0}), g3).to_string() == "dy^dz");
  CHECK(hodge_star(basis(c3, {1}), g3).to_string() == "-dx^dz");
  CHECK(hodge_star(basis(c3, {0, 1}), g3).to_string() == "dz");
  Form w(c3, 1);
  w.add_term(MultiIndex({0}), y);
  CHECK(hodge_star(w, g3).to_string() == "y dy^dz");
  // 0-form to volume form
  Form one(c3, 0);
  one.add_term(MultiIndex(), Expr::integer(1));
  CHECK(hodge_star(one, g3).to_string() == "dx^dy^dz");
  CHECK_THROWS_AS((void)hodge_star(Form(c2, 3), Metric::euclidean(c2)), Error);
}

TEST_CASE("hodge star is an involution up to the derived sign") {
  // For a unit diagonal metric, *(*w) = det(g) * (-1)^{p(n-p)} w.
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    ChartPtr chart = make_chart(names);
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<Expr> diag;
      int det = 1;
      for (int i = 0; i < n; ++i) {
        int s = (mask >> i) & 1 ? -1 : 1;
        det *= s;
        diag.push_back(Expr::integer(s));
      }
      Metric g = Metric::diagonal(chart, diag);
      for (int p = 0; p <= n; ++p) {
        // every basis p-index
        std::vector<int> pick(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
          Form f = basis(chart, pick);
          Form twice = hodge_star(hodge_star(f, g), g);
          int sign = det * ((p * (n - p)) % 2 == 0 ? 1 : -1);
          Form expected = sign > 0 ? f : -f;
          CHECK(same_form(twice, expected));
          int pos = p - 1;
          while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - p + pos) --pos;
          if (pos < 0) break;
          ++pick[static_cast<std::size_t>(pos)];
          for (int i = pos + 1; i < p; ++i)
            pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
        }
      }
    }
  }
}

TEST_CASE("metric validation") {
  CHECK_THROWS_AS(Metric(c2, {{Expr::integer(1), x}, {y, Expr::integer(1)}}), Error);
  CHECK_THROWS_AS(Metric(c2, {{Expr::integer(1)}}), Error);
  // degenerate at the all-ones spot check
  CHECK_THROWS_AS(Metric::diagonal(c2, {Expr::integer(0), Expr::integer(1)}), Error);
  Metric m = Metric::diagonal(c2, {Expr::integer(4), Expr::integer(1)});
  CHECK(m.volume_factor() == 2);
  CHECK(m.inverse_entry(0) == Rational(1, 4));
  CHECK(*as_rational(m.determinant()) == 4);
  // non-constant diagonal builds, but exact star data is refused
  Metric curved(c2, {{x * x + Expr::integer(1), Expr()}, {Expr(), Expr::integer(1)}});
  CHECK(curved.is_diagonal());
  CHECK_THROWS_AS((void)curved.diagonal_rational(0), Error);
  CHECK_THROWS_AS((void)hodge_star(basis(c2, {0}), curved), Error);
  // irrational volume factor is refused
  Metric two = Metric::diagonal(c2, {Expr::integer(2), Expr::integer(1)});
  CHECK_THROWS_AS((void)two.volume_factor(), Error);
}

TEST_CASE("pseudostructure construction and pullback") {
  Pseudostructure pi(c3, {{1, Expr::integer(2)}});
  CHECK(pi.dimension() == 2);
  CHECK(pi.induced_chart()->names() == std::vector<std::string>{"x", "z"});
  CHECK(pi.kept_variables() == std::vector<int>{0, 2});
  CHECK(pi.to_string() == "{y = 2}");

  Form f(c3, 1);
  f.add_term(MultiIndex({0}), z);
  f.add_term(MultiIndex({1}), x);  // dies on the slice
  f.add_term(MultiIndex({2}), y);  // y -> 2
  Form pulled = pullback_to(f, pi);
  CHECK(pulled.chart()->dimension() == 2);
  CHECK(pulled.to_string() == "z dx + 2 dz");  // induced names are (x, z); z is var 1

  CHECK(pullback_to(basis(c3, {1}), pi).empty());
  Pseudostructure trivial(c3);
  CHECK(trivial.is_trivial());
  CHECK(same_form(pullback_to(f, trivial), f));
  CHECK_THROWS_AS(Pseudostructure(c3, {{0, x}}), Error);
  CHECK_THROWS_AS(Pseudostructure(c3, {{7, Expr::integer(1)}}), Error);
}

TEST_CASE("pullback of expressions reindexes surviving variables") {
  Pseudostructure pi(c3, {{1, Expr::parameter("c")}});
  Expr e = x * y + z;
  Expr pulled = pullback_to(e, pi);
  // induced chart (x, z): x stays index 0, z becomes index 1
  CHECK(to_string(pulled, pi.induced_chart().get()) == "x*c + z");
}

TEST_CASE("homotopy antiderivative inverts d on closed forms") {
  Form area(c2, 2);
  area.add_term(MultiIndex({0, 1}), Expr::integer(1));
  Form k = homotopy_antiderivative(area);
  CHECK(k.to_string() == "-1/2*y dx + 1/2*x dy");
  CHECK(form_is_zero(exterior_derivative(k) - area).is_zero_exact());

  Form exact(c2, 1);
  exact.add_term(MultiIndex({0}), Expr::integer(2) * x);
  CHECK(homotopy_antiderivative(exact).to_string() == "x^2");

  Form param(c2, 1);
  param.add_term(MultiIndex({0}), Expr::parameter("c"));
  CHECK(homotopy_antiderivative(param).to_string() == "x*c");
}

TEST_CASE("homotopy antiderivative on random closed polynomial forms") {
  testgen::Rng rng(205);
  int built = 0;
  while (built < 60) {
    int p = rng.uniform(0, 2);
    Form seed = testgen::random_form(rng, c3, p);
    Form closed = exterior_derivative(seed);  // d(seed) is closed by construction
    if (closed.empty()) continue;
    ++built;
    Form k = homotopy_antiderivative(closed);
    CHECK(form_is_zero(exterior_derivative(k) - closed).is_zero_exact());
  }
}

TEST_CASE("homotopy antiderivative rejects what it cannot certify") {
  Form notclosed(c2, 1);
  notclosed.add_term(MultiIndex({0}), y);
  CHECK_THROWS_AS((void)homotopy_antiderivative(notclosed), Error);
  Form zero_form(c2, 0);
  zero_form.add_term(MultiIndex(), x);
  CHECK_THROWS_AS((void)homotopy_antiderivative(zero_form), Error);
  Form trig(c2, 1);
  trig.add_term(MultiIndex({0}), Expr::call(Func::sin, y));
  trig.add_term(MultiIndex({1}), x * Expr::call(Func::cos, y));
  CHECK_THROWS_AS((void)homotopy_antiderivative(trig), Error);
}

TEST_CASE("form rendering is canonical") {
  Form f(c3, 2);
  f.add_term(MultiIndex({0, 2}), -x);
  f.add_term(MultiIndex({0, 1}), Expr::integer(1));
  CHECK(f.to_string() == "dx^dy - x dx^dz");
  Form zero(c3, 1);
  CHECK(zero.to_string() == "0");
  Form f0(c3, 0);
  f0.add_term(MultiIndex(), x + y);
  CHECK(f0.to_string() == "x + y");
}
