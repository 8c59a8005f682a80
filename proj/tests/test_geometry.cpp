#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "exoform/error.hpp"
#include "exoform/geometry.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace exoform;

namespace {
const ChartPtr c2 = make_chart({"x", "y"});
const ChartPtr c3 = make_chart({"x", "y", "z"});
const ChartPtr c4 = make_chart({"x", "y", "z", "w"});
const Expr x = Expr::variable(0);
const Expr y = Expr::variable(1);

Form basis(const ChartPtr& chart, std::vector<int> idx) {
  Form f(chart, static_cast<int>(idx.size()));
  f.add_term(MultiIndex(std::move(idx)), Expr::integer(1));
  return f;
}

bool zero_expr(const Expr& e) { return same_tree(simplify(e), Expr()); }
}  // namespace

TEST_CASE("connection table and validation") {
  Connection conn(c3);
  CHECK(!conn.has_entries());
  CHECK(zero_expr(conn.gamma(0, 1, 2)));

  conn.set_gamma(0, 0, 1, x);
  CHECK(conn.has_entries());
  CHECK(to_string(conn.gamma(0, 0, 1), c3.get()) == "x");
  CHECK(zero_expr(conn.gamma(0, 1, 0)));

  CHECK_THROWS_AS(conn.set_gamma(3, 0, 0, x), Error);
  CHECK_THROWS_AS(conn.set_gamma(0, -1, 0, x), Error);
  CHECK_THROWS_AS(conn.gamma(0, 0, 3), Error);
  // entries must live on the chart
  CHECK_THROWS_AS(conn.set_gamma(0, 0, 0, Expr::variable(5)), Error);

  // assigning an exact zero erases the slot
  conn.set_gamma(0, 0, 1, x - x);
  CHECK(!conn.has_entries());

  CHECK(!Connection::flat(c2).has_entries());
}

TEST_CASE("torsion values and antisymmetry") {
  Connection conn(c3);
  conn.set_gamma(0, 0, 1, x);  // Gamma^1_{12} = x, 1-based
  CHECK(to_string(conn.torsion(0, 0, 1), c3.get()) == "-x");
  CHECK(to_string(conn.torsion(0, 1, 0), c3.get()) == "x");
  CHECK(zero_expr(conn.torsion(0, 0, 0)));
  CHECK(zero_expr(conn.torsion(1, 0, 1)));

  testgen::Rng rng(2026);
  for (int trial = 0; trial < 20; ++trial) {
    Connection random = testgen::random_connection(rng, c3);
    for (int s = 0; s < 3; ++s)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          Expr sum = simplify(random.torsion(s, a, b) + random.torsion(s, b, a));
          CHECK(is_zero(sum).is_zero_exact());
        }
  }
}

TEST_CASE("torsion_is_zero distinguishes symmetric tables from torsional ones") {
  CHECK(Connection::flat(c3).torsion_is_zero().is_zero_exact());

  Connection symmetric(c3);  // Christoffel-like: symmetric lower pair, no torsion
  symmetric.set_gamma(0, 0, 1, x * y);
  symmetric.set_gamma(0, 1, 0, x * y);
  symmetric.set_gamma(2, 1, 2, y);
  symmetric.set_gamma(2, 2, 1, y);
  CHECK(symmetric.torsion_is_zero().is_zero_exact());

  Connection torsional(c3);
  torsional.set_gamma(0, 0, 1, x);
  CHECK(torsional.torsion_is_zero().is_nonzero());
}

TEST_CASE("basis differential pinned values") {
  // [DERIVED] d(dx^sigma) = sum_{a<b} T^sigma_{ab} dx^a ^ dx^b
  Connection conn(c3);
  conn.set_gamma(0, 2, 1, Expr::integer(1));  // T^1_{23} = 1, 1-based
  CHECK(basis_differential(conn, MultiIndex({0})).to_string() == "dy^dz");
  CHECK(basis_differential(conn, MultiIndex({1})).empty());
  CHECK(basis_differential(conn, MultiIndex({2})).empty());
  // Leibniz expansion collapses when the torsion 2-form repeats a factor
  CHECK(basis_differential(conn, MultiIndex({0, 1})).empty());
  CHECK(basis_differential(Connection::flat(c3), MultiIndex({0, 1})).empty());

  // [DERIVED] position sign: d(dx^0 ^ dx^3) = -d(dx^3) ^ dx^0 when T^0 = 0
  Connection conn4(c4);
  conn4.set_gamma(3, 2, 1, Expr::integer(1));  // T^4_{23} = 1, 1-based
  Form d03 = basis_differential(conn4, MultiIndex({0, 3}));
  Form expected = -basis(c4, {0, 1, 2});
  CHECK(same_form(d03, expected));
}

TEST_CASE("evolutionary derivative matches the definition oracle") {
  // [DERIVED] dual route: library Leibniz expansion vs a from-scratch
  // assembly with finite-difference flat part and sampled torsion values.
  testgen::Rng rng(40817);
  const ChartPtr charts[] = {c2, c3, c4};
  for (int trial = 0; trial < 40; ++trial) {
    const ChartPtr& chart = charts[trial % 3];
    const int n = chart->dimension();
    const int degree = rng.uniform(0, n - 1);
    Form f = testgen::random_form(rng, chart, degree);
    Connection conn = testgen::random_connection(rng, chart);
    std::vector<double> point = testgen::random_point(rng, n);

    Form derived = evolutionary_derivative(f, conn);
    auto expected = oracle::evolutionary_values(f, conn, point);
    auto actual = oracle::values(derived, point);
    CHECK(oracle::tables_match(expected, actual, 1e-4));
  }
}

TEST_CASE("evolutionary derivative reduces to the flat one") {
  testgen::Rng rng(555);
  for (int trial = 0; trial < 30; ++trial) {
    const int degree = rng.uniform(0, 2);
    Form f = testgen::random_form(rng, c3, degree);
    CHECK(same_form(evolutionary_derivative(f, Connection::flat(c3)), exterior_derivative(f)));
  }
  // 0-forms carry no basis factors, so torsion never enters
  Connection conn(c3);
  conn.set_gamma(0, 0, 1, x);
  Form scalar(c3, 0);
  scalar.add_term(MultiIndex(), x * y);
  CHECK(same_form(evolutionary_derivative(scalar, conn), exterior_derivative(scalar)));
}

TEST_CASE("evolutionary differential is a graded derivation") {
  testgen::Rng rng(90210);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = rng.uniform(0, 2);
    const int q = rng.uniform(0, 3 - p);
    Form a = testgen::random_form(rng, c3, p, 2);
    Form b = testgen::random_form(rng, c3, q, 2);
    Connection conn = testgen::random_connection(rng, c3);

    Form lhs = evolutionary_derivative(wedge(a, b), conn);
    Form rhs = wedge(evolutionary_derivative(a, conn), b) +
               (p % 2 == 0 ? wedge(a, evolutionary_derivative(b, conn))
                           : -wedge(a, evolutionary_derivative(b, conn)));
    CHECK(form_is_zero(lhs - rhs).is_zero_exact());
  }
}

TEST_CASE("commutator split on the torsional plane") {
  // [DERIVED] omega = y dx with Gamma^1_{12} = x: the coefficient part of the
  // commutator is -dx^dy, the metric part x*T^1_{12} scaled by y, and the
  // total (-x*y - 1) dx^dy.
  Connection conn(c2);
  conn.set_gamma(0, 0, 1, x);
  Form omega(c2, 1);
  omega.add_term(MultiIndex({0}), y);

  std::vector<double> probe{1.0, 1.0};
  CommutatorReport report = form_commutator(omega, conn, probe);

  CHECK(same_form(report.coefficient_term, -basis(c2, {0, 1})));
  Form metric(c2, 2);
  metric.add_term(MultiIndex({0, 1}), -(x * y));
  CHECK(same_form(report.metric_term, metric));
  Form total(c2, 2);
  total.add_term(MultiIndex({0, 1}), -(x * y) - Expr::integer(1));
  CHECK(same_form(report.total, total));

  CHECK(report.coefficient_zero.is_nonzero());
  CHECK(report.metric_zero.is_nonzero());
  CHECK(report.total_zero.is_nonzero());
  REQUIRE(report.discontinuity_indicator.has_value());
  CHECK(*report.discontinuity_indicator == doctest::Approx(2.0));  // |-1*1 - 1|
}

TEST_CASE("commutator verdicts cover every split") {
  // closed form, flat connection: everything vanishes exactly
  Form closed(c2, 1);
  closed.add_term(MultiIndex({0}), y);
  closed.add_term(MultiIndex({1}), x);
  CommutatorReport flat = form_commutator(closed, Connection::flat(c2), std::vector<double>{3.0, -2.0});
  CHECK(flat.coefficient_zero.is_zero_exact());
  CHECK(flat.metric_zero.is_zero_exact());
  CHECK(flat.total_zero.is_zero_exact());
  CHECK(*flat.discontinuity_indicator == doctest::Approx(0.0));

  // constant coefficients, torsional chart: only the metric part survives
  Connection conn(c3);
  conn.set_gamma(0, 2, 1, Expr::integer(1));
  CommutatorReport metric_only = form_commutator(basis(c3, {0}), conn);
  CHECK(metric_only.coefficient_zero.is_zero_exact());
  CHECK(metric_only.metric_zero.is_nonzero());
  CHECK(metric_only.total_zero.is_nonzero());
  CHECK(!metric_only.discontinuity_indicator.has_value());  // no probe given

  // exp(y) dx against T^1_{12} = 1: the two parts cancel exactly
  Connection unit(c2);
  unit.set_gamma(0, 1, 0, Expr::integer(1));
  Form tuned(c2, 1);
  tuned.add_term(MultiIndex({0}), Expr::call(Func::exp, y));
  CommutatorReport cancel = form_commutator(tuned, unit);
  CHECK(cancel.coefficient_zero.is_nonzero());
  CHECK(cancel.metric_zero.is_nonzero());
  CHECK(cancel.total_zero.is_zero_exact());
}

TEST_CASE("commutator probe handling") {
  Form omega(c2, 1);
  omega.add_term(MultiIndex({0}), y);
  Connection conn(c2);
  conn.set_gamma(0, 0, 1, x);

  CHECK_THROWS_AS(form_commutator(omega, conn, std::vector<double>{1.0}), Error);

  // unbound parameter in the total leaves the indicator empty
  Form parametric(c2, 1);
  parametric.add_term(MultiIndex({1}), Expr::parameter("c") * x);
  CommutatorReport report = form_commutator(parametric, Connection::flat(c2),
                                            std::vector<double>{1.0, 2.0});
  CHECK(report.total_zero.is_nonzero());
  CHECK(!report.discontinuity_indicator.has_value());

  // mismatched chart between form and connection
  CHECK_THROWS_AS(form_commutator(omega, Connection::flat(c3)), Error);
}

TEST_CASE("restriction of a connection to a slice") {
  Connection conn(c3);
  conn.set_gamma(0, 0, 2, y);        // survives: y -> 2, indices (0,2) -> (0,1)
  conn.set_gamma(0, 0, 1, x);        // dropped: beta is the fixed direction
  conn.set_gamma(1, 2, 2, x);        // dropped: sigma is the fixed direction
  conn.set_gamma(2, 2, 0, x * x);    // survives with reindexed variables

  Pseudostructure pi(c3, {{1, Expr::integer(2)}});
  Connection restricted = restrict_connection(conn, pi);
  const Chart* induced = restricted.chart().get();
  CHECK(restricted.chart()->dimension() == 2);
  CHECK(to_string(restricted.gamma(0, 0, 1), induced) == "2");
  CHECK(to_string(restricted.gamma(1, 1, 0), induced) == "x^2");
  CHECK(zero_expr(restricted.gamma(0, 1, 0)));
  CHECK(zero_expr(restricted.gamma(1, 0, 0)));

  CHECK(!restrict_connection(Connection::flat(c3), pi).has_entries());
}
