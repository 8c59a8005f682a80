#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "exoform/dsl.hpp"
#include "exoform/error.hpp"

using namespace exoform;

namespace {
int error_line(const std::string& text) {
  try {
    (void)parse_document(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

ErrorKind error_kind(const std::string& text) {
  try {
    (void)parse_document(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}
}  // namespace

TEST_CASE("canonical printing of a parsed document") {
  const std::string messy =
      "# geometry of the running example\n"
      "chart   x ,y,  z;\n"
      "form omega = y*x dx^dy + sin(z) dx^dz;  // coefficients normalize\n"
      "form zf = zero(3);\n"
      "pseudostructure pi = { y = 1/2, z = c_z };\n"
      "connection gamma { G[1][1][2] = x; }\n"
      "metric g = euclidean;\n"
      "relation r1: d(_) = omega;\n";
  const std::string canonical =
      "chart x, y, z;\n"
      "form omega = x*y dx^dy + sin(z) dx^dz;\n"
      "form zf = zero(3);\n"
      "pseudostructure pi = { y = 1/2, z = c_z };\n"
      "connection gamma { G[1][1][2] = x; }\n"
      "metric g = euclidean;\n"
      "relation r1: d(_) = omega;\n";
  Document doc = parse_document(messy);
  CHECK(print_document(doc) == canonical);
  CHECK(same_document(doc, parse_document(canonical)));
}

TEST_CASE("round trip is structural and print is a fixed point") {
  const std::string text =
      "chart q, p;\n"
      "form h = q^2 + p^2;\n"
      "form omega = p dq;\n"
      "metric m = diagonal(1, -1);\n"
      "metric mm = matrix [[1, 1/2], [1/2, 1]];\n"
      "relation r: d(h) = omega;\n"
      "canonical T: (q, p) -> (Q = p, P = -q);\n"
      "canonical (q, p) -> (Q = q, P = p + q^2);\n"
      "balance b1 { xi 2; A[1] = xi2; A[2] = -xi1; }\n";

  Document doc = parse_document(text);
  std::string printed = print_document(doc);
  Document reparsed = parse_document(printed);
  CHECK(same_document(doc, reparsed));
  CHECK(print_document(reparsed) == printed);

  // relation with a named potential survives the trip
  REQUIRE(doc.relations.size() == 1);
  CHECK(doc.relations[0].lhs.has_value());
  CHECK(*doc.relations[0].lhs == "h");
  // the unnamed canonical takes the default name
  CHECK(doc.find_canonical("canonical") != nullptr);
  REQUIRE(doc.balances.size() == 1);
  CHECK(doc.balances[0].chart->names() == std::vector<std::string>{"xi1", "xi2"});
}

TEST_CASE("balance declarations with document chart and supplied forms") {
  const std::string text =
      "chart x, y;\n"
      "form w = x dx^dy;\n"
      "connection c { G[1][2][1] = 1; }\n"
      "balance b { degree 2; omega w; connection c; }\n";
  Document doc = parse_document(text);
  REQUIRE(doc.balances.size() == 1);
  const BalanceDecl& b = doc.balances[0];
  CHECK(same_chart(b.chart, doc.chart));
  CHECK(b.degree == 2);
  CHECK(b.omega == std::optional<std::string>("w"));
  CHECK(b.connection == std::optional<std::string>("c"));
  CHECK(b.actions.empty());

  std::string printed = print_document(doc);
  CHECK(printed.find("balance b { degree 2; connection c; omega w; }") != std::string::npos);
  CHECK(same_document(doc, parse_document(printed)));
}

TEST_CASE("form literals") {
  ChartPtr chart = make_chart({"x", "y", "z"});
  CHECK(parse_form("x*y dx^dy + sin(z) dx^dz", 2, chart).degree() == 2);
  CHECK(parse_form("zero(2)", 2, chart).empty());
  CHECK(parse_form("dx^dy - dy^dx", 2, chart).to_string() == "2 dx^dy");
  CHECK(parse_form("dx^dx", 2, chart).empty());  // repeated differential drops the term
  CHECK(parse_form("x + y^2", 0, chart).to_string() == "y^2 + x");  // graded ordering
  CHECK(parse_form("3 dz", -1, chart).degree() == 1);  // inferred degree
  CHECK(parse_form("- dx^dz", 2, chart).to_string() == "-dx^dz");
  CHECK(parse_form("2 dy^dx", 2, chart).to_string() == "-2 dx^dy");

  CHECK_THROWS_AS((void)parse_form("dx + dx^dy", -1, chart), ParseError);  // mixed degree
  CHECK_THROWS_AS((void)parse_form("dx", 2, chart), ParseError);           // degree mismatch
  CHECK_THROWS_AS((void)parse_form("zero(1)", 2, chart), ParseError);
  CHECK_THROWS_AS((void)parse_form("x*dx dy", 1, chart), ParseError);  // differential in coefficient
}

TEST_CASE("expression grammar") {
  ChartPtr chart = make_chart({"x", "y"});
  const Chart* c = chart.get();
  CHECK(to_string(parse_expression("x + 2*y^2", chart), c) == "2*y^2 + x");
  CHECK(to_string(parse_expression("(x + y)^2", chart), c) == "x^2 + 2*x*y + y^2");
  CHECK(to_string(parse_expression("1/2*x", chart), c) == "1/2*x");
  CHECK(to_string(parse_expression("x/2", chart), c) == "1/2*x");
  CHECK(to_string(parse_expression("-x^2", chart), c) == "-x^2");  // minus binds outside the power
  CHECK(to_string(parse_expression("x^(-2)", chart), c) == "x^(-2)");
  CHECK(to_string(parse_expression("exp(x)*exp(x)", chart), c) == "exp(x)^2");
  CHECK(to_string(parse_expression("kappa*x", chart), c) == "x*kappa");  // free names are parameters
  CHECK(to_string(parse_expression("log(exp(1))", chart), c) == "log(exp(1))");

  CHECK_THROWS_AS((void)parse_expression("x +", chart), ParseError);
  CHECK_THROWS_AS((void)parse_expression("x y", chart), ParseError);  // trailing input
  CHECK_THROWS_AS((void)parse_expression("x ^ y", chart), ParseError);
  CHECK_THROWS_AS((void)parse_expression("dx", chart), ParseError);
}

TEST_CASE("parse errors carry positions and kinds") {
  // unknown character
  CHECK(error_line("chart x, y;\nform w = x $ y;\n") == 2);
  // a second chart
  CHECK(error_kind("chart x;\nchart y;\n") == ErrorKind::chart);
  // objects before the chart
  CHECK(error_kind("form w = 1;\n") == ErrorKind::chart);
  // duplicate names in a category
  CHECK(error_kind("chart x;\nform w = x;\nform w = 2*x;\n") == ErrorKind::name);
  CHECK(error_line("chart x;\nform w = x;\nform w = 2*x;\n") == 3);
  // unknown relation right side
  CHECK(error_kind("chart x;\nrelation r: d(_) = nope;\n") == ErrorKind::name);
  // relation degree mismatch: potential must be one degree below
  CHECK(error_kind("chart x, y;\nform a = x dx;\nform b = y dy;\nrelation r: d(a) = b;\n") ==
        ErrorKind::dimension);
  // connection index out of range
  CHECK(error_kind("chart x;\nconnection g { G[1][2][1] = x; }\n") == ErrorKind::dimension);
  // diagonal entry count
  CHECK(error_kind("chart x, y;\nmetric g = diagonal(1);\n") == ErrorKind::dimension);
  // canonical split must repeat the chart in order
  CHECK(error_kind("chart q, p;\ncanonical T: (p, q) -> (Q = q, P = p);\n") == ErrorKind::chart);
  // odd chart cannot split
  CHECK(error_kind("chart x;\ncanonical T: (x) -> (Q = x);\n") == ErrorKind::dimension);
  // actions before xi
  CHECK(error_line("chart x;\nbalance b { A[1] = 1; xi 1; }\n") == 2);
  // pseudostructure values must be constant on the chart
  CHECK(error_kind("chart x, y;\npseudostructure pi = { y = x };\n") == ErrorKind::chart);
  // constraining a variable twice
  CHECK(error_kind("chart x, y;\npseudostructure pi = { y = 1, y = 2 };\n") == ErrorKind::name);
  // degree-1 balance needs every action
  CHECK(error_kind("chart x;\nbalance b { xi 2; A[1] = 1; }\n") == ErrorKind::dimension);
}

TEST_CASE("document lookups and structural comparison") {
  Document doc = parse_document("chart x, y;\nform w = x dx;\nmetric g = euclidean;\n");
  CHECK(doc.find_form("w") != nullptr);
  CHECK(doc.find_form("nope") == nullptr);
  CHECK(doc.find_metric("g") != nullptr);
  CHECK(doc.find_connection("g") == nullptr);  // categories are separate namespaces

  Document other = parse_document("chart x, y;\nform w = 2*x dx;\nmetric g = euclidean;\n");
  CHECK(!same_document(doc, other));
  Document renamed = parse_document("chart x, y;\nform v = x dx;\nmetric g = euclidean;\n");
  CHECK(!same_document(doc, renamed));
  CHECK(!same_document(doc, parse_document("chart x, z;\nform w = x dx;\nmetric g = euclidean;\n")));
  CHECK(same_document(doc, parse_document(print_document(doc))));
}
