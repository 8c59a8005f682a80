#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exoform/balance.hpp"

namespace exoform {

// Declarations that are resolved lazily at run time (they need flags such as
// the connection choice) keep the referenced names.
struct RelationDecl {
  std::string name;
  std::optional<std::string> lhs;  // potential form name; absent for `_`
  std::string rhs;
};

struct CanonicalDecl {
  std::string name;
  std::vector<std::string> split;       // chart variable names, (q..., p...)
  std::vector<std::string> target_names;  // echoed left-hand names (Q..., P...)
  CanonicalMap map;
};

struct BalanceDecl {
  std::string name;
  ChartPtr chart;                        // accompanying chart (xi1..xin) or document chart
  std::vector<Expr> actions;             // A[1..n], degree-1 assembly
  int degree = 1;
  std::optional<std::string> connection; // named connection, else flat
  std::optional<std::string> omega;      // supplied form for degree 2/3
};

// One parsed DSL document: a single chart plus named objects. Declaration
// order is preserved (printing round-trips); names are unique across each
// category.
class Document {
 public:
  ChartPtr chart;  // null when the document declares no chart

  std::vector<std::pair<std::string, Form>> forms;
  std::vector<std::pair<std::string, Pseudostructure>> pseudostructures;
  std::vector<std::pair<std::string, Connection>> connections;
  std::vector<std::pair<std::string, Metric>> metrics;
  std::vector<RelationDecl> relations;
  std::vector<CanonicalDecl> canonicals;
  std::vector<BalanceDecl> balances;

  const Form* find_form(const std::string& name) const;
  const Pseudostructure* find_pseudostructure(const std::string& name) const;
  const Connection* find_connection(const std::string& name) const;
  const Metric* find_metric(const std::string& name) const;
  const RelationDecl* find_relation(const std::string& name) const;
  const CanonicalDecl* find_canonical(const std::string& name) const;
  const BalanceDecl* find_balance(const std::string& name) const;
};

// Parses DSL text into a document. Lexical, syntactic, name-resolution and
// dimension errors throw ParseError with a 1-based position.
Document parse_document(const std::string& text);

// Canonical DSL text; parse_document(print_document(d)) is structurally d.
std::string print_document(const Document& document);

// Structural comparison used by the round-trip tests.
bool same_document(const Document& a, const Document& b);

// Parses one coefficient expression against a chart (the grammar shared with
// form literals: + - * / ^, rationals, sin/cos/exp/log, chart variables).
Expr parse_expression(const std::string& text, const ChartPtr& chart);

// Parses a form literal such as "x*y dx^dy + sin(z) dx^dz" against a chart.
// A negative degree infers it from the literal.
Form parse_form(const std::string& text, int degree, const ChartPtr& chart);

}  // namespace exoform
