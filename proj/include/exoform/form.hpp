#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exoform/chart.hpp"
#include "exoform/expr.hpp"

namespace exoform {

// Strictly increasing tuple of chart-variable indices; the empty tuple
// indexes the coefficient of a 0-form.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> indices);  // must be strictly increasing

  // Sorts, extracting the permutation sign; nullopt on a repeated index.
  static std::optional<std::pair<MultiIndex, int>> from_unsorted(std::vector<int> indices);

  int degree() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }
  int at(int position) const { return indices_.at(static_cast<std::size_t>(position)); }
  bool contains(int var) const;
  // Complement within an n-dimensional chart, and the permutation sign of
  // (I, I^c) relative to (0, 1, ..., n-1).
  MultiIndex complement(int dimension) const;
  int complement_sign(int dimension) const;
  // Tuple with the entry at `position` removed.
  MultiIndex erased(int position) const;

  bool operator==(const MultiIndex& other) const { return indices_ == other.indices_; }
  bool operator<(const MultiIndex& other) const;  // graded lexicographic

 private:
  std::vector<int> indices_;
};

// Merge of two increasing tuples with the shuffle sign; nullopt when they
// overlap (the wedge of overlapping basis forms vanishes).
std::optional<std::pair<MultiIndex, int>> merge_indices(const MultiIndex& a, const MultiIndex& b);

// Exterior form of homogeneous degree on a chart: a finite map from strictly
// increasing multi-indices to coefficient expressions. Coefficients are kept
// simplified and exact zeros are dropped, so a form with no terms is the zero
// form. Degrees above the chart dimension are representable (necessarily
// zero), which keeps d and wedge total.
class Form {
 public:
  Form(ChartPtr chart, int degree);
  static Form zero(ChartPtr chart, int degree);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  int dimension() const { return chart_->dimension(); }

  const std::map<MultiIndex, Expr>& terms() const { return terms_; }
  // Coefficient of dx^I (zero when absent).
  Expr coefficient(const MultiIndex& index) const;
  // Adds c * dx^I, simplifying and dropping exact zeros.
  void add_term(const MultiIndex& index, const Expr& coefficient);
  void set_coefficient(const MultiIndex& index, const Expr& coefficient);

  bool empty() const { return terms_.empty(); }

  // Canonical text; multi-indices appear in graded lexicographic order.
  std::string to_string() const;

 private:
  ChartPtr chart_;
  int degree_ = 0;
  std::map<MultiIndex, Expr> terms_;
};

Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a, const Form& b);
Form operator*(const Expr& scalar, const Form& form);
Form operator-(const Form& form);

// Structural equality of canonical coefficient tables.
bool same_form(const Form& a, const Form& b);

// All-coefficients zero test (conjunction over terms).
ZeroVerdict form_is_zero(const Form& form, const ZeroTestOptions& options = {});

Form wedge(const Form& a, const Form& b);

// Flat exterior differential: d with d(basis) = 0.
Form exterior_derivative(const Form& form);

// Symmetric metric g_ij on a chart. Stored as a full symbolic table; the
// Hodge star supports the diagonal constant-rational case exactly and
// rejects anything wider.
class Metric {
 public:
  Metric(ChartPtr chart, std::vector<std::vector<Expr>> entries);
  static Metric euclidean(ChartPtr chart);
  // Diagonal metric (off-diagonal zero).
  static Metric diagonal(ChartPtr chart, std::vector<Expr> diagonal_entries);

  const ChartPtr& chart() const { return chart_; }
  int dimension() const { return chart_->dimension(); }
  const Expr& entry(int i, int j) const;
  const Expr& determinant() const { return determinant_; }

  bool is_diagonal() const { return diagonal_; }
  // Exact Hodge data; every accessor throws unsupported_metric unless the
  // metric is diagonal with constant rational entries.
  Rational diagonal_rational(int i) const;
  Rational inverse_entry(int i) const;
  // sqrt(|det g|); throws unsupported_metric when not exactly rational.
  Rational volume_factor() const;

 private:
  ChartPtr chart_;
  std::vector<std::vector<Expr>> entries_;
  Expr determinant_;
  bool diagonal_ = false;
};

// Hodge star for diagonal constant metrics; exact. Throws unsupported_metric
// otherwise.
Form hodge_star(const Form& form, const Metric& metric);

// Coordinate slice {x^j = c_j} for j in the constrained set. Values must be
// constant with respect to the chart: rational constants from user input, or
// parameter expressions for the symbolic families the searches produce. An
// empty constraint set is the whole chart (degenerate slice, allowed).
class Pseudostructure {
 public:
  explicit Pseudostructure(ChartPtr chart, std::map<int, Expr> constraints = {});

  const ChartPtr& chart() const { return chart_; }
  const std::map<int, Expr>& constraints() const { return constraints_; }
  bool constrains(int var) const { return constraints_.count(var) != 0; }
  bool is_trivial() const { return constraints_.empty(); }
  int dimension() const;  // chart dimension minus number of constraints

  // Chart of the slice: the unconstrained variables, in ambient order.
  const ChartPtr& induced_chart() const { return induced_; }
  // Ambient indices of the surviving variables, in order.
  const std::vector<int>& kept_variables() const { return kept_; }

  std::string to_string() const;

 private:
  ChartPtr chart_;
  std::map<int, Expr> constraints_;
  ChartPtr induced_;
  std::vector<int> kept_;
};

// Restriction of a form to a slice: substitutes constrained variables and
// drops every term whose index meets the constrained set. The result lives
// on the induced chart.
Form pullback_to(const Form& form, const Pseudostructure& pi);

// Expression pullback: substitute the constraints, then reindex the
// surviving variables to the induced chart.
Expr pullback_to(const Expr& e, const Pseudostructure& pi);

// Star-shaped homotopy antiderivative: for a closed form of degree >= 1 with
// coefficients polynomial in the chart variables, returns K with d(K) = form
// (the Poincare-lemma operator centered at the origin). Throws not_closed
// when the flat differential fails to vanish exactly, unsupported_integrand
// on non-polynomial coefficients, and degree error for 0-forms.
Form homotopy_antiderivative(const Form& form);

}  // namespace exoform
