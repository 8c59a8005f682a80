#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "exoform/form.hpp"

namespace exoform {

// Connection coefficients Gamma^sigma_{alpha beta} on a chart (sigma upper,
// alpha beta lower). The table is total: missing entries are zero. Only the
// antisymmetric part in the lower indices (the torsion) enters any
// differential here; symmetric parts are stored but inert.
class Connection {
 public:
  explicit Connection(ChartPtr chart);
  static Connection flat(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }

  Expr gamma(int sigma, int alpha, int beta) const;
  void set_gamma(int sigma, int alpha, int beta, const Expr& value);
  bool has_entries() const { return !entries_.empty(); }

  // Torsion T^sigma_{alpha beta} = Gamma^sigma_{beta alpha} - Gamma^sigma_{alpha beta}.
  Expr torsion(int sigma, int alpha, int beta) const;
  // True when the torsion vanishes identically (zero or symmetric table).
  ZeroVerdict torsion_is_zero(const ZeroTestOptions& options = {}) const;

  struct Key {
    int sigma, alpha, beta;
    bool operator<(const Key& other) const;
  };
  const std::map<Key, Expr>& entries() const { return entries_; }

 private:
  ChartPtr chart_;
  std::map<Key, Expr> entries_;
};

// Connection induced on a slice: constrained variables substituted in every
// entry, rows/columns in constrained directions dropped, surviving indices
// renumbered to the induced chart.
Connection restrict_connection(const Connection& connection, const Pseudostructure& pi);

// Deformation of a basis form: d(dx^sigma) = sum_{alpha<beta} T^sigma_{alpha beta}
// dx^alpha ^ dx^beta for a single factor, extended to basis p-forms by the
// graded Leibniz rule over the wedge factors.
Form basis_differential(const Connection& connection, const MultiIndex& index);

// Evolutionary differential: flat exterior derivative plus the
// basis-deformation contribution sum_I a_I * d(dx^I).
Form evolutionary_derivative(const Form& form, const Connection& connection);

// Two-term split of the differential of a degree-p form, both terms of
// degree p+1:
//   coefficient_term = flat exterior derivative (derivatives of coefficients)
//   metric_term      = sum_I a_I * basis_differential(I)  (torsion part)
//   total            = coefficient_term + metric_term
// For a 1-form a_alpha dx^alpha the total coefficients are
// (da_beta/dx^alpha - da_alpha/dx^beta) + T^sigma_{alpha beta} a_sigma.
struct CommutatorReport {
  Form coefficient_term;
  Form metric_term;
  Form total;
  ZeroVerdict coefficient_zero;
  ZeroVerdict metric_zero;
  ZeroVerdict total_zero;
  // Euclidean magnitude of the total coefficients at the probe point;
  // absent when no probe was supplied or evaluation failed.
  std::optional<double> discontinuity_indicator;
};

CommutatorReport form_commutator(const Form& form, const Connection& connection,
                                 std::span<const double> probe = {},
                                 const ZeroTestOptions& options = {});

}  // namespace exoform
