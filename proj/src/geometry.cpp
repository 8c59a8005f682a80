#include "exoform/geometry.hpp"

#include <cmath>

#include "exoform/error.hpp"

namespace exoform {

bool Connection::Key::operator<(const Key& other) const {
  if (sigma != other.sigma) return sigma < other.sigma;
  if (alpha != other.alpha) return alpha < other.alpha;
  return beta < other.beta;
}

Connection::Connection(ChartPtr chart) : chart_(std::move(chart)) {
  if (!chart_) throw Error(ErrorKind::chart, "connection requires a chart");
}

Connection Connection::flat(ChartPtr chart) { return Connection(std::move(chart)); }

static void check_index(const ChartPtr& chart, int i) {
  if (i < 0 || i >= chart->dimension())
    throw Error(ErrorKind::dimension, "connection index outside the chart");
}

Expr Connection::gamma(int sigma, int alpha, int beta) const {
  check_index(chart_, sigma);
  check_index(chart_, alpha);
  check_index(chart_, beta);
  auto it = entries_.find(Key{sigma, alpha, beta});
  return it == entries_.end() ? Expr() : it->second;
}

void Connection::set_gamma(int sigma, int alpha, int beta, const Expr& value) {
  check_index(chart_, sigma);
  check_index(chart_, alpha);
  check_index(chart_, beta);
  if (max_variable(value) >= chart_->dimension())
    throw Error(ErrorKind::chart, "connection entry references a variable off the chart");
  Expr v = simplify(value);
  if (auto c = as_rational(v); c && *c == 0) {
    entries_.erase(Key{sigma, alpha, beta});
    return;
  }
  entries_[Key{sigma, alpha, beta}] = std::move(v);
}

Expr Connection::torsion(int sigma, int alpha, int beta) const {
  return simplify(gamma(sigma, beta, alpha) - gamma(sigma, alpha, beta));
}

ZeroVerdict Connection::torsion_is_zero(const ZeroTestOptions& options) const {
  ZeroVerdict acc = ZeroVerdict::exact_zero();
  const int n = chart_->dimension();
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        acc = combine_all_zero(acc, is_zero(torsion(s, a, b), options));
        if (acc.is_nonzero()) return acc;
      }
  return acc;
}

Connection restrict_connection(const Connection& connection, const Pseudostructure& pi) {
  require_same_chart(connection.chart(), pi.chart(), "connection restriction");
  Connection out(pi.induced_chart());
  const auto& kept = pi.kept_variables();
  for (std::size_t s = 0; s < kept.size(); ++s)
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (std::size_t b = 0; b < kept.size(); ++b) {
        Expr value = connection.gamma(kept[s], kept[a], kept[b]);
        if (auto c = as_rational(value); c && *c == 0) continue;
        out.set_gamma(static_cast<int>(s), static_cast<int>(a), static_cast<int>(b),
                      pullback_to(value, pi));
      }
  return out;
}

// d(dx^sigma) as the torsion 2-form.
static Form basis_differential_single(const Connection& connection, int sigma) {
  const ChartPtr& chart = connection.chart();
  const int n = chart->dimension();
  Form out(chart, 2);
  if (!connection.has_entries()) return out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Expr t = connection.torsion(sigma, a, b);
      if (auto c = as_rational(t); c && *c == 0) continue;
      out.add_term(MultiIndex({a, b}), t);
    }
  return out;
}

Form basis_differential(const Connection& connection, const MultiIndex& index) {
  const ChartPtr& chart = connection.chart();
  const int p = index.degree();
  Form out(chart, p + 1);
  if (!connection.has_entries()) return out;
  // Graded Leibniz over the wedge factors; the torsion 2-form commutes past
  // the remaining 1-form factors, so each position contributes
  // (-1)^pos T^{i_pos} ^ dx^{I \ i_pos}.
  for (int pos = 0; pos < p; ++pos) {
    Form t = basis_differential_single(connection, index.at(pos));
    if (t.empty()) continue;
    Form rest(chart, p - 1);
    rest.add_term(index.erased(pos), Expr::integer(1));
    Form piece = wedge(t, rest);
    if (pos % 2 != 0) piece = -piece;
    out = out + piece;
  }
  return out;
}

Form evolutionary_derivative(const Form& form, const Connection& connection) {
  require_same_chart(form.chart(), connection.chart(), "evolutionary derivative");
  Form out = exterior_derivative(form);
  if (!connection.has_entries()) return out;
  for (const auto& [index, coeff] : form.terms()) {
    Form bd = basis_differential(connection, index);
    if (bd.empty()) continue;
    out = out + coeff * bd;
  }
  return out;
}

CommutatorReport form_commutator(const Form& form, const Connection& connection,
                                 std::span<const double> probe,
                                 const ZeroTestOptions& options) {
  require_same_chart(form.chart(), connection.chart(), "commutator");
  CommutatorReport report{
      exterior_derivative(form),
      Form(form.chart(), form.degree() + 1),
      Form(form.chart(), form.degree() + 1),
      {}, {}, {}, std::nullopt,
  };
  for (const auto& [index, coeff] : form.terms()) {
    Form bd = basis_differential(connection, index);
    if (bd.empty()) continue;
    report.metric_term = report.metric_term + coeff * bd;
  }
  report.total = report.coefficient_term + report.metric_term;
  report.coefficient_zero = form_is_zero(report.coefficient_term, options);
  report.metric_zero = form_is_zero(report.metric_term, options);
  report.total_zero = form_is_zero(report.total, options);

  if (!probe.empty()) {
    if (static_cast<int>(probe.size()) != form.dimension())
      throw Error(ErrorKind::dimension, "probe point dimension does not match the chart");
    double sum_sq = 0;
    bool ok = true;
    for (const auto& [index, coeff] : report.total.terms()) {
      (void)index;
      auto v = evaluate(coeff, probe);
      if (!v) {
        ok = false;
        break;
      }
      sum_sq += *v * *v;
    }
    if (ok) report.discontinuity_indicator = std::sqrt(sum_sq);
  }
  return report;
}

}  // namespace exoform
