#include "exoform/balance.hpp"

#include <utility>

#include "exoform/error.hpp"

namespace exoform {

BalanceSystem::BalanceSystem(ChartPtr chart_, std::vector<Expr> actions_,
                             Connection connection_, int degree_, std::optional<Form> supplied)
    : chart(std::move(chart_)),
      actions(std::move(actions_)),
      connection(std::move(connection_)),
      degree(degree_),
      supplied_form(std::move(supplied)) {
  if (!chart) throw Error(ErrorKind::chart, "balance system requires a chart");
  require_same_chart(chart, connection.chart(), "balance system");
  if (degree < 1 || degree > 3)
    throw Error(ErrorKind::degree,
                "balance degree must be 1, 2 or 3 (a degree-0 balance form has no flux part)");
  if (degree == 1) {
    if (supplied_form)
      throw Error(ErrorKind::degree, "degree-1 balance forms are assembled from the actions");
    if (static_cast<int>(actions.size()) != chart->dimension())
      throw Error(ErrorKind::dimension, "need one action coefficient per chart variable");
    for (const Expr& a : actions)
      if (max_variable(a) >= chart->dimension())
        throw Error(ErrorKind::chart, "action coefficient references a variable off the chart");
  } else {
    if (!supplied_form)
      throw Error(ErrorKind::degree, "degree-2 and degree-3 balance systems take the form directly");
    if (!actions.empty())
      throw Error(ErrorKind::degree, "action coefficients only assemble a degree-1 form");
    require_same_chart(chart, supplied_form->chart(), "balance system");
    if (supplied_form->degree() != degree)
      throw Error(ErrorKind::degree, "supplied form degree does not match the declared degree");
  }
}

Form assemble_balance_form(const BalanceSystem& system) {
  if (system.degree != 1) return *system.supplied_form;
  Form omega(system.chart, 1);
  for (int mu = 0; mu < system.chart->dimension(); ++mu)
    omega.add_term(MultiIndex({mu}), system.actions[static_cast<std::size_t>(mu)]);
  return omega;
}

Relation build_evolutionary_relation(const BalanceSystem& system,
                                     const std::optional<Form>& psi,
                                     const ZeroTestOptions& options) {
  if (psi) {
    if (psi->degree() != system.degree - 1)
      throw Error(ErrorKind::degree, "state-function degree must be one below the balance form");
    require_same_chart(psi->chart(), system.chart, "balance relation");
  }
  return Relation(psi, assemble_balance_form(system), system.connection, {}, options);
}

const char* to_string(EquilibriumState state) {
  switch (state) {
    case EquilibriumState::equilibrium: return "equilibrium";
    case EquilibriumState::nonequilibrium: return "nonequilibrium";
    case EquilibriumState::locally_equilibrium: return "locally-equilibrium";
  }
  return "nonequilibrium";
}

EquilibriumDiagnosis equilibrium_report(const BalanceSystem& system, const Metric& metric,
                                        std::span<const double> probe,
                                        const ZeroTestOptions& options) {
  Relation relation = build_evolutionary_relation(system, {}, options);
  Form omega = assemble_balance_form(system);
  CommutatorReport commutator = form_commutator(omega, system.connection, probe, options);

  EquilibriumDiagnosis diagnosis{std::move(relation), commutator,
                                 EquilibriumState::equilibrium,
                                 commutator.discontinuity_indicator, {}};
  if (diagnosis.commutator.total_zero.is_zero()) return diagnosis;

  diagnosis.events = pseudostructure_search(omega, metric, system.connection, options);
  diagnosis.state = diagnosis.events.empty() ? EquilibriumState::nonequilibrium
                                             : EquilibriumState::locally_equilibrium;
  return diagnosis;
}

}  // namespace exoform
