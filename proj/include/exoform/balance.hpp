#pragma once

#include <optional>
#include <span>
#include <vector>

#include "exoform/relations.hpp"

namespace exoform {

// Balance-law data for a material system on an accompanying chart
// (xi^1 the trajectory coordinate, xi^2..xi^n the normals). For degree 1 the
// evolutionary form is assembled from the action coefficients A_mu; for
// degrees 2 and 3 a caller-supplied form is diagnosed instead (no coefficient
// construction exists for them). Degree 0 is rejected.
struct BalanceSystem {
  ChartPtr chart;
  std::vector<Expr> actions;         // A_1..A_n, empty when a form is supplied
  Connection connection;             // accompanying-manifold connection
  int degree = 1;                    // p in {1, 2, 3}
  std::optional<Form> supplied_form; // required for degree 2 or 3

  BalanceSystem(ChartPtr chart_, std::vector<Expr> actions_, Connection connection_,
                int degree_ = 1, std::optional<Form> supplied = {});
};

// omega = sum_mu A_mu dxi^mu for degree 1; the supplied form otherwise.
Form assemble_balance_form(const BalanceSystem& system);

// The evolutionary relation d(psi) = omega, with an optional candidate
// potential; kind judged from the right side alone when psi is unknown.
Relation build_evolutionary_relation(const BalanceSystem& system,
                                     const std::optional<Form>& psi = {},
                                     const ZeroTestOptions& options = {});

enum class EquilibriumState : std::uint8_t { equilibrium, nonequilibrium, locally_equilibrium };
const char* to_string(EquilibriumState state);

// Static diagnosis of the system state. EQUILIBRIUM iff the commutator total
// vanishes; otherwise an origination search runs, and any event makes the
// state LOCALLY_EQUILIBRIUM (with the slices and restricted state functions
// attached); no event means NONEQUILIBRIUM. The internal-force indicator is
// the probe-point magnitude of the commutator.
struct EquilibriumDiagnosis {
  Relation relation;
  CommutatorReport commutator;
  EquilibriumState state;
  std::optional<double> internal_force;
  std::vector<OriginationEvent> events;
};

EquilibriumDiagnosis equilibrium_report(const BalanceSystem& system, const Metric& metric,
                                        std::span<const double> probe = {},
                                        const ZeroTestOptions& options = {});

}  // namespace exoform
