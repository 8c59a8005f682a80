#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exoform/geometry.hpp"

namespace exoform {

// Closure of a form under a connection: every coefficient of the
// evolutionary differential vanishes.
ZeroVerdict is_closed(const Form& form, const Connection& connection,
                      const ZeroTestOptions& options = {});

// Closure on a slice: the pullback of the form is closed under the
// restricted connection.
ZeroVerdict is_closed_on(const Form& form, const Pseudostructure& pi,
                         const Connection& connection, const ZeroTestOptions& options = {});

enum class RelationKind : std::uint8_t { identical, nonidentical, indeterminate };
const char* to_string(RelationKind kind);

// A differential relation d(psi) = omega: an optional degree-(p-1) potential
// on the left, a degree-p form on the right, diagnosed against a connection.
// IDENTICAL requires the right side closed and, when a potential is present,
// d(lhs) - rhs zero; NONIDENTICAL requires an exactly nonzero commutator
// coefficient; everything else is INDETERMINATE (with the borderline reason
// recorded), never a silent guess.
class Relation {
 public:
  Relation(std::optional<Form> lhs, Form rhs, Connection connection,
           std::optional<Pseudostructure> pi = {}, const ZeroTestOptions& options = {});

  const std::optional<Form>& lhs() const { return lhs_; }
  const Form& rhs() const { return rhs_; }
  const Connection& connection() const { return connection_; }
  const std::optional<Pseudostructure>& pseudostructure() const { return pi_; }

  RelationKind kind() const { return kind_; }
  // Confidence of the diagnosis (conjunction of the verdicts that decided it).
  Certainty confidence() const { return confidence_; }
  const std::string& note() const { return note_; }

  // Commutator report of the right side under the connection.
  const CommutatorReport& commutator() const { return commutator_; }
  // Verdict for d(lhs) - rhs when a potential is present.
  const std::optional<ZeroVerdict>& lhs_match() const { return lhs_match_; }

  int degree() const { return rhs_.degree(); }

 private:
  // Restriction caps the confidence of its result at the confidence of its
  // input (a probable premise cannot yield an exact conclusion).
  friend Relation restrict_relation(const Relation&, const Pseudostructure&,
                                    const ZeroTestOptions&);

  std::optional<Form> lhs_;
  Form rhs_;
  Connection connection_;
  std::optional<Pseudostructure> pi_;
  CommutatorReport commutator_;
  std::optional<ZeroVerdict> lhs_match_;
  RelationKind kind_ = RelationKind::indeterminate;
  Certainty confidence_ = Certainty::probable;
  std::string note_;
};

inline RelationKind relation_kind(const Relation& r) { return r.kind(); }

// An origination event: a coordinate slice on which an unclosed form and its
// Hodge dual close simultaneously, while the total commutator stays nonzero
// off the slice. Constraint values are symbolic constants, so a family like
// {y = c} is one parametric event.
struct OriginationEvent {
  Pseudostructure pi;
  Form restricted_form;          // pullback of the form to pi
  ZeroVerdict closed_on_pi;      // d_pi(omega) = 0
  ZeroVerdict dual_closed_on_pi; // d_pi(*omega) = 0
  std::optional<Relation> identical_relation;  // d(psi_pi) = omega_pi, when solvable
  ZeroVerdict residual_nonzero;  // total commutator off pi (always nonzero)
};

// Enumerates constraint subsets (symbolic constants, |J| >= 1, minimal,
// nonvacuous) on which both closure conditions hold. Requires the total
// commutator of the form to be exactly nonzero (else: no events). Events are
// ordered by subset size, then lexicographically. Dimension capped at 6.
std::vector<OriginationEvent> pseudostructure_search(const Form& form, const Metric& metric,
                                                     const Connection& connection,
                                                     const ZeroTestOptions& options = {});

// Pulls a relation back to a slice and re-diagnoses it. When the restriction
// is identical and the potential was unknown, the potential is solved via the
// homotopy antiderivative. Throws no_origination when the restricted
// relation is still not identical.
Relation restrict_relation(const Relation& r, const Pseudostructure& pi,
                           const ZeroTestOptions& options = {});

// One sequential-integration step: the potential of an identical relation
// becomes the right side of a new relation one degree lower (fresh unknown
// potential), re-diagnosed under the same connection.
Relation integrate_relation(const Relation& r, const ZeroTestOptions& options = {});

// One stage of the sequential-integration chain: a closed degree-k form on
// its slice.
struct ChainStage {
  int degree;             // k, from p down to 0
  Pseudostructure pi;     // slice applied at this stage (trivial when none)
  Form closed_form;       // the stage's right side, on the stage chart
  ZeroVerdict closed;     // closure verdict on the stage chart
};

// Runs the chain down to degree 0: integrate, and whenever the integrated
// form fails to close, restrict to a minimal coordinate slice on which it
// does. The starting relation must be identical. Throws no_origination if
// some stage admits no closing slice.
std::vector<ChainStage> sequential_integration(const Relation& r,
                                               const ZeroTestOptions& options = {});

// Degeneracy indicators for a transformation: the Jacobian determinant (when
// the function count matches the chart dimension) and the Poisson bracket
// (for exactly two functions on an even-dimensional chart split q_1..q_m,
// p_1..p_m). At least one must be applicable.
struct DegeneracyIndicators {
  std::optional<Expr> jacobian;
  std::optional<Expr> poisson_bracket;
};

DegeneracyIndicators degeneracy_indicators(const std::vector<Expr>& fns, const ChartPtr& chart);

// A coordinate transformation on a phase-space chart (q_1..q_m, p_1..p_m):
// the new coordinates Q_j, P_j as expressions in the old ones.
struct CanonicalMap {
  std::vector<Expr> Q;
  std::vector<Expr> P;
};

struct CanonicalVerdict {
  ZeroVerdict is_canonical;     // closure of delta = sum p_j dq_j - sum P_j dQ_j
  Form delta;                   // the difference 1-form itself
  std::optional<Expr> generating_function;  // W with dW = delta, when solvable
  std::optional<ZeroVerdict> check;         // d(W) - delta, when W was produced
};

// Canonicality test per p dq = P dQ + dW: builds delta, tests closure, and
// recovers the generating function on the exactly-closed polynomial path.
CanonicalVerdict verify_canonical(const CanonicalMap& map, const ChartPtr& chart,
                                  const ZeroTestOptions& options = {});

enum class Interaction : std::uint8_t { strong, weak, electromagnetic, gravitational };
const char* to_string(Interaction label);

// Classification of a generated structure: p the evolutionary-form degree,
// k the generated closed-form degree, n the original space dimension, N the
// formed-space dimension. The interaction label depends on k alone; the
// pseudostructure dimension is N - k.
struct StructureClass {
  int p, k, n, N;
  int pseudostructure_dimension;
  Interaction label;
};

StructureClass classify(int p, int k, int n, int N);

}  // namespace exoform
