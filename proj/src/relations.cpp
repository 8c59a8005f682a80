#include "exoform/relations.hpp"

#include <algorithm>
#include <utility>

#include "exoform/error.hpp"

namespace exoform {

ZeroVerdict is_closed(const Form& form, const Connection& connection,
                      const ZeroTestOptions& options) {
  return form_is_zero(evolutionary_derivative(form, connection), options);
}

ZeroVerdict is_closed_on(const Form& form, const Pseudostructure& pi,
                         const Connection& connection, const ZeroTestOptions& options) {
  require_same_chart(form.chart(), pi.chart(), "slice closure");
  return is_closed(pullback_to(form, pi), restrict_connection(connection, pi), options);
}

const char* to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::identical: return "identical";
    case RelationKind::nonidentical: return "nonidentical";
    case RelationKind::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Relation::Relation(std::optional<Form> lhs, Form rhs, Connection connection,
                   std::optional<Pseudostructure> pi, const ZeroTestOptions& options)
    : lhs_(std::move(lhs)),
      rhs_(std::move(rhs)),
      connection_(std::move(connection)),
      pi_(std::move(pi)),
      commutator_(form_commutator(rhs_, connection_, {}, options)) {
  if (lhs_) {
    require_same_chart(lhs_->chart(), rhs_.chart(), "relation");
    if (lhs_->degree() != rhs_.degree() - 1)
      throw Error(ErrorKind::degree, "potential degree must be one below the right side");
  }
  if (pi_) require_same_chart(pi_->induced_chart(), rhs_.chart(), "relation slice");

  if (lhs_)
    lhs_match_ = form_is_zero(evolutionary_derivative(*lhs_, connection_) - rhs_, options);

  const ZeroVerdict& closure = commutator_.total_zero;
  if (closure.is_nonzero()) {
    kind_ = RelationKind::nonidentical;
    confidence_ = Certainty::exact;
    note_ = "commutator has a nonzero coefficient";
  } else if (closure.is_zero()) {
    if (!lhs_) {
      kind_ = RelationKind::identical;
      confidence_ = closure.certainty;
    } else if (lhs_match_->is_zero()) {
      kind_ = RelationKind::identical;
      confidence_ = (closure.certainty == Certainty::exact &&
                     lhs_match_->certainty == Certainty::exact)
                        ? Certainty::exact
                        : Certainty::probable;
    } else if (lhs_match_->is_nonzero()) {
      kind_ = RelationKind::indeterminate;
      confidence_ = Certainty::probable;
      note_ = "right side is closed but does not match the stated potential";
    } else {
      kind_ = RelationKind::indeterminate;
      confidence_ = Certainty::probable;
      note_ = "potential match is indeterminate";
    }
  } else {
    kind_ = RelationKind::indeterminate;
    confidence_ = Certainty::probable;
    note_ = "closure of the right side is indeterminate";
  }
}

// Attempts to solve d(psi) = rhs on the relation's chart and returns the
// relation with the potential filled in; on any failure (non-polynomial
// coefficients, torsion obstructing the flat homotopy) the potential stays
// unknown.
static Relation solve_potential(Relation r, const ZeroTestOptions& options) {
  if (r.kind() != RelationKind::identical || r.lhs() || r.degree() < 1) return r;
  try {
    Form psi = homotopy_antiderivative(r.rhs());
    Relation solved(psi, r.rhs(), r.connection(), r.pseudostructure(), options);
    if (solved.kind() == RelationKind::identical) return solved;
  } catch (const Error&) {
    // fall through: closed only probably, or outside the polynomial class
  }
  return r;
}

namespace {

// Subsets of {0..n-1} ordered by size, then lexicographically.
std::vector<std::vector<int>> subsets_by_size(int n) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= n; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      out.push_back(pick);
      int pos = size - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i)
        pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return out;
}

bool contains_subset(const std::vector<int>& super, const std::vector<int>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

Pseudostructure symbolic_slice(const ChartPtr& chart, const std::vector<int>& vars) {
  std::map<int, Expr> constraints;
  for (int v : vars) constraints.emplace(v, Expr::parameter("c_" + chart->name(v)));
  return Pseudostructure(chart, std::move(constraints));
}

}  // namespace

std::vector<OriginationEvent> pseudostructure_search(const Form& form, const Metric& metric,
                                                     const Connection& connection,
                                                     const ZeroTestOptions& options) {
  require_same_chart(form.chart(), metric.chart(), "pseudostructure search");
  require_same_chart(form.chart(), connection.chart(), "pseudostructure search");
  const int n = form.dimension();
  if (n > 6)
    throw Error(ErrorKind::dimension, "pseudostructure search is capped at 6 dimensions");

  std::vector<OriginationEvent> events;
  ZeroVerdict residual = form_commutator(form, connection, {}, options).total_zero;
  if (!residual.is_nonzero()) return events;  // nothing to originate from

  Form dual = hodge_star(form, metric);
  std::vector<std::vector<int>> passing;
  for (const auto& vars : subsets_by_size(n)) {
    bool shadowed = false;
    for (const auto& smaller : passing)
      if (contains_subset(vars, smaller)) {
        shadowed = true;
        break;
      }
    if (shadowed) continue;

    Pseudostructure pi = symbolic_slice(form.chart(), vars);
    Form restricted = pullback_to(form, pi);
    if (restricted.empty()) continue;  // vacuous slice: nothing closes *on* it

    ZeroVerdict closed = is_closed_on(form, pi, connection, options);
    if (!closed.is_zero()) continue;
    ZeroVerdict dual_closed = is_closed_on(dual, pi, connection, options);
    if (!dual_closed.is_zero()) continue;

    passing.push_back(vars);
    Relation identical = solve_potential(
        Relation({}, restricted, restrict_connection(connection, pi), pi, options), options);
    events.push_back(OriginationEvent{std::move(pi), std::move(restricted), closed,
                                      dual_closed, std::move(identical), residual});
  }
  return events;
}

Relation restrict_relation(const Relation& r, const Pseudostructure& pi,
                           const ZeroTestOptions& options) {
  require_same_chart(r.rhs().chart(), pi.chart(), "relation restriction");
  std::optional<Form> lhs;
  if (r.lhs()) lhs = pullback_to(*r.lhs(), pi);
  Relation restricted = solve_potential(
      Relation(std::move(lhs), pullback_to(r.rhs(), pi),
               restrict_connection(r.connection(), pi), pi, options),
      options);
  if (restricted.kind() != RelationKind::identical)
    throw Error(ErrorKind::no_origination,
                "restriction to " + pi.to_string() + " leaves the relation nonidentical");
  if (r.confidence() == Certainty::probable) restricted.confidence_ = Certainty::probable;
  return restricted;
}

Relation integrate_relation(const Relation& r, const ZeroTestOptions& options) {
  if (r.kind() != RelationKind::identical)
    throw Error(ErrorKind::not_closed, "only an identical relation can be integrated");
  if (r.degree() < 1)
    throw Error(ErrorKind::degree, "a degree-0 relation has nothing left to integrate");
  Form chi = homotopy_antiderivative(r.rhs());
  return Relation({}, std::move(chi), r.connection(), r.pseudostructure(), options);
}

namespace {

Pseudostructure trivial_slice(const ChartPtr& chart) { return Pseudostructure(chart); }

// Minimal coordinate slice (symbolic constants) on which the form closes;
// nonvacuous slices are preferred, vacuous ones accepted as a last resort.
std::optional<Pseudostructure> closing_slice(const Form& form, const Connection& connection,
                                             const ZeroTestOptions& options) {
  std::optional<Pseudostructure> vacuous;
  for (const auto& vars : subsets_by_size(form.dimension())) {
    Pseudostructure pi = symbolic_slice(form.chart(), vars);
    if (pullback_to(form, pi).empty()) {
      if (!vacuous) vacuous = std::move(pi);
      continue;
    }
    if (is_closed_on(form, pi, connection, options).is_zero()) return pi;
  }
  return vacuous;
}

}  // namespace

std::vector<ChainStage> sequential_integration(const Relation& r,
                                               const ZeroTestOptions& options) {
  if (r.kind() != RelationKind::identical)
    throw Error(ErrorKind::not_closed, "sequential integration starts from an identical relation");

  std::vector<ChainStage> stages;
  stages.push_back(ChainStage{
      r.degree(),
      r.pseudostructure() ? *r.pseudostructure() : trivial_slice(r.rhs().chart()),
      r.rhs(),
      r.commutator().total_zero,
  });

  Relation current = r;
  while (current.degree() >= 1) {
    Relation next = integrate_relation(current, options);
    if (next.kind() == RelationKind::identical) {
      stages.push_back(ChainStage{next.degree(), trivial_slice(next.rhs().chart()),
                                  next.rhs(), next.commutator().total_zero});
      current = std::move(next);
      continue;
    }
    auto slice = closing_slice(next.rhs(), next.connection(), options);
    if (!slice)
      throw Error(ErrorKind::no_origination,
                  "no coordinate slice closes the degree-" + std::to_string(next.degree()) +
                      " stage");
    Relation restricted = restrict_relation(next, *slice, options);
    stages.push_back(ChainStage{restricted.degree(), *slice, restricted.rhs(),
                                restricted.commutator().total_zero});
    current = std::move(restricted);
  }
  return stages;
}

namespace {

Expr det_of(const std::vector<std::vector<Expr>>& m, std::vector<int> cols) {
  const std::size_t row = m.size() - cols.size();
  if (cols.empty()) return Expr::integer(1);
  Expr acc;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> rest = cols;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    Expr cofactor = m[row][static_cast<std::size_t>(cols[k])] * det_of(m, std::move(rest));
    acc = (k % 2 == 0) ? acc + cofactor : acc - cofactor;
  }
  return acc;
}

}  // namespace

DegeneracyIndicators degeneracy_indicators(const std::vector<Expr>& fns, const ChartPtr& chart) {
  if (!chart) throw Error(ErrorKind::chart, "degeneracy indicators require a chart");
  const int n = chart->dimension();
  for (const Expr& f : fns)
    if (max_variable(f) >= n)
      throw Error(ErrorKind::chart, "function references a variable off the chart");

  DegeneracyIndicators out;
  if (static_cast<int>(fns.size()) == n) {
    std::vector<std::vector<Expr>> jac(fns.size(), std::vector<Expr>(fns.size()));
    for (std::size_t i = 0; i < fns.size(); ++i)
      for (int j = 0; j < n; ++j) jac[i][static_cast<std::size_t>(j)] = differentiate(fns[i], j);
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j;
    out.jacobian = simplify(det_of(jac, std::move(cols)));
  }
  if (fns.size() == 2 && n % 2 == 0) {
    const int m = n / 2;
    Expr bracket;
    for (int i = 0; i < m; ++i) {
      bracket = bracket + differentiate(fns[0], i) * differentiate(fns[1], m + i) -
                differentiate(fns[0], m + i) * differentiate(fns[1], i);
    }
    out.poisson_bracket = simplify(bracket);
  }
  if (!out.jacobian && !out.poisson_bracket)
    throw Error(ErrorKind::dimension,
                "need as many functions as chart variables (Jacobian) or exactly two on an "
                "even-dimensional chart (bracket)");
  return out;
}

CanonicalVerdict verify_canonical(const CanonicalMap& map, const ChartPtr& chart,
                                  const ZeroTestOptions& options) {
  if (!chart) throw Error(ErrorKind::chart, "canonical test requires a chart");
  const int n = chart->dimension();
  if (n % 2 != 0)
    throw Error(ErrorKind::dimension, "canonical test needs an even-dimensional chart");
  const int m = n / 2;
  if (static_cast<int>(map.Q.size()) != m || static_cast<int>(map.P.size()) != m)
    throw Error(ErrorKind::dimension, "need one Q and one P per coordinate pair");
  for (const auto& list : {map.Q, map.P})
    for (const Expr& e : list)
      if (max_variable(e) >= n)
        throw Error(ErrorKind::chart, "transformation references a variable off the chart");

  // delta = sum_j p_j dq_j - sum_j P_j dQ_j, with dQ_j expanded on the chart.
  Form delta(chart, 1);
  for (int j = 0; j < m; ++j) delta.add_term(MultiIndex({j}), Expr::variable(m + j));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      Expr part = map.P[static_cast<std::size_t>(j)] *
                  differentiate(map.Q[static_cast<std::size_t>(j)], i);
      delta.add_term(MultiIndex({i}), -part);
    }

  CanonicalVerdict verdict{form_is_zero(exterior_derivative(delta), options), delta, {}, {}};
  if (verdict.is_canonical.is_zero_exact()) {
    try {
      Form w = homotopy_antiderivative(delta);
      verdict.generating_function = w.coefficient(MultiIndex());
      verdict.check = form_is_zero(exterior_derivative(w) - delta, options);
    } catch (const Error&) {
      // generating function outside the polynomial class; closure stands alone
    }
  }
  return verdict;
}

const char* to_string(Interaction label) {
  switch (label) {
    case Interaction::strong: return "strong";
    case Interaction::weak: return "weak";
    case Interaction::electromagnetic: return "electromagnetic";
    case Interaction::gravitational: return "gravitational";
  }
  return "strong";
}

StructureClass classify(int p, int k, int n, int N) {
  if (k < 0 || p < k || p > 3)
    throw Error(ErrorKind::degree, "classification needs degrees 0 <= k <= p <= 3");
  if (n < 1 || N < 1) throw Error(ErrorKind::dimension, "space dimensions must be positive");
  if (N < k) throw Error(ErrorKind::dimension, "formed space cannot be smaller than the closed-form degree");
  static constexpr Interaction kLabels[4] = {Interaction::strong, Interaction::weak,
                                             Interaction::electromagnetic,
                                             Interaction::gravitational};
  return StructureClass{p, k, n, N, N - k, kLabels[k]};
}

}  // namespace exoform
