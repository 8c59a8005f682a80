#include "exoform/report.hpp"

#include <sstream>

#include "exoform/error.hpp"
#include "exoform/version.hpp"
#include "json.hpp"

namespace exoform {

namespace {

using json = nlohmann::ordered_json;

const char* kind_slug(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::name: return "name";
    case ErrorKind::chart: return "chart";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::degree: return "degree";
    case ErrorKind::unsupported_metric: return "unsupported-metric";
    case ErrorKind::unsupported_integrand: return "unsupported-integrand";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::not_closed: return "not-closed";
    case ErrorKind::no_origination: return "no-origination";
    case ErrorKind::usage: return "usage";
    case ErrorKind::internal: return "internal";
  }
  return "internal";
}

[[noreturn]] void usage_error(const std::string& message) {
  throw Error(ErrorKind::usage, message);
}

std::string zero_state_text(const ZeroVerdict& v) {
  if (v.is_zero()) return "zero";
  if (v.is_nonzero()) return "nonzero";
  return "indeterminate";
}

// Uniform result rows; the JSON and text renderings are generated from the
// same list so they cannot drift apart.
struct Row {
  std::string name;
  std::string kind;  // form | verdict | event | class
  json value;
  std::string confidence;
};

Row form_row(std::string name, const Form& form) {
  return Row{std::move(name), "form", form.to_string(), "exact"};
}

Row verdict_row(std::string name, const ZeroVerdict& v, std::string value = "") {
  return Row{std::move(name), "verdict", value.empty() ? zero_state_text(v) : std::move(value),
             confidence_label(v)};
}

Row text_verdict_row(std::string name, std::string value, std::string confidence) {
  return Row{std::move(name), "verdict", std::move(value), std::move(confidence)};
}

Row number_row(std::string name, double value) {
  return Row{std::move(name), "verdict", value, "exact"};
}

json event_value(const OriginationEvent& ev) {
  json value{{"pi", ev.pi.to_string()},
             {"form", ev.restricted_form.to_string()},
             {"closed", confidence_label(ev.closed_on_pi)},
             {"dual_closed", confidence_label(ev.dual_closed_on_pi)}};
  if (ev.identical_relation && ev.identical_relation->lhs())
    value["psi"] = ev.identical_relation->lhs()->to_string();
  return value;
}

Row event_row(std::string name, const OriginationEvent& ev) {
  return Row{std::move(name), "event", event_value(ev),
             confidence_label(combine_all_zero(ev.closed_on_pi, ev.dual_closed_on_pi))};
}

std::string render_value_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

std::string format_probe(const std::vector<double>& probe) {
  std::ostringstream out;
  for (std::size_t i = 0; i < probe.size(); ++i) out << (i ? "," : "") << probe[i];
  return out.str();
}

std::string echo_command(const RunRequest& request) {
  std::ostringstream out;
  out << request.verb;
  for (const auto& name : request.names) out << " " << name;
  if (request.on) out << " --on " << *request.on;
  if (request.metric) out << " --metric " << *request.metric;
  if (request.connection) out << " --connection " << *request.connection;
  if (!request.probe.empty()) out << " --probe " << format_probe(request.probe);
  if (request.p) out << " --p " << *request.p;
  if (request.k) out << " --k " << *request.k;
  if (request.n) out << " --n " << *request.n;
  if (request.N) out << " --N " << *request.N;
  if (request.chain) out << " --chain";
  return out.str();
}

// --- name resolution (absent names fall back to the unique object) ---

template <typename T>
const T& resolve(const std::vector<std::pair<std::string, T>>& list, const Document&,
                 const std::vector<std::string>& names, std::size_t position,
                 const char* category) {
  if (position < names.size()) {
    for (const auto& [name, value] : list)
      if (name == names[position]) return value;
    usage_error(std::string("unknown ") + category + " '" + names[position] + "'");
  }
  if (list.size() == 1) return list.front().second;
  usage_error(list.empty()
                  ? std::string("the document declares no ") + category
                  : std::string("several ") + category + "s declared; name one");
}

const Form& resolve_form(const Document& doc, const std::vector<std::string>& names,
                         std::size_t position = 0) {
  return resolve(doc.forms, doc, names, position, "form");
}

const RelationDecl& resolve_relation(const Document& doc, const std::vector<std::string>& names) {
  if (!names.empty()) {
    if (const RelationDecl* r = doc.find_relation(names[0])) return *r;
    usage_error("unknown relation '" + names[0] + "'");
  }
  if (doc.relations.size() == 1) return doc.relations.front();
  usage_error(doc.relations.empty() ? "the document declares no relation"
                                    : "several relations declared; name one");
}

const CanonicalDecl& resolve_canonical(const Document& doc,
                                       const std::vector<std::string>& names) {
  if (!names.empty()) {
    if (const CanonicalDecl* c = doc.find_canonical(names[0])) return *c;
    usage_error("unknown canonical transformation '" + names[0] + "'");
  }
  if (doc.canonicals.size() == 1) return doc.canonicals.front();
  usage_error(doc.canonicals.empty() ? "the document declares no canonical transformation"
                                     : "several canonical transformations declared; name one");
}

const BalanceDecl& resolve_balance(const Document& doc, const std::vector<std::string>& names) {
  if (!names.empty()) {
    if (const BalanceDecl* b = doc.find_balance(names[0])) return *b;
    usage_error("unknown balance system '" + names[0] + "'");
  }
  if (doc.balances.size() == 1) return doc.balances.front();
  usage_error(doc.balances.empty() ? "the document declares no balance system"
                                   : "several balance systems declared; name one");
}

const Pseudostructure& resolve_on(const Document& doc, const RunRequest& request) {
  if (!request.on) usage_error("this verb needs --on <pseudostructure>");
  if (const Pseudostructure* pi = doc.find_pseudostructure(*request.on)) return *pi;
  usage_error("unknown pseudostructure '" + *request.on + "'");
}

Connection resolve_connection(const Document& doc, const RunRequest& request,
                              const ChartPtr& chart) {
  if (!request.connection) return Connection::flat(chart);
  if (const Connection* c = doc.find_connection(*request.connection)) return *c;
  usage_error("unknown connection '" + *request.connection + "'");
}

Metric resolve_metric(const Document& doc, const RunRequest& request, const ChartPtr& chart) {
  if (!request.metric || *request.metric == "euclidean") return Metric::euclidean(chart);
  if (const Metric* m = doc.find_metric(*request.metric)) return *m;
  usage_error("unknown metric '" + *request.metric + "'");
}

ChartPtr require_chart(const Document& doc) {
  if (!doc.chart) usage_error("the document declares no chart");
  return doc.chart;
}

// Builds the relation a decl describes, under the requested connection.
Relation build_relation(const Document& doc, const RelationDecl& decl,
                        const Connection& connection, const ZeroTestOptions& options) {
  std::optional<Form> lhs;
  if (decl.lhs) lhs = *doc.find_form(*decl.lhs);
  return Relation(std::move(lhs), *doc.find_form(decl.rhs), connection, {}, options);
}

struct Outcome {
  std::vector<Row> rows;
  std::vector<std::string> notes;  // extra lines for the text rendering
};

Outcome run_verb(const Document& doc, const RunRequest& request) {
  ZeroTestOptions options{request.seed, ZeroTestOptions{}.samples};
  Outcome out;
  const std::string& verb = request.verb;

  if (verb == "print") {
    out.rows.push_back(Row{"document", "form", print_document(doc), "exact"});
    return out;
  }

  if (verb == "classify") {
    if (!request.p || !request.k || !request.N)
      usage_error("classify needs --p, --k and --N (--n defaults to N)");
    StructureClass sc =
        classify(*request.p, *request.k, request.n ? *request.n : *request.N, *request.N);
    json value{{"p", sc.p},
               {"k", sc.k},
               {"n", sc.n},
               {"N", sc.N},
               {"pseudostructure_dimension", sc.pseudostructure_dimension},
               {"label", to_string(sc.label)}};
    out.rows.push_back(Row{"class", "class", value, "exact"});
    return out;
  }

  ChartPtr chart = require_chart(doc);

  if (verb == "d") {
    const Form& form = resolve_form(doc, request.names);
    Connection conn = resolve_connection(doc, request, chart);
    out.rows.push_back(form_row("d", evolutionary_derivative(form, conn)));
    return out;
  }

  if (verb == "wedge") {
    if (request.names.size() != 2) usage_error("wedge takes exactly two form names");
    const Form& a = resolve_form(doc, request.names, 0);
    const Form& b = resolve_form(doc, request.names, 1);
    out.rows.push_back(form_row("wedge", wedge(a, b)));
    return out;
  }

  if (verb == "star") {
    const Form& form = resolve_form(doc, request.names);
    Metric metric = resolve_metric(doc, request, chart);
    out.rows.push_back(form_row("star", hodge_star(form, metric)));
    return out;
  }

  if (verb == "commutator") {
    const Form& form = resolve_form(doc, request.names);
    Connection conn = resolve_connection(doc, request, chart);
    CommutatorReport report = form_commutator(form, conn, request.probe, options);
    out.rows.push_back(form_row("coefficient_term", report.coefficient_term));
    out.rows.push_back(form_row("metric_term", report.metric_term));
    out.rows.push_back(form_row("total", report.total));
    out.rows.push_back(verdict_row("coefficient_zero", report.coefficient_zero));
    out.rows.push_back(verdict_row("metric_zero", report.metric_zero));
    out.rows.push_back(verdict_row("total_zero", report.total_zero));
    if (report.discontinuity_indicator)
      out.rows.push_back(number_row("discontinuity", *report.discontinuity_indicator));
    return out;
  }

  if (verb == "closure") {
    const Form& form = resolve_form(doc, request.names);
    Connection conn = resolve_connection(doc, request, chart);
    ZeroVerdict v = request.on ? is_closed_on(form, resolve_on(doc, request), conn, options)
                               : is_closed(form, conn, options);
    out.rows.push_back(verdict_row("closed", v, v.is_zero() ? "yes" : v.is_nonzero() ? "no"
                                                                                     : "unknown"));
    return out;
  }

  if (verb == "pseudo-search") {
    const Form& form = resolve_form(doc, request.names);
    Connection conn = resolve_connection(doc, request, chart);
    Metric metric = resolve_metric(doc, request, chart);
    auto events = pseudostructure_search(form, metric, conn, options);
    for (std::size_t i = 0; i < events.size(); ++i)
      out.rows.push_back(event_row("event" + std::to_string(i + 1), events[i]));
    if (events.empty()) out.notes.push_back("no origination events");
    return out;
  }

  if (verb == "restrict") {
    const RelationDecl& decl = resolve_relation(doc, request.names);
    const Pseudostructure& pi = resolve_on(doc, request);
    Connection conn = resolve_connection(doc, request, chart);
    Relation restricted =
        restrict_relation(build_relation(doc, decl, conn, options), pi, options);
    out.rows.push_back(text_verdict_row("kind", to_string(restricted.kind()),
                                        to_string(restricted.confidence())));
    if (restricted.lhs()) out.rows.push_back(form_row("psi", *restricted.lhs()));
    out.rows.push_back(form_row("omega", restricted.rhs()));
    return out;
  }

  if (verb == "integrate") {
    const RelationDecl& decl = resolve_relation(doc, request.names);
    Connection conn = resolve_connection(doc, request, chart);
    Relation relation = build_relation(doc, decl, conn, options);
    if (request.chain) {
      auto stages = sequential_integration(relation, options);
      for (const auto& stage : stages) {
        json value{{"degree", stage.degree},
                   {"pi", stage.pi.to_string()},
                   {"form", stage.closed_form.to_string()},
                   {"closed", confidence_label(stage.closed)}};
        out.rows.push_back(Row{"stage" + std::to_string(stage.degree), "event", value,
                               confidence_label(stage.closed)});
      }
      return out;
    }
    Relation next = integrate_relation(relation, options);
    out.rows.push_back(form_row("chi", next.rhs()));
    out.rows.push_back(
        text_verdict_row("kind", to_string(next.kind()), to_string(next.confidence())));
    return out;
  }

  if (verb == "diagnose") {
    const RelationDecl& decl = resolve_relation(doc, request.names);
    Connection conn = resolve_connection(doc, request, chart);
    Relation relation = build_relation(doc, decl, conn, options);
    out.rows.push_back(
        text_verdict_row("kind", to_string(relation.kind()), to_string(relation.confidence())));
    out.rows.push_back(verdict_row("total_zero", relation.commutator().total_zero));
    if (relation.lhs_match()) out.rows.push_back(verdict_row("lhs_match", *relation.lhs_match()));
    if (!relation.note().empty()) out.notes.push_back(relation.note());
    return out;
  }

  if (verb == "canonical") {
    const CanonicalDecl& decl = resolve_canonical(doc, request.names);
    CanonicalVerdict verdict = verify_canonical(decl.map, chart, options);
    out.rows.push_back(verdict_row(
        "canonical", verdict.is_canonical,
        verdict.is_canonical.is_zero() ? "yes"
                                       : verdict.is_canonical.is_nonzero() ? "no" : "unknown"));
    out.rows.push_back(form_row("delta", verdict.delta));
    if (verdict.generating_function) {
      Form w(chart, 0);
      w.add_term(MultiIndex(), *verdict.generating_function);
      out.rows.push_back(form_row("W", w));
    }
    if (verdict.check) out.rows.push_back(verdict_row("check", *verdict.check));
    return out;
  }

  if (verb == "degeneracy") {
    if (request.names.empty()) usage_error("degeneracy takes the 0-form names of the functions");
    std::vector<Expr> fns;
    for (const auto& name : request.names) {
      const Form* f = doc.find_form(name);
      if (!f) usage_error("unknown form '" + name + "'");
      if (f->degree() != 0) usage_error("'" + name + "' is not a 0-form");
      fns.push_back(f->coefficient(MultiIndex()));
    }
    DegeneracyIndicators di = degeneracy_indicators(fns, chart);
    auto expr_row = [&](const char* name, const Expr& e) {
      Form f(chart, 0);
      f.add_term(MultiIndex(), e);
      out.rows.push_back(form_row(name, f));
    };
    if (di.jacobian) expr_row("jacobian", *di.jacobian);
    if (di.poisson_bracket) expr_row("poisson_bracket", *di.poisson_bracket);
    return out;
  }

  if (verb == "balance") {
    const BalanceDecl& decl = resolve_balance(doc, request.names);
    Connection conn = decl.connection && !request.connection
                          ? *doc.find_connection(*decl.connection)
                          : resolve_connection(doc, request, decl.chart);
    std::optional<Form> supplied;
    if (decl.omega) supplied = *doc.find_form(*decl.omega);
    BalanceSystem system(decl.chart, decl.actions, std::move(conn), decl.degree,
                         std::move(supplied));
    Metric metric = resolve_metric(doc, request, decl.chart);
    EquilibriumDiagnosis diagnosis =
        equilibrium_report(system, metric, request.probe, options);
    out.rows.push_back(text_verdict_row("state", to_string(diagnosis.state),
                                        confidence_label(diagnosis.commutator.total_zero)));
    out.rows.push_back(text_verdict_row("kind", to_string(diagnosis.relation.kind()),
                                        to_string(diagnosis.relation.confidence())));
    out.rows.push_back(form_row("commutator", diagnosis.commutator.total));
    if (diagnosis.internal_force)
      out.rows.push_back(number_row("internal_force", *diagnosis.internal_force));
    for (std::size_t i = 0; i < diagnosis.events.size(); ++i)
      out.rows.push_back(event_row("event" + std::to_string(i + 1), diagnosis.events[i]));
    return out;
  }

  usage_error("unknown verb '" + verb + "'");
}

json chart_json(const Document& doc) {
  if (!doc.chart) return nullptr;
  return json{{"dim", doc.chart->dimension()}, {"vars", doc.chart->names()}};
}

Report render(const Document& doc, const RunRequest& request, const Outcome& outcome,
              const Error* error) {
  Report report;
  report.command = echo_command(request);
  report.exit_code = error ? 1 : 0;

  json j{{"command", report.command}, {"chart", chart_json(doc)}, {"results", json::array()}};
  for (const auto& row : outcome.rows)
    j["results"].push_back(json{{"name", row.name},
                                {"kind", row.kind},
                                {"value", row.value},
                                {"confidence", row.confidence}});
  if (error) j["error"] = json{{"kind", kind_slug(error->kind())}, {"message", error->what()}};
  j["seed"] = request.seed;
  j["version"] = EXOFORM_VERSION_STRING;
  report.json_text = j.dump(2) + "\n";

  std::ostringstream text;
  text << "$ " << report.command << "\n";
  if (doc.chart) {
    text << "chart:";
    for (const auto& name : doc.chart->names()) text << " " << name;
    text << "\n";
  }
  for (const auto& row : outcome.rows) {
    if (row.kind == "form") {
      text << row.name << " = " << render_value_text(row.value) << "\n";
    } else {
      text << row.name << ": " << render_value_text(row.value) << " (" << row.confidence << ")\n";
    }
  }
  for (const auto& note : outcome.notes) text << "note: " << note << "\n";
  if (error) text << "error (" << kind_slug(error->kind()) << "): " << error->what() << "\n";
  report.text = text.str();
  return report;
}

}  // namespace

Report run(const Document& document, const RunRequest& request) {
  try {
    Outcome outcome = run_verb(document, request);
    return render(document, request, outcome, nullptr);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::usage) throw;
    return render(document, request, Outcome{}, &e);
  }
}

const std::vector<std::string>& known_verbs() {
  static const std::vector<std::string> verbs{
      "d",        "wedge",    "star",     "commutator", "closure",
      "diagnose", "pseudo-search", "restrict", "integrate",  "classify",
      "canonical", "degeneracy", "balance", "print",
  };
  return verbs;
}

}  // namespace exoform
