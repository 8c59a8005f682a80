// exo: command-line front end over the exoform C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exoform/exoform.h"

namespace {

bool parse_probe(const std::string& text, std::vector<double>& out) {
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    try {
      std::size_t used = 0;
      double value = std::stod(part, &used);
      while (used < part.size() && std::isspace(static_cast<unsigned char>(part[used]))) ++used;
      if (used != part.size()) return false;
      out.push_back(value);
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("exoform ") + exo_version() +
               " — exterior forms, commutators, and origination analysis"};
  app.footer("Verbs: d, wedge, star, commutator, closure, diagnose, pseudo-search,\n"
             "       restrict, integrate, classify, canonical, degeneracy, balance, print.\n"
             "Exit codes: 0 success, 1 document or engine error, 2 usage error.");

  std::string verb;
  std::vector<std::string> names;
  std::string doc_path, probe_text, metric, connection, on;
  std::uint64_t seed = 0;
  int p = -1, k = -1, n = -1, N = -1;
  bool json = false, chain = false;

  app.add_option("verb", verb, "operation to run")->required();
  app.add_option("names", names, "names of the document objects the verb applies to");
  app.add_option("--doc", doc_path, "DSL document (.exo) to load");
  app.add_flag("--json", json, "print the JSON report instead of text");
  auto* seed_opt = app.add_option("--seed", seed, "sampler seed (default engine seed)");
  app.add_option("--probe", probe_text, "probe point, comma-separated coordinates");
  app.add_option("--metric", metric, "'euclidean' or a metric declared in the document");
  app.add_option("--connection", connection, "connection declared in the document (default flat)");
  app.add_option("--on", on, "pseudostructure to restrict to");
  app.add_option("--p", p, "evolutionary form degree (classify)");
  app.add_option("--k", k, "closed form degree (classify)");
  app.add_option("--n", n, "original space dimension (classify; defaults to N)");
  app.add_option("--N", N, "formed space dimension (classify)");
  app.add_flag("--chain", chain, "integrate: run the sequential chain to degree 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string text;
  if (!doc_path.empty()) {
    std::ifstream in(doc_path, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "exo: cannot open '%s'\n", doc_path.c_str());
      return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }

  exo_document* document = nullptr;
  exo_status status = exo_document_parse(text.c_str(), &document);
  if (status != EXO_OK) {
    std::fprintf(stderr, "exo: %s\n", exo_last_error());
    return status == EXO_USAGE_ERROR || status == EXO_INVALID_ARGUMENT ? 2 : 1;
  }

  std::vector<const char*> name_ptrs;
  name_ptrs.reserve(names.size());
  for (const auto& name : names) name_ptrs.push_back(name.c_str());

  std::vector<double> probe;
  if (!probe_text.empty() && !parse_probe(probe_text, probe)) {
    std::fprintf(stderr, "exo: --probe expects comma-separated numbers\n");
    exo_document_free(document);
    return 2;
  }

  exo_run_options options;
  exo_run_options_init(&options);
  options.verb = verb.c_str();
  options.names = name_ptrs.empty() ? nullptr : name_ptrs.data();
  options.name_count = name_ptrs.size();
  if (seed_opt->count() > 0) {
    options.has_seed = 1;
    options.seed = seed;
  }
  if (!metric.empty()) options.metric = metric.c_str();
  if (!connection.empty()) options.connection = connection.c_str();
  if (!on.empty()) options.on = on.c_str();
  if (!probe.empty()) {
    options.probe = probe.data();
    options.probe_count = probe.size();
  }
  options.p = p;
  options.k = k;
  options.n = n;
  options.N = N;
  options.chain = chain ? 1 : 0;

  exo_report* report = nullptr;
  status = exo_run(document, &options, &report);
  exo_document_free(document);
  if (status != EXO_OK) {
    std::fprintf(stderr, "exo: %s\n", exo_last_error());
    return status == EXO_USAGE_ERROR || status == EXO_INVALID_ARGUMENT ? 2 : 1;
  }

  std::fputs(json ? exo_report_json(report) : exo_report_text(report), stdout);
  int exit_code = exo_report_exit_code(report);
  exo_report_free(report);
  return exit_code;
}
