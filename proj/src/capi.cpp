#include "exoform/exoform.h"

#include <string>

#include "exoform/error.hpp"
#include "exoform/report.hpp"
#include "exoform/version.hpp"

struct exo_document {
  exoform::Document document;
};

struct exo_report {
  exoform::Report report;
};

namespace {

thread_local std::string g_last_error;

exo_status fail(exo_status status, const char* message) {
  g_last_error = message;
  return status;
}

exo_status fail(exo_status status, const std::exception& e) {
  g_last_error = e.what();
  return status;
}

exo_status status_of(const exoform::Error& e) {
  using exoform::ErrorKind;
  switch (e.kind()) {
    case ErrorKind::parse:
    case ErrorKind::name:
    case ErrorKind::chart:
    case ErrorKind::dimension:
      return EXO_PARSE_ERROR;
    case ErrorKind::usage:
      return EXO_USAGE_ERROR;
    case ErrorKind::internal:
      return EXO_INTERNAL_ERROR;
    default:
      return EXO_ENGINE_ERROR;
  }
}

}  // namespace

extern "C" {

exo_status exo_document_parse(const char* text, exo_document** out) {
  if (!text || !out) return fail(EXO_INVALID_ARGUMENT, "null argument");
  try {
    auto* doc = new exo_document{exoform::parse_document(text)};
    *out = doc;
    g_last_error.clear();
    return EXO_OK;
  } catch (const exoform::Error& e) {
    return fail(status_of(e), e);
  } catch (const std::exception& e) {
    return fail(EXO_INTERNAL_ERROR, e);
  }
}

void exo_document_free(exo_document* document) { delete document; }

void exo_run_options_init(exo_run_options* options) {
  if (!options) return;
  *options = exo_run_options{};
  options->p = options->k = options->n = options->N = -1;
}

exo_status exo_run(const exo_document* document, const exo_run_options* options,
                   exo_report** out) {
  if (!document || !options || !out) return fail(EXO_INVALID_ARGUMENT, "null argument");
  if (!options->verb) return fail(EXO_INVALID_ARGUMENT, "options.verb is required");
  if (options->name_count > 0 && !options->names)
    return fail(EXO_INVALID_ARGUMENT, "names is null with name_count > 0");
  if (options->probe_count > 0 && !options->probe)
    return fail(EXO_INVALID_ARGUMENT, "probe is null with probe_count > 0");

  exoform::RunRequest request;
  request.verb = options->verb;
  for (size_t i = 0; i < options->name_count; ++i) {
    if (!options->names[i]) return fail(EXO_INVALID_ARGUMENT, "null name");
    request.names.emplace_back(options->names[i]);
  }
  if (options->has_seed) request.seed = options->seed;
  if (options->metric) request.metric = options->metric;
  if (options->connection) request.connection = options->connection;
  if (options->on) request.on = options->on;
  if (options->probe_count > 0)
    request.probe.assign(options->probe, options->probe + options->probe_count);
  if (options->p >= 0) request.p = options->p;
  if (options->k >= 0) request.k = options->k;
  if (options->n >= 0) request.n = options->n;
  if (options->N >= 0) request.N = options->N;
  request.chain = options->chain != 0;

  try {
    auto* report = new exo_report{exoform::run(document->document, request)};
    *out = report;
    g_last_error.clear();
    return EXO_OK;
  } catch (const exoform::Error& e) {
    return fail(status_of(e), e);
  } catch (const std::exception& e) {
    return fail(EXO_INTERNAL_ERROR, e);
  }
}

const char* exo_report_json(const exo_report* report) {
  return report ? report->report.json_text.c_str() : "";
}

const char* exo_report_text(const exo_report* report) {
  return report ? report->report.text.c_str() : "";
}

int exo_report_exit_code(const exo_report* report) {
  return report ? report->report.exit_code : 1;
}

void exo_report_free(exo_report* report) { delete report; }

const char* exo_last_error(void) { return g_last_error.c_str(); }

const char* exo_version(void) { return EXOFORM_VERSION_STRING; }

}  // extern "C"
