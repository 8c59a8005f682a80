/* C interface of the exoform engine: opaque handles, status codes, and
 * thread-local error text. Everything a front-end needs — parse a document,
 * run a verb, read the rendered report. */
#ifndef EXOFORM_EXOFORM_H
#define EXOFORM_EXOFORM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EXO_API __declspec(dllexport)
#else
#define EXO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct exo_document exo_document;
typedef struct exo_report exo_report;

typedef enum exo_status {
  EXO_OK = 0,
  EXO_INVALID_ARGUMENT = 1, /* null pointer / malformed options */
  EXO_PARSE_ERROR = 2,      /* DSL lexical/syntactic/name/dimension error */
  EXO_USAGE_ERROR = 3,      /* unknown verb or object name, bad flags */
  EXO_ENGINE_ERROR = 4,     /* engine rejected the operation */
  EXO_INTERNAL_ERROR = 5
} exo_status;

/* Parses DSL text into a document. On failure returns a status and leaves
 * *out untouched; the message is in exo_last_error(). */
EXO_API exo_status exo_document_parse(const char* text, exo_document** out);
EXO_API void exo_document_free(exo_document* document);

typedef struct exo_run_options {
  const char* verb;              /* required */
  const char* const* names;      /* object names the verb applies to */
  size_t name_count;
  int has_seed;                  /* when 0, the engine default seed is used */
  uint64_t seed;
  const char* metric;            /* "euclidean" or a named metric; optional */
  const char* connection;        /* named connection; optional (flat) */
  const char* on;                /* pseudostructure name; optional */
  const double* probe;           /* probe point; optional */
  size_t probe_count;
  int p, k, n, N;                /* classify inputs; -1 = unset */
  int chain;                     /* integrate: nonzero runs the full chain */
} exo_run_options;

/* Fills options with the defaults described above (all optionals unset). */
EXO_API void exo_run_options_init(exo_run_options* options);

/* Runs one verb against a document. Engine errors are embedded in the
 * report (see exo_report_exit_code); only usage and argument problems fail
 * without producing a report. */
EXO_API exo_status exo_run(const exo_document* document, const exo_run_options* options,
                           exo_report** out);

/* Rendered report text; pointers remain valid until exo_report_free. The
 * JSON rendering is byte-stable for identical documents, options, and seed. */
EXO_API const char* exo_report_json(const exo_report* report);
EXO_API const char* exo_report_text(const exo_report* report);
/* 0 on success, 1 when the verb raised an engine error (report carries it). */
EXO_API int exo_report_exit_code(const exo_report* report);
EXO_API void exo_report_free(exo_report* report);

/* Message of the most recent failure on this thread; empty string if none. */
EXO_API const char* exo_last_error(void);

EXO_API const char* exo_version(void);

#ifdef __cplusplus
}
#endif

#endif /* EXOFORM_EXOFORM_H */
