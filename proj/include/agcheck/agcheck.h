/* C API for the agcheck verification library.
 *
 * All objects are opaque handles created by agc_*_parse/agc_*_load
 * functions and released with the matching agc_*_free. Functions returning
 * a pointer return NULL on failure; functions returning int return a
 * negative value on failure. In both cases agc_last_error() describes the
 * problem (thread-local storage, valid until the next API call on the same
 * thread). Strings returned through char** out-parameters are owned by the
 * caller and must be released with agc_string_free.
 */
#ifndef AGCHECK_AGCHECK_H_
#define AGCHECK_AGCHECK_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct agc_model agc_model;           /* parsed AML model */
typedef struct agc_perr agc_perr;             /* safety error DFA */
typedef struct agc_info agc_info;             /* interface specification */
typedef struct agc_lts agc_lts;               /* labeled transition system */
typedef struct agc_assumption agc_assumption; /* assumption outcome */

/* Pipeline configuration. Zero-initialize, then override fields. */
typedef struct agc_options {
  size_t state_cap;        /* 0 = default (1,000,000) */
  long infm_capacity;      /* <= 0 = default (derived from the open model) */
  int trace_pipeline;      /* nonzero: record intermediate LTSs */
  const char* trace_dir;   /* where to write them (may be NULL) */
} agc_options;

/* Last error message for the calling thread ("" when none). */
const char* agc_last_error(void);

void agc_string_free(char* s);

/* --- models -------------------------------------------------------------- */

agc_model* agc_model_parse(const char* source);
void agc_model_free(agc_model* m);

/* Well-formedness. allow_unknown nonzero permits exactly one undeclared
 * send target (the missing component of an open system). Returns 0 when
 * well-formed, 1 when diagnostics were produced (written to *diagnostics
 * when non-NULL), negative on error. */
int agc_model_check(const agc_model* m, int allow_unknown, char** diagnostics);

/* Canonical source form. */
char* agc_model_pretty(const agc_model* m);

/* --- safety properties and interface specs ------------------------------- */

agc_perr* agc_perr_parse(const char* text);
void agc_perr_free(agc_perr* p);

/* Parses and validates against the open model (response lengths, targets,
 * the unique undeclared receiver). */
agc_info* agc_info_parse(const char* text, const agc_model* open_model);
void agc_info_free(agc_info* i);

/* Non-fatal findings from parsing, one per line ("" when none). */
char* agc_info_warnings(const agc_info* i);

/* --- transition systems --------------------------------------------------- */

agc_lts* agc_lts_explore(const agc_model* m, const agc_options* opt);
agc_lts* agc_lts_compose(const agc_model* m, const agc_perr* p,
                         const agc_options* opt);
agc_lts* agc_lts_read_aut(const char* path);
void agc_lts_free(agc_lts* l);

long agc_lts_num_states(const agc_lts* l);
long agc_lts_num_transitions(const agc_lts* l);

/* Writes .aut plus a .meta sidecar when pi/theta are present. */
int agc_lts_write_aut(const agc_lts* l, const char* path);
int agc_lts_write_dot(const agc_lts* l, const char* path);

/* --- assumption generation ------------------------------------------------ */

enum {
  AGC_ASSUME_ALWAYS_HOLDS = 0,
  AGC_ASSUME_NEVER_HOLDS = 1,
  AGC_ASSUME_ASSUMPTION = 2
};

/* Runs the full pipeline. infm_override may be NULL; when given, its first
 * actor replaces the synthesized interface actor. */
agc_assumption* agc_assume(const agc_model* open_model, const agc_info* info,
                           const agc_perr* perr, const agc_model* infm_override,
                           const agc_options* opt);
void agc_assumption_free(agc_assumption* a);

int agc_assumption_kind(const agc_assumption* a);
long agc_assumption_num_states(const agc_assumption* a);
long agc_assumption_num_transitions(const agc_assumption* a);

/* Writes .aut + .meta including the alphabet= line. Only valid for kind
 * AGC_ASSUME_ASSUMPTION. */
int agc_assumption_write(const agc_assumption* a, const char* path);

/* Reads an assumption written by agc_assumption_write. */
agc_assumption* agc_assumption_load(const char* aut_path);

/* --- component checking --------------------------------------------------- */

enum {
  AGC_CHECK_ACCEPTED = 0,
  AGC_CHECK_REJECTED_NONCOMPLIANT = 1,
  AGC_CHECK_REJECTED_TRACE_ESCAPE = 2
};

/* The first actor of component_model is the candidate M. On rejection the
 * violation report or counterexample trace is written to *detail when
 * non-NULL. Returns a verdict code or negative on error. */
int agc_check(const agc_model* component_model, const agc_model* open_model,
              const agc_info* info, const agc_assumption* assumption,
              const agc_options* opt, char** detail);

/* Monolithic verification of a closed model: 0 = property holds,
 * 1 = violated (shortest witness written to *witness when non-NULL),
 * negative on error. */
int agc_verify(const agc_model* closed_model, const agc_perr* perr,
               const agc_options* opt, char** witness);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AGCHECK_AGCHECK_H_ */
