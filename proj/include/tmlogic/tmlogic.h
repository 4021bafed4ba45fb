#ifndef TMLOGIC_TMLOGIC_H
#define TMLOGIC_TMLOGIC_H

/*
 * C interface to the Thue-Morse decision engine.
 *
 * Every function returns a tml_status. On failure the message is available
 * from tml_last_error() on the calling thread until the next call. Strings
 * returned through char** are owned by the caller and released with
 * tml_string_free(). Handles are released with their *_destroy function;
 * passing NULL to a destroy function is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TML_API __declspec(dllexport)
#else
#define TML_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tml_status {
  TML_OK = 0,
  TML_ERR_INVALID_ARGUMENT,
  TML_ERR_OUT_OF_RANGE,
  TML_ERR_RESOURCE_EXHAUSTED,
  TML_ERR_PARSE,
  TML_ERR_UNKNOWN_PREDICATE,
  TML_ERR_REBINDING,
  TML_ERR_ARITY_MISMATCH,
  TML_ERR_UNBOUND_VARIABLE,
  TML_ERR_UNKNOWN_TRACK,
  TML_ERR_TRACK_MISMATCH,
  TML_ERR_NOT_DETERMINISTIC,
  TML_ERR_STATE_CAP_EXCEEDED,
  TML_ERR_NONCOUNTABLE,
  TML_ERR_INSUFFICIENT,
  TML_ERR_AMBIGUOUS,
  TML_ERR_DISAGREEMENT,
  TML_ERR_IO,
  TML_ERR_INTERNAL
} tml_status;

typedef enum tml_digit_order { TML_LSD = 0, TML_MSD = 1 } tml_digit_order;

typedef enum tml_pattern {
  TML_TM_AS_A = 0,
  TML_TM_AS_B,
  TML_AB,
  TML_BA,
  TML_ABBA,
  TML_BAAB,
  TML_INSUFFICIENT
} tml_pattern;

typedef enum tml_output { TML_HUMAN = 0, TML_MACHINE = 1 } tml_output;

typedef struct tml_config {
  uint64_t window;          /* prefix length scanned by the oracle */
  uint64_t min_occurrences; /* at least 4 */
  uint64_t state_cap;       /* largest intermediate automaton */
  int corrupt_tm_dfao;      /* fault injection: nonzero breaks T */
} tml_config;

typedef struct tml_session tml_session;
typedef struct tml_automaton tml_automaton;
typedef struct tml_linrep tml_linrep;

TML_API const char* tml_version(void);
TML_API const char* tml_status_name(tml_status status);
TML_API const char* tml_last_error(void);
TML_API void tml_string_free(char* s);
TML_API const char* tml_pattern_name(tml_pattern p);

/* Defaults: window 131072, min_occurrences 8, state_cap 1048576. */
TML_API void tml_config_default(tml_config* config);

TML_API tml_status tml_session_create(const tml_config* config, tml_session** out);
TML_API void tml_session_destroy(tml_session* session);

/* Built-in copies of the shipped scripts, e.g. "paper_thm1.wal". */
TML_API tml_status tml_embedded_file(const char* name, char** out_text);

/*
 * Commands. `out_report` receives either the human-readable report or the
 * sorted key=value lines. Script and compile errors come back as status
 * codes; outcomes such as a verdict mismatch are reported through out_ok.
 */
TML_API tml_status tml_prove(tml_session* session, const char* script, const char* expectations,
                             tml_output format, int* out_ok, char** out_report);
TML_API tml_status tml_classify(tml_session* session, uint64_t i, uint64_t n, tml_output format,
                                int* out_ok, char** out_report);
TML_API tml_status tml_count(tml_session* session, uint64_t n_max, tml_output format, int* out_ok,
                             char** out_report);
TML_API tml_status tml_selftest(tml_session* session, int* out_ok, char** out_report);

/* One of "abpat", "bapat", "abbapat", "baabpat" over tracks (i, n). */
TML_API tml_status tml_pattern_automaton(tml_session* session, const char* name, tml_automaton** out);
TML_API tml_status tml_classify_oracle(tml_session* session, uint64_t i, uint64_t n, tml_pattern* out);
/* n >= 2 */
TML_API tml_status tml_classify_automaton(tml_session* session, uint64_t i, uint64_t n, tml_pattern* out);

/*
 * Compiles `formula` after running the defs and evals of `prelude` (may be
 * NULL). Tracks are the free variables in alphabetical order.
 */
TML_API tml_status tml_compile(tml_session* session, const char* prelude, const char* formula,
                               tml_automaton** out);
/* Truth value of a sentence; free variables are an error. */
TML_API tml_status tml_decide(tml_session* session, const char* prelude, const char* sentence,
                              int* out_truth);

TML_API void tml_automaton_destroy(tml_automaton* a);
TML_API tml_status tml_automaton_state_count(const tml_automaton* a, uint64_t* out);
TML_API tml_status tml_automaton_arity(const tml_automaton* a, uint64_t* out);
TML_API tml_status tml_automaton_track(const tml_automaton* a, uint64_t index, char** out_name);
/* One value per track, in track order. */
TML_API tml_status tml_automaton_accepts(const tml_automaton* a, const uint64_t* values, size_t count,
                                         int* out);
TML_API tml_status tml_automaton_dot(const tml_automaton* a, tml_digit_order order, char** out_dot);
/* Line-oriented snapshot text; MSD reverses the automaton first. */
TML_API tml_status tml_automaton_text(const tml_automaton* a, tml_digit_order order, char** out_text);

/* "mab" or "mabba" from the built-in counting script; LSD. */
TML_API tml_status tml_counting_representation(tml_session* session, const char* name, tml_linrep** out);
/* "a006165", "a060973", "f_shifted" or "g_shifted"; MSD. */
TML_API tml_status tml_builtin_representation(const char* name, tml_linrep** out);
TML_API tml_status tml_linrep_parse(const char* text, tml_linrep** out);
TML_API void tml_linrep_destroy(tml_linrep* r);
TML_API tml_status tml_linrep_text(const tml_linrep* r, char** out_text);
TML_API tml_status tml_linrep_dim(const tml_linrep* r, uint64_t* out);
TML_API tml_status tml_linrep_order(const tml_linrep* r, tml_digit_order* out);
/* Exact value at n as "p" or "p/q". */
TML_API tml_status tml_linrep_evaluate(const tml_linrep* r, uint64_t n, char** out_value);
TML_API tml_status tml_linrep_scale(const tml_linrep* r, int64_t numerator, int64_t denominator,
                                    tml_linrep** out);
/* a - b; b is reversed first when the digit orders differ. */
TML_API tml_status tml_linrep_subtract(const tml_linrep* a, const tml_linrep* b, tml_linrep** out);
TML_API tml_status tml_linrep_reverse(const tml_linrep* r, tml_linrep** out);
TML_API tml_status tml_linrep_minimize(const tml_linrep* r, tml_linrep** out);
TML_API tml_status tml_linrep_equal(const tml_linrep* a, const tml_linrep* b, int* out);

#ifdef __cplusplus
}
#endif

#endif
