#ifndef ARTIN_ARTIN_H
#define ARTIN_ARTIN_H

#include <stddef.h>

#if defined(_WIN32)
#  define ARTIN_API __declspec(dllexport)
#else
#  define ARTIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes; artin_run returns the command exit code with the same values. */
typedef enum artin_status {
  ARTIN_OK = 0,
  ARTIN_ERROR = 1,          /* invalid argument, configuration, internal */
  ARTIN_PRECONDITION = 2,   /* hypothesis or precondition not met, stalled */
  ARTIN_PARSE_ERROR = 3,
  ARTIN_CAPACITY_ERROR = 4
} artin_status;

typedef struct artin_session artin_session;

ARTIN_API const char* artin_version(void);

ARTIN_API artin_session* artin_session_new(void);
ARTIN_API void artin_session_free(artin_session* s);

/* Parses a problem file. default_field (may be NULL) is used when the file has
   no field line. On failure the message and position are kept for
   artin_last_error / artin_error_line / artin_error_column, and a parse
   failure also leaves an error report for artin_report_json/text. */
ARTIN_API int artin_load_problem(artin_session* s, const char* text, const char* default_field);

/* Overrides: "precision", "target_order", "strategy", "seed". */
ARTIN_API int artin_set_option(artin_session* s, const char* key, const char* value);

/* Runs elkik, colon, groebner, prepare, divide, refine, solve, bounds or probe
   on the loaded problem and returns its exit code. */
ARTIN_API int artin_run(artin_session* s, const char* command);

/* Reports of the last run; owned by the session, valid until the next call. */
ARTIN_API const char* artin_report_json(const artin_session* s);
ARTIN_API const char* artin_report_text(const artin_session* s);
ARTIN_API const char* artin_report_status(const artin_session* s);
ARTIN_API double artin_report_seconds(const artin_session* s);

/* Empty string when the last call succeeded. Line and column are 0 when the
   error has no source position. */
ARTIN_API const char* artin_last_error(const artin_session* s);
ARTIN_API int artin_error_line(const artin_session* s);
ARTIN_API int artin_error_column(const artin_session* s);

/* Checks a JSON report: returns ARTIN_OK, or ARTIN_ERROR with the reason in
   artin_last_error. */
ARTIN_API int artin_revalidate(artin_session* s, const char* json);

#ifdef __cplusplus
}
#endif

#endif
