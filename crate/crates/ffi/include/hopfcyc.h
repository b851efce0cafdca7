#ifndef HOPFCYC_H
#define HOPFCYC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum HcStatus {
  /**
   * Success.
   */
  HcOk = 0,
  /**
   * A required pointer argument was null.
   */
  HcErrNull = 1,
  /**
   * An input string was not valid UTF-8.
   */
  HcErrUtf8 = 2,
  /**
   * The session text failed to parse; see `hc_last_error`.
   */
  HcErrParse = 3,
  /**
   * No built-in fixture with the given name.
   */
  HcErrUnknownFixture = 4,
  /**
   * A command failed to run; see `hc_last_error`.
   */
  HcErrRun = 5,
} HcStatus;

/**
 * The outcome of a command: an ordered, deterministic record collection.
 */
typedef struct HcReport HcReport;

/**
 * A parsed session specification.
 */
typedef struct HcSession HcSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The thread-local message describing the most recent failure.  The
 * pointer stays valid until the next failing call on the same thread; do
 * not free it.
 */
const char *hc_last_error(void);

/**
 * Parse a session file held in `text` into a new session handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HcStatus hc_session_parse(const char *text, struct HcSession **out);

/**
 * Create a session handle from a built-in fixture name.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HcStatus hc_session_from_fixture(const char *name, struct HcSession **out);

/**
 * Render the canonical text form of a session.
 *
 * # Safety
 * `session` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_session_print(const struct HcSession *session, char **out);

/**
 * Release a session handle.
 *
 * # Safety
 * `session` must be a handle from this library or null; it must not be
 * used afterwards.
 */
void hc_session_free(struct HcSession *session);

/**
 * Run the session's requested axiom checkers.
 *
 * # Safety
 * `session` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_verify(const struct HcSession *session,
                        uint32_t max_degree,
                        uint64_t seed,
                        struct HcReport **out);

/**
 * Compute the periodic Lie-algebra cohomology of the session's module.
 *
 * # Safety
 * `session` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_cohomology(const struct HcSession *session, struct HcReport **out);

/**
 * Transport the session's Tot-complex element through Alexander–Whitney
 * and Ψ.
 *
 * # Safety
 * `session` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_transport(const struct HcSession *session, struct HcReport **out);

/**
 * 1 if every record in the report passed, 0 otherwise (0 for null).
 *
 * # Safety
 * `report` must be a live handle or null.
 */
int32_t hc_report_passed(const struct HcReport *report);

/**
 * The dimensions of HP⁰/HP¹ for a cohomology report; `HcErrRun` for other
 * report kinds.
 *
 * # Safety
 * All pointers must be valid.
 */
enum HcStatus hc_report_hp_dims(const struct HcReport *report, uint32_t *hp0, uint32_t *hp1);

/**
 * The human-readable text of a report.
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_report_text(const struct HcReport *report, char **out);

/**
 * The machine-readable JSON of a report (stable schema).
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_report_json(const struct HcReport *report, char **out);

/**
 * Release a report handle.
 *
 * # Safety
 * `report` must be a handle from this library or null; it must not be
 * used afterwards.
 */
void hc_report_free(struct HcReport *report);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a string from this library or null; it must not be used
 * afterwards.
 */
void hc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPFCYC_H */
