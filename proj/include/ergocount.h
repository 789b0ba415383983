/* C interface to the ergocount counting laboratory.
 *
 * All functions return an ergo_status; results come back through out
 * parameters.  Objects are opaque handles created and destroyed through
 * this interface.  On failure a thread-local message with the details is
 * available from ergo_last_error_message().
 */

#ifndef ERGOCOUNT_H
#define ERGOCOUNT_H

#include <stddef.h>
#include <stdint.h>

#ifndef ERGO_API
#define ERGO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ergo_status {
  ERGO_OK = 0,
  ERGO_ERROR_INVALID_ARGUMENT = 1,
  ERGO_ERROR_BUDGET_EXCEEDED = 2,
  ERGO_ERROR_IO = 3,
  ERGO_ERROR_PARSE = 4,
  ERGO_ERROR_INTERNAL = 5
} ergo_status;

ERGO_API const char* ergo_version(void);
ERGO_API const char* ergo_status_name(ergo_status status);

/* Message for the most recent failure on the calling thread; empty string
 * if none.  The pointer stays valid until the next failing call on the
 * same thread. */
ERGO_API const char* ergo_last_error_message(void);

/* First-principles constants. */
ERGO_API ergo_status ergo_ball_volume(int k, double* out);
ERGO_API ergo_status ergo_sphere_area(int k, double* out);
ERGO_API ergo_status ergo_zeta(int d, double* out);

/* Closed-form volume of the shell |x|^m |y|^n <= b, y_lo <= |y| < y_hi. */
ERGO_API ergo_status ergo_region_volume(double b, int m, int n, double y_lo,
                                        double y_hi, double* out);

/* ------------------------------------------------------------------ */
/* Scenarios and reports                                              */
/* ------------------------------------------------------------------ */

typedef struct ergo_scenario ergo_scenario;
typedef struct ergo_report ergo_report;

/* experiment is one of: forms, affine-forms, toral, lattice,
 * affine-lattice, siegel, origami, volume-check.  Returns NULL for an
 * unknown experiment name. */
ERGO_API ergo_scenario* ergo_scenario_create(const char* experiment);
ERGO_API void ergo_scenario_destroy(ergo_scenario* scenario);

/* Loads a scenario from a flat TOML file of key = value lines. */
ERGO_API ergo_status ergo_scenario_load_file(const char* path,
                                             ergo_scenario** out);

/* Keys: m, n, log2T, N, samples, seed, threads (int); b (real);
 * experiment, origami_file, theta, target, format, out (string);
 * primitive, distinct_holonomies (flag). */
ERGO_API ergo_status ergo_scenario_set_int(ergo_scenario* scenario,
                                           const char* key, int64_t value);
ERGO_API ergo_status ergo_scenario_set_real(ergo_scenario* scenario,
                                            const char* key, double value);
ERGO_API ergo_status ergo_scenario_set_string(ergo_scenario* scenario,
                                              const char* key,
                                              const char* value);
ERGO_API ergo_status ergo_scenario_set_flag(ergo_scenario* scenario,
                                            const char* key, int value);

/* Reads a string-valued key ("out", "format", "experiment", ...) into the
 * caller's buffer, truncating if needed; the result is NUL-terminated. */
ERGO_API ergo_status ergo_scenario_get_string(const ergo_scenario* scenario,
                                              const char* key, char* buffer,
                                              size_t buffer_size);

/* Runs the scenario.  On success *out holds a new report.  If the run
 * exhausts a candidate budget, returns ERGO_ERROR_BUDGET_EXCEEDED and
 * *out holds the partial report produced so far (possibly with zero
 * rows); on any other failure *out is NULL. */
ERGO_API ergo_status ergo_scenario_run(const ergo_scenario* scenario,
                                       ergo_report** out);

ERGO_API void ergo_report_destroy(ergo_report* report);
ERGO_API size_t ergo_report_row_count(const ergo_report* report);

/* Summary statistic by key (final_ratio, slope, per_block_mean,
 * normalizer, ...); ERGO_ERROR_INVALID_ARGUMENT if the report does not
 * carry the key. */
ERGO_API ergo_status ergo_report_summary(const ergo_report* report,
                                         const char* key, double* out);

/* Renders to "csv" or "json".  *out receives a NUL-terminated buffer
 * owned by the caller; release it with ergo_buffer_free. */
ERGO_API ergo_status ergo_report_render(const ergo_report* report,
                                        const char* format, char** out);
ERGO_API ergo_status ergo_report_write_file(const ergo_report* report,
                                            const char* format,
                                            const char* path);
ERGO_API void ergo_buffer_free(char* buffer);

#ifdef __cplusplus
}
#endif

#endif /* ERGOCOUNT_H */
