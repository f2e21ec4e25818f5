#ifndef TRUTHFUL_ARCH_H
#define TRUTHFUL_ARCH_H

/* Generated by cbindgen from truthful-arch-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every API call.
typedef enum TaStatus {
  TA_STATUS_OK = 0,
  TA_STATUS_NULL_POINTER = 1,
  TA_STATUS_INVALID_UTF8 = 2,
  TA_STATUS_PARSE_ERROR = 3,
  TA_STATUS_VALIDATION_ERROR = 4,
  TA_STATUS_MECHANISM_ERROR = 5,
  TA_STATUS_SEARCH_ERROR = 6,
  TA_STATUS_SCAN_ERROR = 7,
  TA_STATUS_INVALID_ARGUMENT = 8,
  TA_STATUS_INTERNAL_ERROR = 9,
} TaStatus;

// Opaque validated scenario handle.
typedef struct TaScenario TaScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Detail of the most recent error on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *ta_last_error_message(void);

// Parses and validates a scenario JSON document into a handle. On
// success writes the handle to `out`; free it with [`ta_scenario_free`].
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be a valid
// pointer to a pointer slot.
enum TaStatus ta_scenario_from_json(const char *json, struct TaScenario **out);

// Releases a scenario handle. NULL is a no-op.
//
// # Safety
// `scenario` must be NULL or a pointer returned by
// [`ta_scenario_from_json`] that has not been freed yet.
void ta_scenario_free(struct TaScenario *scenario);

// Releases a string returned by this library. NULL is a no-op.
//
// # Safety
// `text` must be NULL or a string returned by this library that has not
// been freed yet.
void ta_string_free(char *text);

// Serializes the scenario back to its canonical JSON document.
//
// # Safety
// `scenario` must be a live handle; `out_json` a valid pointer slot. The
// returned string must be freed with [`ta_string_free`].
enum TaStatus ta_scenario_to_json(const struct TaScenario *scenario, char **out_json);

// Applies a mechanism (`cbam`, `dictatorial-cbam`, `dictator`, `vcg`;
// dictator index −1 when unused) and returns the outcome as JSON. For
// VCG the outcome carries a `trace` object with the per-stakeholder
// totals. `reported_basis` switches net benefits to the reported matrix.
//
// # Safety
// `scenario` must be a live handle, `mechanism` a valid NUL-terminated
// string, `out_json` a valid pointer slot. Free the result with
// [`ta_string_free`].
enum TaStatus ta_select(const struct TaScenario *scenario,
                        const char *mechanism,
                        int32_t dictator,
                        bool reported_basis,
                        char **out_json);

// Searches for profitable misreports by the listed manipulators.
// `objective`: 0 benefit, 1 net benefit, any negative value for the
// mechanism default. `grid_step`: decimal string, NULL for the default
// of 10. `budget`: candidate cap, 0 for the default.
//
// # Safety
// `scenario` must be a live handle; `mechanism` a valid string;
// `manipulators` must point to `manipulator_count` readable indices;
// `grid_step` must be NULL or a valid string; `out_json` a valid pointer
// slot. Free the result with [`ta_string_free`].
enum TaStatus ta_analyze(const struct TaScenario *scenario,
                         const char *mechanism,
                         int32_t dictator,
                         const size_t *manipulators,
                         size_t manipulator_count,
                         int32_t objective,
                         const char *grid_step,
                         uint64_t budget,
                         char **out_json);

// Runs an exhaustive ordinal manipulability scan. `rule` is `plurality`,
// `borda`, or `dictatorship` (with `dictator` ≥ 0); `budget` caps rule
// evaluations, 0 for the default.
//
// # Safety
// `rule` must be a valid NUL-terminated string and `out_json` a valid
// pointer slot. Free the result with [`ta_string_free`].
enum TaStatus ta_gs_scan(const char *rule,
                         size_t voters,
                         size_t alternatives,
                         int32_t dictator,
                         uint64_t budget,
                         char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TRUTHFUL_ARCH_H */
