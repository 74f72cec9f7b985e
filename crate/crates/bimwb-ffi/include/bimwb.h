#ifndef BIMWB_H
#define BIMWB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every catalogue call.
 */
typedef enum {
  /**
   * The call succeeded.
   */
  BIMWB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  BIMWB_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  BIMWB_STATUS_INVALID_UTF8 = 2,
  /**
   * The entry identifier names no catalogue entry.
   */
  BIMWB_STATUS_UNKNOWN_ENTRY = 3,
  /**
   * The instance does not fit the entry's signature.
   */
  BIMWB_STATUS_SIGNATURE_MISMATCH = 4,
  /**
   * The transform exceeded its probe budget.
   */
  BIMWB_STATUS_BUDGET_EXCEEDED = 5,
  /**
   * The JSON text did not parse as an instance.
   */
  BIMWB_STATUS_INVALID_JSON = 6,
  /**
   * The index was out of range.
   */
  BIMWB_STATUS_OUT_OF_RANGE = 7,
  /**
   * The library caught an internal panic.
   */
  BIMWB_STATUS_INTERNAL = 8,
} BimwbStatus;

/**
 * An opaque reduction instance.
 */
typedef struct BimwbInstance BimwbInstance;

/**
 * An opaque verification report.
 */
typedef struct BimwbReport BimwbReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Number of entries in the reduction catalogue.
 */
uintptr_t bimwb_registry_len(void);

/**
 * Identifier of the catalogue entry at `index`; the string must be
 * released with `bimwb_string_free`.
 *
 * # Safety
 * `out` must be a valid pointer to a `char*`.
 */
BimwbStatus bimwb_registry_id(uintptr_t index, char **out);

/**
 * Parses a JSON instance into a fresh handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
BimwbStatus bimwb_instance_from_json(const char *json, BimwbInstance **out);

/**
 * Deterministically generates the `index`-th instance of an entry.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
BimwbStatus bimwb_instance_generate(const char *id,
                                    uint64_t seed,
                                    uintptr_t index,
                                    BimwbInstance **out);

/**
 * The instance's canonical hex digest.
 *
 * # Safety
 * `inst` must be a live instance handle and `out` a valid pointer.
 */
BimwbStatus bimwb_instance_digest(const BimwbInstance *inst, char **out);

/**
 * The instance's canonical JSON form.
 *
 * # Safety
 * `inst` must be a live instance handle and `out` a valid pointer.
 */
BimwbStatus bimwb_instance_to_json(const BimwbInstance *inst, char **out);

/**
 * Releases an instance handle; null is ignored.
 *
 * # Safety
 * `inst` must be null or a handle produced by this library, not yet freed.
 */
void bimwb_instance_free(BimwbInstance *inst);

/**
 * Applies a catalogue transform and returns the output's fingerprint
 * (its first sixteen probed values in stable textual form).
 *
 * # Safety
 * `id` must be a NUL-terminated string, `inst` a live instance handle,
 * and `out` a valid pointer.
 */
BimwbStatus bimwb_apply(const char *id, const BimwbInstance *inst, uint64_t budget, char **out);

/**
 * Verifies one entry's contract on an instance and returns a report
 * handle.
 *
 * # Safety
 * `id` must be a NUL-terminated string, `inst` a live instance handle,
 * and `out` a valid pointer.
 */
BimwbStatus bimwb_verify(const char *id,
                         const BimwbInstance *inst,
                         uintptr_t depth,
                         uint64_t seed,
                         BimwbReport **out);

/**
 * Whether the report found no counterexample.
 *
 * # Safety
 * `report` must be a live report handle.
 */
bool bimwb_report_passed(const BimwbReport *report);

/**
 * The report as a one-line structured text record.
 *
 * # Safety
 * `report` must be a live report handle and `out` a valid pointer.
 */
BimwbStatus bimwb_report_line(const BimwbReport *report, char **out);

/**
 * Releases a report handle; null is ignored.
 *
 * # Safety
 * `report` must be null or a handle produced by this library, not yet freed.
 */
void bimwb_report_free(BimwbReport *report);

/**
 * Releases a string produced by this library; null is ignored.
 *
 * # Safety
 * `text` must be null or a string produced by this library, not yet freed.
 */
void bimwb_string_free(char *text);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BIMWB_H */
