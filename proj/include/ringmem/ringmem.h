#ifndef RINGMEM_RINGMEM_H
#define RINGMEM_RINGMEM_H

/* C interface to the ring-BEC quantum memory engine.
 *
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function.  Functions returning ringmem_status leave a message for
 * ringmem_last_error() on failure (per thread).  Strings returned by accessors
 * stay valid until the owning handle is freed. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RINGMEM_BUILDING_LIBRARY)
#    define RINGMEM_API __declspec(dllexport)
#  else
#    define RINGMEM_API __declspec(dllimport)
#  endif
#else
#  define RINGMEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 0, 2, 3 and 4 double as process exit codes. */
typedef enum ringmem_status {
  RINGMEM_OK = 0,
  RINGMEM_ERROR_CONFIG = 2,
  RINGMEM_ERROR_PARTIAL = 3,
  RINGMEM_ERROR_PROPAGATION = 4,
  RINGMEM_ERROR_INVALID_ARGUMENT = 5,
  RINGMEM_ERROR_IO = 6,
  RINGMEM_ERROR_INTERNAL = 7
} ringmem_status;

typedef struct ringmem_config ringmem_config;
typedef struct ringmem_manifest ringmem_manifest;
typedef struct ringmem_result ringmem_result;

RINGMEM_API const char* ringmem_version(void);
RINGMEM_API const char* ringmem_last_error(void);

RINGMEM_API size_t ringmem_profile_count(void);
/* NULL when index is out of range. */
RINGMEM_API const char* ringmem_profile_name(size_t index);

/* profile may be NULL or empty to keep the one named in the document. */
RINGMEM_API ringmem_status ringmem_config_load(const char* path, const char* profile,
                                               ringmem_config** out);
RINGMEM_API ringmem_status ringmem_config_parse(const char* text, const char* profile,
                                                ringmem_config** out);
RINGMEM_API size_t ringmem_config_point_count(const ringmem_config* config);
RINGMEM_API const char* ringmem_config_digest(const ringmem_config* config);
RINGMEM_API const char* ringmem_config_profile(const ringmem_config* config);
/* Fully resolved configuration as JSON text. */
RINGMEM_API const char* ringmem_config_json(const ringmem_config* config);
RINGMEM_API void ringmem_config_free(ringmem_config* config);

/* Runs every sweep point and writes outputs under out_dir.  workers = 0 uses
 * the hardware concurrency.  Returns RINGMEM_OK, RINGMEM_ERROR_PARTIAL or
 * RINGMEM_ERROR_PROPAGATION after a completed run (the manifest is set in all
 * three cases), or an error code with *out left NULL. */
RINGMEM_API ringmem_status ringmem_run(const ringmem_config* config, const char* out_dir,
                                       unsigned workers, uint64_t seed,
                                       ringmem_manifest** out);
RINGMEM_API int ringmem_manifest_exit_code(const ringmem_manifest* manifest);
RINGMEM_API const char* ringmem_manifest_status(const ringmem_manifest* manifest);
RINGMEM_API size_t ringmem_manifest_point_count(const ringmem_manifest* manifest);
RINGMEM_API size_t ringmem_manifest_failed_count(const ringmem_manifest* manifest);
RINGMEM_API double ringmem_manifest_wall_time(const ringmem_manifest* manifest);
RINGMEM_API size_t ringmem_manifest_output_count(const ringmem_manifest* manifest);
RINGMEM_API const char* ringmem_manifest_output(const ringmem_manifest* manifest, size_t index);
RINGMEM_API const char* ringmem_manifest_json(const ringmem_manifest* manifest);
RINGMEM_API void ringmem_manifest_free(ringmem_manifest* manifest);

/* Runs a single sweep point in process without writing files. */
RINGMEM_API ringmem_status ringmem_protocol_run(const ringmem_config* config, size_t point_index,
                                                ringmem_result** out);
RINGMEM_API double ringmem_result_fidelity(const ringmem_result* result);
/* Writes the value and returns 1 when the scenario defines it, else 0. */
RINGMEM_API int ringmem_result_log_negativity(const ringmem_result* result, double* value);
RINGMEM_API int ringmem_result_wigner_min(const ringmem_result* result, double* value);
RINGMEM_API double ringmem_result_classical_bound(const ringmem_result* result);
RINGMEM_API void ringmem_result_times(const ringmem_result* result, double* t_off, double* t_on,
                                      double* t_read);
RINGMEM_API int ringmem_result_constraints_ok(const ringmem_result* result);
RINGMEM_API void ringmem_result_free(ringmem_result* result);

/* (N + 1) / (N + 2) for N stored qubits. */
RINGMEM_API double ringmem_bound_qubit_memory(int qubits);
/* 2 / (d + 1) for a d-dimensional teleported state. */
RINGMEM_API double ringmem_bound_teleport(int dimension);

#ifdef __cplusplus
}
#endif

#endif
