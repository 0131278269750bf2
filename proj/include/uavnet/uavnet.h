/* C interface to the uavnet simulator. All functions return a status code;
 * on failure uavnet_last_error() describes the problem (thread-local). */
#ifndef UAVNET_UAVNET_H
#define UAVNET_UAVNET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(UAVNET_BUILDING)
#    define UAVNET_API __declspec(dllexport)
#  else
#    define UAVNET_API __declspec(dllimport)
#  endif
#else
#  define UAVNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavnet_status {
  UAVNET_OK = 0,
  UAVNET_ERR_INVALID_ARGUMENT = 1,
  UAVNET_ERR_CONFIG = 2,
  UAVNET_ERR_IO = 3,
  UAVNET_ERR_INFEASIBLE = 4,
  UAVNET_ERR_INTERNAL = 5
} uavnet_status;

typedef struct uavnet_scenario uavnet_scenario;
typedef struct uavnet_run uavnet_run;
typedef struct uavnet_grid uavnet_grid;

typedef struct uavnet_metrics {
  int slot;
  double unserved_pct;
  double delay_sd_s;
  double total_bits;
  double energy_j;
  double ee_bits_per_j; /* valid only when ee_defined != 0 */
  int ee_defined;
} uavnet_metrics;

typedef struct uavnet_summary {
  double mean_unserved_pct;
  double final_delay_sd_s;
  double total_bits;
  double energy_j;
  double ee_bits_per_j;
  int ee_defined;
} uavnet_summary;

UAVNET_API const char* uavnet_last_error(void);
UAVNET_API const char* uavnet_version(void);

/* Scenario */
UAVNET_API uavnet_status uavnet_scenario_create(uavnet_scenario** out);
UAVNET_API uavnet_status uavnet_scenario_load(const char* path, uavnet_scenario** out);
UAVNET_API uavnet_status uavnet_scenario_parse(const char* json_text, uavnet_scenario** out);
UAVNET_API uavnet_status uavnet_scenario_clone(const uavnet_scenario* s, uavnet_scenario** out);
UAVNET_API void uavnet_scenario_destroy(uavnet_scenario* s);
/* Dotted key such as "channel.alpha_db"; value is JSON or a bare string. */
UAVNET_API uavnet_status uavnet_scenario_set(uavnet_scenario* s, const char* key, const char* value);
UAVNET_API uavnet_status uavnet_scenario_set_seed(uavnet_scenario* s, uint64_t seed);
UAVNET_API uavnet_status uavnet_scenario_get_seed(const uavnet_scenario* s, uint64_t* seed);
UAVNET_API uavnet_status uavnet_scenario_save(const uavnet_scenario* s, const char* path);

/* Runs. `algorithm` is "proposed", "bt" or "balanced"; NULL uses the
 * scenario's own algorithm. */
UAVNET_API uavnet_status uavnet_simulate(const uavnet_scenario* s, const char* algorithm,
                                         uavnet_run** out);
/* Runs a comma-separated algorithm list on one shared world; fills
 * `runs[0..count)` where count is the list length (at most `capacity`). */
UAVNET_API uavnet_status uavnet_compare(const uavnet_scenario* s, const char* algorithms,
                                        uavnet_run** runs, size_t capacity, size_t* count);
UAVNET_API void uavnet_run_destroy(uavnet_run* r);
UAVNET_API uavnet_status uavnet_run_algorithm(const uavnet_run* r, const char** name);
UAVNET_API uavnet_status uavnet_run_slot_count(const uavnet_run* r, size_t* count);
UAVNET_API uavnet_status uavnet_run_metrics(const uavnet_run* r, size_t index, uavnet_metrics* out);
UAVNET_API uavnet_status uavnet_run_summary(const uavnet_run* r, uavnet_summary* out);
/* CSV output. `append` != 0 appends rows without a header. */
UAVNET_API uavnet_status uavnet_run_write_metrics(const uavnet_run* r, const char* path, int append);
UAVNET_API uavnet_status uavnet_write_relocations(const uavnet_run* const* runs, size_t count,
                                                  const char* path);
UAVNET_API uavnet_status uavnet_write_assignments(const uavnet_run* const* runs, size_t count,
                                                  const char* path);

/* City grid */
UAVNET_API uavnet_status uavnet_grid_generate(const uavnet_scenario* s, uavnet_grid** out);
UAVNET_API uavnet_status uavnet_grid_load(const char* path, uavnet_grid** out);
UAVNET_API uavnet_status uavnet_grid_save(const uavnet_grid* g, const char* path);
UAVNET_API void uavnet_grid_destroy(uavnet_grid* g);
UAVNET_API uavnet_status uavnet_grid_dims(const uavnet_grid* g, size_t* cols, size_t* rows,
                                          double* cell_size);
/* xyz arrays of three doubles; *los receives 1 for line of sight, else 0. */
UAVNET_API uavnet_status uavnet_grid_los(const uavnet_grid* g, const double uav[3],
                                         const double user[3], int* los);

/* Minimum-cost perfect matching on a row-major n x n matrix; +inf or NaN
 * entries are unreachable. col_of_row receives n entries. */
UAVNET_API uavnet_status uavnet_min_cost_matching(const double* cost, size_t n,
                                                  size_t* col_of_row, double* total);

#ifdef __cplusplus
}
#endif

#endif /* UAVNET_UAVNET_H */
