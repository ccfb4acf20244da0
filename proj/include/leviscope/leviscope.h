#ifndef LEVISCOPE_H
#define LEVISCOPE_H

/* C interface to the leviscope library. All handles are opaque; every call
 * returns an lvs_status and leaves a message in lvs_last_error() on failure.
 * Points are passed as 2n doubles in interleaved (x1, y1, ..., xn, yn) order.
 * Strings returned through char** are owned by the caller (lvs_free_string). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LVS_API __declspec(dllexport)
#else
#define LVS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvs_status {
  LVS_OK = 0,
  LVS_INVALID_INPUT = 1,
  LVS_DOMAIN_SINGULARITY = 2,
  LVS_UNSUPPORTED_OPERATION = 3,
  LVS_SAMPLING_FAILURE = 4,
  LVS_FOOT_POINT_FAILURE = 5,
  LVS_OUT_OF_COLLAR = 6,
  LVS_ILL_CONDITIONED_STEP = 7,
  LVS_WRONG_SIDE = 8,
  LVS_INVALID_DIRECTION = 9,
  LVS_CURVATURE_LIMIT = 10,
  LVS_USAGE = 11,
  LVS_IO = 12,
  LVS_INTERNAL = 99
} lvs_status;

typedef struct lvs_domain lvs_domain;
typedef struct lvs_config lvs_config;
typedef struct lvs_report lvs_report;

LVS_API const char* lvs_version(void);
LVS_API const char* lvs_last_error(void);
LVS_API const char* lvs_status_name(lvs_status status);
LVS_API void lvs_free_string(char* s);
LVS_API lvs_status lvs_set_max_threads(unsigned threads);

/* Domains */
LVS_API lvs_status lvs_domain_create(const char* id, lvs_domain** out);
LVS_API void lvs_domain_destroy(lvs_domain* domain);
LVS_API lvs_status lvs_domain_id(const lvs_domain* domain, char** out);
LVS_API int lvs_domain_dimension(const lvs_domain* domain);
LVS_API double lvs_domain_collar_width(const lvs_domain* domain);
/* value, gradient[2n], hessian[2n*2n] row-major; gradient/hessian may be NULL */
LVS_API lvs_status lvs_domain_evaluate(const lvs_domain* domain, const double* z, double* value,
                                       double* gradient, double* hessian);
/* points must hold count*2n doubles; *produced receives the number written */
LVS_API lvs_status lvs_domain_boundary_sample(const lvs_domain* domain, int count, uint64_t seed,
                                              double* points, int* produced);
LVS_API lvs_status lvs_domain_weak_locus_sample(const lvs_domain* domain, int count, uint64_t seed,
                                                double* points);
LVS_API lvs_status lvs_signed_distance(const lvs_domain* domain, const double* z, double* distance,
                                       double* foot);
/* Eigenvalues of the Levi form on the complex tangent space at a boundary
 * point, ascending; eigenvalues must hold n-1 doubles. */
LVS_API lvs_status lvs_levi_eigenvalues(const lvs_domain* domain, const double* p,
                                        double* eigenvalues, int* null_dim);

/* Suite configuration */
LVS_API lvs_status lvs_config_create(const char* domain_id, lvs_config** out);
LVS_API void lvs_config_destroy(lvs_config* config);
LVS_API lvs_status lvs_config_set_suite(lvs_config* config, const char* suite);
LVS_API lvs_status lvs_config_set_eps(lvs_config* config, const char* grid);
LVS_API lvs_status lvs_config_set_samples(lvs_config* config, int samples);
LVS_API lvs_status lvs_config_set_seed(lvs_config* config, uint64_t seed);
LVS_API lvs_status lvs_config_set_tolerance(lvs_config* config, const char* key, double value);
LVS_API lvs_status lvs_config_set_format(lvs_config* config, const char* format);

/* Reports */
LVS_API lvs_status lvs_run_suite(const lvs_config* config, lvs_report** out);
LVS_API void lvs_report_destroy(lvs_report* report);
LVS_API int lvs_report_all_hard_passed(const lvs_report* report);
LVS_API size_t lvs_report_row_count(const lvs_report* report);
LVS_API lvs_status lvs_report_json(const lvs_report* report, int include_wall_time, char** out);
LVS_API lvs_status lvs_report_csv(const lvs_report* report, char** out);
LVS_API lvs_status lvs_report_summary(const lvs_report* report, char** out);
LVS_API lvs_status lvs_report_write(const lvs_report* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif
