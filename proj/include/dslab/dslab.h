/*
 * Copyright (c) 2026 The dslab authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * dslab — deleting-items partial-sum statistics laboratory, C API.
 *
 * The library studies the partial sum of n i.i.d. (or independent) draws
 * after deleting k (or k(n)) of the items: sampling catalogs with exact
 * moments, deletion schedules/policies, the deleting-items mean and variance
 * estimators with their exact expectations, numeric checks of the Lindeberg/
 * Lyapunov/Feller hypotheses, exact small-instance enumeration, and a seeded
 * Monte Carlo experiment driver with byte-deterministic artifacts.
 *
 * Conventions:
 *  - every fallible function returns dslab_status; on failure
 *    dslab_last_error() holds a message (thread-local);
 *  - objects are opaque handles with _create/_destroy pairs;
 *  - specs (distributions, plans, arrays, laws, experiment configs) are JSON
 *    strings; schemas are documented in the project README;
 *  - indices are 0-based;
 *  - all randomness is derived from explicit 64-bit seeds; equal seeds give
 *    bit-identical results for any worker count.
 */

#ifndef DSLAB_H
#define DSLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DSLAB_BUILD)
#define DSLAB_API __declspec(dllexport)
#else
#define DSLAB_API __declspec(dllimport)
#endif
#else
#define DSLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dslab_status {
  DSLAB_OK = 0,
  DSLAB_ERR_INVALID_ARGUMENT = 1,
  DSLAB_ERR_VALIDATION = 2,   /* config/spec rejected */
  DSLAB_ERR_PRECONDITION = 3, /* numeric precondition (e.g. infinite variance) */
  DSLAB_ERR_OVERFLOW = 4,     /* enumeration state space too large */
  DSLAB_ERR_INTERNAL = 5
} dslab_status;

DSLAB_API const char* dslab_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
DSLAB_API const char* dslab_last_error(void);

/* Frees strings returned through char** out-parameters. */
DSLAB_API void dslab_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Distributions                                                      */
/* ------------------------------------------------------------------ */

typedef struct dslab_dist dslab_dist;

/* spec example: {"family":"bernoulli","p":0.5} */
DSLAB_API dslab_status dslab_dist_create(const char* json_spec, dslab_dist** out);
DSLAB_API void dslab_dist_destroy(dslab_dist* dist);

DSLAB_API dslab_status dslab_dist_mean(const dslab_dist* dist, double* out);
DSLAB_API dslab_status dslab_dist_variance(const dslab_dist* dist, double* out);

/* n i.i.d. draws into out[0..n); deterministic in (spec, n, seed). */
DSLAB_API dslab_status dslab_dist_sample(const dslab_dist* dist, uint64_t n, uint64_t seed,
                                         double* out);

/* E[(xi-mu)^2 1{|xi-mu| > t}] and E|xi-mu|^order (order > 2). */
DSLAB_API dslab_status dslab_dist_truncated_second_moment(const dslab_dist* dist, double t,
                                                          double* out);
DSLAB_API dslab_status dslab_dist_abs_central_moment(const dslab_dist* dist, double order,
                                                     double* out);

/* ------------------------------------------------------------------ */
/* Deletion plans                                                     */
/* ------------------------------------------------------------------ */

typedef struct dslab_plan dslab_plan;

/* spec example: {"schedule":{"kind":"power","r":0.5},"policy":"prefix"} */
DSLAB_API dslab_status dslab_plan_create(const char* json_spec, dslab_plan** out);
DSLAB_API void dslab_plan_destroy(dslab_plan* plan);

/* k(n), clamped into [0, n). */
DSLAB_API dslab_status dslab_plan_k_of_n(const dslab_plan* plan, uint64_t n, uint64_t* out_k);

typedef enum dslab_negligibility {
  DSLAB_NEGLIGIBLE_LLN_AND_CLT = 0, /* k(n)/sqrt(n) -> 0 */
  DSLAB_NEGLIGIBLE_LLN_ONLY = 1,    /* k(n)/n -> 0 but k(n)/sqrt(n) does not */
  DSLAB_NEGLIGIBLE_VIOLATING = 2    /* k(n)/n does not vanish */
} dslab_negligibility;

DSLAB_API dslab_status dslab_plan_negligibility(const dslab_plan* plan, int* out_class);

/* Writes exactly k ascending 0-based indices to out_indices[0..k). */
DSLAB_API dslab_status dslab_plan_select_indices(const dslab_plan* plan, const double* values,
                                                 uint64_t n, uint64_t k, uint64_t seed,
                                                 uint64_t* out_indices);

/* ------------------------------------------------------------------ */
/* Estimators                                                         */
/* ------------------------------------------------------------------ */

/* All divisors are n (never n-k); the deleting estimators are biased on
 * purpose and the e_* fields below give their exact expectations. */
typedef struct dslab_estimates {
  double xbar;   /* (1/n) sum of all values */
  double s2;     /* (1/n) sum (xi - xbar)^2 */
  double xtilde; /* (1/n) sum over retained */
  double s1t;    /* (1/n) sum over all (xi - xtilde)^2 */
  double s2t;    /* (1/n) sum over retained (xi - xbar)^2 */
  double s3t;    /* (1/n) sum over retained (xi - xtilde)^2 */
  uint64_t n;
  uint64_t k;
} dslab_estimates;

/* deleted_mask[i] != 0 marks index i deleted; at least one index retained. */
DSLAB_API dslab_status dslab_estimator_report(const double* values, const uint8_t* deleted_mask,
                                              uint64_t n, dslab_estimates* out);

/* Residuals of the algebraic expansions of s1t/s2t/s3t (definitional minus
 * expanded form), written to out_residuals[0..2]. */
DSLAB_API dslab_status dslab_expansion_residuals(const double* values,
                                                 const uint8_t* deleted_mask, uint64_t n,
                                                 double* out_residuals);

typedef enum dslab_s3_class {
  DSLAB_S3_BELOW_OR_EQUAL = 0,
  DSLAB_S3_ABOVE = 1,
  DSLAB_S3_MU_ZERO_BELOW = 2
} dslab_s3_class;

typedef struct dslab_bias {
  double e_xtilde;
  double e_s1t;
  double e_s2t;
  double e_s3t;
  double e_s2;
  int s3_class;      /* dslab_s3_class */
  int has_threshold; /* 0 when mu == 0 */
  double threshold;  /* n - (n^2 - 1) sigma2 / mu^2 */
} dslab_bias;

/* Exact expectations for an i.i.d. law with the given mean/variance under an
 * index-blind deletion of k of n items; requires n >= 2, 0 <= k < n. */
DSLAB_API dslab_status dslab_expected_values(uint64_t n, uint64_t k, double mu, double sigma2,
                                             dslab_bias* out);

/* ------------------------------------------------------------------ */
/* Condition checks                                                   */
/* ------------------------------------------------------------------ */

typedef struct dslab_array dslab_array;

/* spec examples: {"kind":"iid","dist":{...}}, {"kind":"cycle","dists":[...]},
 * {"kind":"normal_growing_variance","mu":0,"scale":1} */
DSLAB_API dslab_status dslab_array_create(const char* json_spec, dslab_array** out);
DSLAB_API void dslab_array_destroy(dslab_array* array);

DSLAB_API dslab_status dslab_lindeberg_sum(const dslab_array* array, uint64_t n, double eps,
                                           double* out);
DSLAB_API dslab_status dslab_lyapunov_sum(const dslab_array* array, uint64_t n, double delta,
                                          double* out);

typedef struct dslab_rates {
  double feller_max; /* max_i sigma_i^2 / B_n^2 */
  double rate_sigma; /* n * feller_max */
  double rate_mu;    /* sqrt(n) * max_i |mu_i| / B_n */
  double b_n2;
} dslab_rates;

DSLAB_API dslab_status dslab_feller_and_rates(const dslab_array* array, uint64_t n,
                                              dslab_rates* out);

/* ------------------------------------------------------------------ */
/* Exact oracle                                                       */
/* ------------------------------------------------------------------ */

typedef struct dslab_oracle_moments {
  double e_xbar;
  double e_s2;
  double e_xtilde;
  double e_s1t;
  double e_s2t;
  double e_s3t;
} dslab_oracle_moments;

/* law_json example: {"atoms":[[0,0.5],[1,0.5]]}; n <= 10, support^n <= 1e7.
 * Prefix or uniform_random policies only. */
DSLAB_API dslab_status dslab_oracle_expectations(const char* law_json, uint64_t n,
                                                 const dslab_plan* plan,
                                                 dslab_oracle_moments* out);
DSLAB_API dslab_status dslab_oracle_tail_prob(const char* law_json, uint64_t n,
                                              const dslab_plan* plan, double eps, double* out);

/* ------------------------------------------------------------------ */
/* Distribution-free helpers                                          */
/* ------------------------------------------------------------------ */

/* Standard normal CDF; |error| <= 1e-10. */
DSLAB_API double dslab_standard_normal_cdf(double x);

/* Kolmogorov-Smirnov distance between the empirical CDF of samples[0..len)
 * and the reference CDF cdf(x, ctx). */
DSLAB_API dslab_status dslab_ks_statistic(const double* samples, size_t len,
                                          double (*cdf)(double x, void* ctx), void* ctx,
                                          double* out);

/* ------------------------------------------------------------------ */
/* Experiment runner                                                  */
/* ------------------------------------------------------------------ */

/* Schema/cross-field validation of an experiment config. Returns DSLAB_OK
 * with a JSON array of diagnostics in *out_diagnostics_json (may be empty or
 * contain warnings for negative-control setups); the call fails only on
 * malformed JSON text. Free the string with dslab_string_free. */
DSLAB_API dslab_status dslab_validate(const char* config_json, char** out_diagnostics_json);

typedef struct dslab_run_result dslab_run_result;

/* Runs the experiment described by config_json with the given worker count
 * (results are worker-count independent). On success the result holds the
 * CSV/JSON artifact bodies and the basename "<experiment>-<config hash>". */
DSLAB_API dslab_status dslab_run(const char* config_json, int workers, dslab_run_result** out);
DSLAB_API const char* dslab_run_result_csv(const dslab_run_result* result);
DSLAB_API const char* dslab_run_result_json(const dslab_run_result* result);
DSLAB_API const char* dslab_run_result_basename(const dslab_run_result* result);
DSLAB_API void dslab_run_result_destroy(dslab_run_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DSLAB_H */
