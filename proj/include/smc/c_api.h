// Copyright 2026 The smc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the spectral matrix-completion library.
 *
 * Every object is an opaque handle released by its matching *_free function.
 * Functions return SMC_OK or an error status; on error the thread's last
 * error message is available through smc_last_error() until the next call
 * that fails on the same thread. Output pointers are untouched on failure.
 */
#ifndef SMC_C_API_H_
#define SMC_C_API_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SMC_BUILDING_CAPI)
#    define SMC_API __declspec(dllexport)
#  else
#    define SMC_API __declspec(dllimport)
#  endif
#else
#  define SMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smc_status {
  SMC_OK = 0,
  SMC_ERR_INVALID_ARGUMENT = 1,
  SMC_ERR_PARSE = 2,
  SMC_ERR_IO = 3,
  SMC_ERR_DIMENSION = 4,
  SMC_ERR_DEGENERATE = 5,
  SMC_ERR_NO_CONVERGENCE = 6,
  SMC_ERR_BUDGET = 7,
  SMC_ERR_INTERNAL = 99
} smc_status;

typedef enum smc_sign_method {
  SMC_SIGNS_EXHAUSTIVE = 0,
  SMC_SIGNS_HEURISTIC = 1,
  SMC_SIGNS_AUTO = 2
} smc_sign_method;

typedef enum smc_format { SMC_FORMAT_JSON = 0, SMC_FORMAT_CSV = 1 } smc_format;

typedef struct smc_observed smc_observed;
typedef struct smc_estimate smc_estimate;
typedef struct smc_rank smc_rank;
typedef struct smc_completion smc_completion;
typedef struct smc_inference smc_inference;
typedef struct smc_sim_result smc_sim_result;

SMC_API const char* smc_version(void);
SMC_API const char* smc_last_error(void);
SMC_API const char* smc_status_string(smc_status status);

/* ---- observed matrices ------------------------------------------------ */

typedef struct smc_triplet_options {
  char delimiter;       /* ' ' or '\t' split on any blank run; default '\t' */
  size_t rows;          /* 0: max row id seen */
  size_t cols;          /* 0: max col id seen */
  int dedup_average;    /* nonzero: average duplicate cells instead of failing */
} smc_triplet_options;

SMC_API void smc_triplet_options_init(smc_triplet_options* options);

SMC_API smc_status smc_observed_load_triplets(const char* path,
                                              const smc_triplet_options* options,
                                              smc_observed** out);
SMC_API smc_status smc_observed_load_dense(const char* path,
                                           const char* missing_token,
                                           smc_observed** out);
/* 0-based indices. */
SMC_API smc_status smc_observed_from_arrays(size_t rows, size_t cols,
                                            size_t count, const size_t* row_idx,
                                            const size_t* col_idx,
                                            const double* values,
                                            smc_observed** out);
SMC_API smc_status smc_observed_shape(const smc_observed* obs, size_t* rows,
                                      size_t* cols, size_t* nnz);
SMC_API smc_status smc_observed_write_triplets(const smc_observed* obs,
                                               const char* path, char delimiter);
SMC_API double smc_observed_p_hat(const smc_observed* obs);
SMC_API void smc_observed_free(smc_observed* obs);

/* ---- rank selection --------------------------------------------------- */

SMC_API smc_status smc_rank_select(const smc_observed* obs, double c_const,
                                   smc_rank** out);
SMC_API size_t smc_rank_r_hat(const smc_rank* rank);
SMC_API double smc_rank_threshold(const smc_rank* rank);
/* Copies up to `capacity` eigenvalues (descending); *length gets the total. */
SMC_API smc_status smc_rank_eigenvalues(const smc_rank* rank, double* values,
                                        size_t capacity, size_t* length);
SMC_API smc_status smc_rank_write(const smc_rank* rank, const char* path,
                                  smc_format format);
/* (index, value) CSV of the top `k` eigenvalues; k = 0 writes all. */
SMC_API smc_status smc_rank_write_scree(const smc_rank* rank, const char* path,
                                        size_t k);
SMC_API void smc_rank_free(smc_rank* rank);

/* ---- spectral estimate ------------------------------------------------ */

typedef struct smc_estimate_info {
  size_t rank;
  size_t rows;
  size_t cols;
  double p_hat;
  double tau_hat;
  size_t clamp_count;
} smc_estimate_info;

SMC_API smc_status smc_estimate_create(const smc_observed* obs, size_t rank,
                                       smc_estimate** out);
SMC_API smc_status smc_estimate_get_info(const smc_estimate* est,
                                         smc_estimate_info* info);
/* lambda_hat into `values` (capacity >= rank). */
SMC_API smc_status smc_estimate_lambda(const smc_estimate* est, double* values,
                                       size_t capacity);
/* Column-major n x r (left) or d x r (right) factor. */
SMC_API smc_status smc_estimate_factor(const smc_estimate* est, int right,
                                       double* values, size_t capacity);
SMC_API smc_status smc_estimate_write(const smc_estimate* est, const char* path,
                                      smc_format format);
SMC_API void smc_estimate_free(smc_estimate* est);

/* ---- completion ------------------------------------------------------- */

SMC_API smc_status smc_complete(const smc_estimate* est, const smc_observed* obs,
                                smc_sign_method method, smc_completion** out);
SMC_API smc_status smc_completion_signs(const smc_completion* cm, int* signs,
                                        size_t capacity);
SMC_API smc_status smc_completion_predict(const smc_completion* cm, size_t row,
                                          size_t col, double* value);
SMC_API smc_status smc_completion_rmse(const smc_completion* cm,
                                       const smc_observed* test, double* rmse);
SMC_API smc_status smc_completion_write(const smc_completion* cm,
                                        const char* path, smc_format format);
SMC_API smc_status smc_completion_write_dense(const smc_completion* cm,
                                              const char* path);
SMC_API void smc_completion_free(smc_completion* cm);

/* ---- inference -------------------------------------------------------- */

typedef struct smc_inference_info {
  double sigma2_hat;
  double sigma_lambda2;
  double alpha;
  double regime_ratio;
  int regime_warning;
  size_t rank;
} smc_inference_info;

/* m = 0 uses all r singular values for sigma_lambda2. */
SMC_API smc_status smc_infer(const smc_completion* cm, double alpha, size_t m,
                             smc_inference** out);
SMC_API smc_status smc_inference_get_info(const smc_inference* inf,
                                          smc_inference_info* info);
SMC_API smc_status smc_inference_intervals(const smc_inference* inf,
                                           double* lower, double* upper,
                                           size_t capacity);
SMC_API smc_status smc_inference_write(const smc_inference* inf,
                                       const char* path, smc_format format);
SMC_API void smc_inference_free(smc_inference* inf);

/* ---- simulation ------------------------------------------------------- */

typedef struct smc_sim_config {
  size_t n;
  size_t d;             /* 0: round(2 sqrt(n)) */
  double p;
  double sigma;
  size_t true_rank;
  double factor_range;
  size_t replicates;
  uint64_t seed;
  size_t metrics_m;     /* 0: true_rank */
  double rank_constant;
} smc_sim_config;

typedef struct smc_metric_row {
  size_t replicate;
  double mse_matrix;
  double mse_lambda;
  double mse_v;
  double mse_u;
  double sin2_v;
  double sin2_u;
  double z_stat;
  size_t r_hat;
  int sign_correct;
  int clamped;
} smc_metric_row;

SMC_API void smc_sim_config_init(smc_sim_config* config);
/* threads = 0 uses the hardware concurrency; results do not depend on it. */
SMC_API smc_status smc_simulate(const smc_sim_config* config, size_t threads,
                                smc_sim_result** out);
SMC_API size_t smc_sim_result_size(const smc_sim_result* res);
SMC_API smc_status smc_sim_result_row(const smc_sim_result* res, size_t index,
                                      smc_metric_row* row);
SMC_API smc_status smc_sim_result_write(const smc_sim_result* res,
                                        const char* path, smc_format format);
/* Rows and aggregates of several results in one pair of CSV files;
 * either path may be NULL. */
SMC_API smc_status smc_sim_results_write_csv(const smc_sim_result* const* res,
                                             size_t count, const char* rows_path,
                                             const char* aggregates_path);
SMC_API void smc_sim_result_free(smc_sim_result* res);

#ifdef __cplusplus
}
#endif

#endif /* SMC_C_API_H_ */
