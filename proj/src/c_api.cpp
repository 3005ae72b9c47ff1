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

#include "smc/c_api.h"

#include <algorithm>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "smc/error.hpp"
#include "smc/gram.hpp"
#include "smc/inference.hpp"
#include "smc/matrix_io.hpp"
#include "smc/metrics.hpp"
#include "smc/rank.hpp"
#include "smc/report.hpp"
#include "smc/signs.hpp"
#include "smc/sim.hpp"
#include "smc/spectral.hpp"

struct smc_observed {
  smc::ObservedMatrix value;
};
struct smc_estimate {
  smc::SpectralEstimate value;
};
struct smc_rank {
  smc::RankDecision value;
};
struct smc_completion {
  smc::CompletedMatrix value;
};
struct smc_inference {
  smc::InferenceReport value;
};
struct smc_sim_result {
  smc::SimResult value;
};

namespace {

thread_local std::string g_last_error;

smc_status SetError(smc_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
smc_status Guard(Fn&& fn) {
  try {
    fn();
    return SMC_OK;
  } catch (const smc::Error& e) {
    return SetError(static_cast<smc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(SMC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(SMC_ERR_INTERNAL, e.what());
  } catch (...) {
    return SetError(SMC_ERR_INTERNAL, "unknown error");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) smc::Fail(smc::ErrorCode::kInvalidArgument, what);
}

smc::ReportFormat ToFormat(smc_format f) {
  return f == SMC_FORMAT_CSV ? smc::ReportFormat::kCsv : smc::ReportFormat::kJson;
}

smc::SignMethod ToMethod(smc_sign_method m) {
  switch (m) {
    case SMC_SIGNS_EXHAUSTIVE: return smc::SignMethod::kExhaustive;
    case SMC_SIGNS_HEURISTIC: return smc::SignMethod::kHeuristic;
    case SMC_SIGNS_AUTO: return smc::SignMethod::kAuto;
  }
  smc::Fail(smc::ErrorCode::kInvalidArgument, "unknown sign method");
}

smc::SimConfig ToConfig(const smc_sim_config& c) {
  smc::SimConfig out;
  out.n = c.n;
  out.d = c.d;
  out.p = c.p;
  out.sigma = c.sigma;
  out.true_rank = c.true_rank;
  out.factor_range = c.factor_range;
  out.replicates = c.replicates;
  out.seed = c.seed;
  out.metrics_m = c.metrics_m;
  out.rank_constant = c.rank_constant;
  return out;
}

}  // namespace

extern "C" {

const char* smc_version(void) { return "1.0.0"; }

const char* smc_last_error(void) { return g_last_error.c_str(); }

const char* smc_status_string(smc_status status) {
  switch (status) {
    case SMC_OK: return "ok";
    case SMC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SMC_ERR_PARSE: return "parse error";
    case SMC_ERR_IO: return "i/o error";
    case SMC_ERR_DIMENSION: return "dimension mismatch";
    case SMC_ERR_DEGENERATE: return "degenerate input";
    case SMC_ERR_NO_CONVERGENCE: return "no convergence";
    case SMC_ERR_BUDGET: return "budget exceeded";
    case SMC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void smc_triplet_options_init(smc_triplet_options* options) {
  if (options == nullptr) return;
  options->delimiter = '\t';
  options->rows = 0;
  options->cols = 0;
  options->dedup_average = 0;
}

smc_status smc_observed_load_triplets(const char* path,
                                      const smc_triplet_options* options,
                                      smc_observed** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    smc::IoOptions io;
    if (options != nullptr) {
      io.delimiter = options->delimiter;
      io.rows = options->rows;
      io.cols = options->cols;
      io.dedup = options->dedup_average ? smc::DuplicatePolicy::kAverage
                                        : smc::DuplicatePolicy::kError;
    }
    *out = new smc_observed{smc::LoadTriplets(path, io)};
  });
}

smc_status smc_observed_load_dense(const char* path, const char* missing_token,
                                   smc_observed** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new smc_observed{
        smc::LoadDense(path, missing_token != nullptr ? missing_token : "NA")};
  });
}

smc_status smc_observed_from_arrays(size_t rows, size_t cols, size_t count,
                                    const size_t* row_idx, const size_t* col_idx,
                                    const double* values, smc_observed** out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    Require(count == 0 || (row_idx && col_idx && values), "null arrays");
    std::vector<smc::Entry> entries(count);
    for (size_t i = 0; i < count; ++i) {
      entries[i] = {row_idx[i], col_idx[i], values[i]};
    }
    *out = new smc_observed{smc::ObservedMatrix(rows, cols, std::move(entries))};
  });
}

smc_status smc_observed_shape(const smc_observed* obs, size_t* rows,
                              size_t* cols, size_t* nnz) {
  return Guard([&] {
    Require(obs != nullptr, "null handle");
    if (rows) *rows = obs->value.rows();
    if (cols) *cols = obs->value.cols();
    if (nnz) *nnz = obs->value.nnz();
  });
}

smc_status smc_observed_write_triplets(const smc_observed* obs, const char* path,
                                       char delimiter) {
  return Guard([&] {
    Require(obs != nullptr && path != nullptr, "null argument");
    smc::WriteTriplets(obs->value, path, delimiter);
  });
}

double smc_observed_p_hat(const smc_observed* obs) {
  double p = -1.0;
  if (Guard([&] {
        Require(obs != nullptr, "null handle");
        p = smc::EstimateObservationRate(obs->value);
      }) != SMC_OK) {
    return -1.0;
  }
  return p;
}

void smc_observed_free(smc_observed* obs) { delete obs; }

smc_status smc_rank_select(const smc_observed* obs, double c_const,
                           smc_rank** out) {
  return Guard([&] {
    Require(obs != nullptr && out != nullptr, "null argument");
    *out = new smc_rank{smc::EstimateRank(obs->value, c_const)};
  });
}

size_t smc_rank_r_hat(const smc_rank* rank) {
  return rank != nullptr ? rank->value.r_hat : 0;
}

double smc_rank_threshold(const smc_rank* rank) {
  return rank != nullptr ? rank->value.threshold : 0.0;
}

smc_status smc_rank_eigenvalues(const smc_rank* rank, double* values,
                                size_t capacity, size_t* length) {
  return Guard([&] {
    Require(rank != nullptr, "null handle");
    const auto& ev = rank->value.eigenvalues;
    const auto total = static_cast<size_t>(ev.size());
    if (length) *length = total;
    for (size_t i = 0; i < std::min(total, capacity) && values; ++i) {
      values[i] = ev(static_cast<Eigen::Index>(i));
    }
  });
}

smc_status smc_rank_write(const smc_rank* rank, const char* path,
                          smc_format format) {
  return Guard([&] {
    Require(rank != nullptr && path != nullptr, "null argument");
    smc::WriteReport(rank->value, path, ToFormat(format));
  });
}

smc_status smc_rank_write_scree(const smc_rank* rank, const char* path,
                                size_t k) {
  return Guard([&] {
    Require(rank != nullptr && path != nullptr, "null argument");
    const auto& ev = rank->value.eigenvalues;
    if (k == 0) k = static_cast<size_t>(ev.size());
    smc::WriteTextFile(smc::ScreeCsv(smc::Scree(ev, k)), path);
  });
}

void smc_rank_free(smc_rank* rank) { delete rank; }

smc_status smc_estimate_create(const smc_observed* obs, size_t rank,
                               smc_estimate** out) {
  return Guard([&] {
    Require(obs != nullptr && out != nullptr, "null argument");
    *out = new smc_estimate{smc::EstimateSingularTriplets(obs->value, rank)};
  });
}

smc_status smc_estimate_get_info(const smc_estimate* est,
                                 smc_estimate_info* info) {
  return Guard([&] {
    Require(est != nullptr && info != nullptr, "null argument");
    const auto& e = est->value;
    *info = {e.rank, e.n_rows, e.n_cols, e.p_hat, e.tau_hat, e.clamp_count};
  });
}

smc_status smc_estimate_lambda(const smc_estimate* est, double* values,
                               size_t capacity) {
  return Guard([&] {
    Require(est != nullptr && values != nullptr, "null argument");
    Require(capacity >= est->value.rank, "buffer too small");
    for (size_t i = 0; i < est->value.rank; ++i) {
      values[i] = est->value.lambda_hat(static_cast<Eigen::Index>(i));
    }
  });
}

smc_status smc_estimate_factor(const smc_estimate* est, int right,
                               double* values, size_t capacity) {
  return Guard([&] {
    Require(est != nullptr && values != nullptr, "null argument");
    const Eigen::MatrixXd& f = right ? est->value.V_hat : est->value.U_hat;
    Require(capacity >= static_cast<size_t>(f.size()), "buffer too small");
    std::copy(f.data(), f.data() + f.size(), values);
  });
}

smc_status smc_estimate_write(const smc_estimate* est, const char* path,
                              smc_format format) {
  return Guard([&] {
    Require(est != nullptr && path != nullptr, "null argument");
    smc::WriteReport(est->value, path, ToFormat(format));
  });
}

void smc_estimate_free(smc_estimate* est) { delete est; }

smc_status smc_complete(const smc_estimate* est, const smc_observed* obs,
                        smc_sign_method method, smc_completion** out) {
  return Guard([&] {
    Require(est != nullptr && obs != nullptr && out != nullptr, "null argument");
    smc::SignMethod used = smc::SignMethod::kExhaustive;
    auto signs = smc::ResolveSigns(est->value, obs->value, ToMethod(method), &used);
    *out = new smc_completion{smc::Assemble(est->value, std::move(signs), used)};
  });
}

smc_status smc_completion_signs(const smc_completion* cm, int* signs,
                                size_t capacity) {
  return Guard([&] {
    Require(cm != nullptr && signs != nullptr, "null argument");
    Require(capacity >= cm->value.signs.size(), "buffer too small");
    std::copy(cm->value.signs.begin(), cm->value.signs.end(), signs);
  });
}

smc_status smc_completion_predict(const smc_completion* cm, size_t row,
                                  size_t col, double* value) {
  return Guard([&] {
    Require(cm != nullptr && value != nullptr, "null argument");
    *value = cm->value.predict(row, col);
  });
}

smc_status smc_completion_rmse(const smc_completion* cm, const smc_observed* test,
                               double* rmse) {
  return Guard([&] {
    Require(cm != nullptr && test != nullptr && rmse != nullptr, "null argument");
    *rmse = smc::RmseOnOmega(cm->value, test->value);
  });
}

smc_status smc_completion_write(const smc_completion* cm, const char* path,
                                smc_format format) {
  return Guard([&] {
    Require(cm != nullptr && path != nullptr, "null argument");
    smc::WriteReport(cm->value, path, ToFormat(format));
  });
}

smc_status smc_completion_write_dense(const smc_completion* cm,
                                      const char* path) {
  return Guard([&] {
    Require(cm != nullptr && path != nullptr, "null argument");
    smc::WriteTextFile(smc::DenseCsv(cm->value.dense()), path);
  });
}

void smc_completion_free(smc_completion* cm) { delete cm; }

smc_status smc_infer(const smc_completion* cm, double alpha, size_t m,
                     smc_inference** out) {
  return Guard([&] {
    Require(cm != nullptr && out != nullptr, "null argument");
    *out = new smc_inference{smc::Infer(cm->value, alpha, m)};
  });
}

smc_status smc_inference_get_info(const smc_inference* inf,
                                  smc_inference_info* info) {
  return Guard([&] {
    Require(inf != nullptr && info != nullptr, "null argument");
    const auto& r = inf->value;
    *info = {r.sigma2_hat,   r.sigma_lambda2,        r.alpha,
             r.regime_ratio, r.regime_warning ? 1 : 0, r.intervals.size()};
  });
}

smc_status smc_inference_intervals(const smc_inference* inf, double* lower,
                                   double* upper, size_t capacity) {
  return Guard([&] {
    Require(inf != nullptr && lower != nullptr && upper != nullptr,
            "null argument");
    const auto& iv = inf->value.intervals;
    Require(capacity >= iv.size(), "buffer too small");
    for (size_t i = 0; i < iv.size(); ++i) {
      lower[i] = iv[i].lower;
      upper[i] = iv[i].upper;
    }
  });
}

smc_status smc_inference_write(const smc_inference* inf, const char* path,
                               smc_format format) {
  return Guard([&] {
    Require(inf != nullptr && path != nullptr, "null argument");
    smc::WriteReport(inf->value, path, ToFormat(format));
  });
}

void smc_inference_free(smc_inference* inf) { delete inf; }

void smc_sim_config_init(smc_sim_config* config) {
  if (config == nullptr) return;
  const smc::SimConfig defaults;
  *config = {defaults.n,          defaults.d,          defaults.p,
             defaults.sigma,      defaults.true_rank,  defaults.factor_range,
             defaults.replicates, defaults.seed,       defaults.metrics_m,
             defaults.rank_constant};
}

smc_status smc_simulate(const smc_sim_config* config, size_t threads,
                        smc_sim_result** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "null argument");
    *out = new smc_sim_result{smc::RunReplicates(ToConfig(*config), threads)};
  });
}

size_t smc_sim_result_size(const smc_sim_result* res) {
  return res != nullptr ? res->value.rows.size() : 0;
}

smc_status smc_sim_result_row(const smc_sim_result* res, size_t index,
                              smc_metric_row* row) {
  return Guard([&] {
    Require(res != nullptr && row != nullptr, "null argument");
    Require(index < res->value.rows.size(), "row index out of range");
    const smc::MetricRow& r = res->value.rows[index];
    *row = {r.replicate, r.mse_matrix, r.mse_lambda, r.mse_v,
            r.mse_u,     r.sin2_v,     r.sin2_u,     r.z_stat,
            r.r_hat,     r.sign_correct ? 1 : 0,     r.clamped ? 1 : 0};
  });
}

smc_status smc_sim_result_write(const smc_sim_result* res, const char* path,
                                smc_format format) {
  return Guard([&] {
    Require(res != nullptr && path != nullptr, "null argument");
    smc::WriteReport(res->value, path, ToFormat(format));
  });
}

smc_status smc_sim_results_write_csv(const smc_sim_result* const* res,
                                     size_t count, const char* rows_path,
                                     const char* aggregates_path) {
  return Guard([&] {
    Require(count == 0 || res != nullptr, "null argument");
    std::vector<smc::SimResult> all;
    all.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      Require(res[i] != nullptr, "null result handle");
      all.push_back(res[i]->value);
    }
    if (rows_path) smc::WriteSimRowsCsv(all, rows_path);
    if (aggregates_path) smc::WriteSimAggregatesCsv(all, aggregates_path);
  });
}

void smc_sim_result_free(smc_sim_result* res) { delete res; }

}  // extern "C"
