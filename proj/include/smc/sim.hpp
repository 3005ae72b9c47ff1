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

#ifndef SMC_SIM_HPP_
#define SMC_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "smc/observed.hpp"
#include "smc/rng.hpp"

namespace smc {

struct SimConfig {
  std::size_t n = 100;
  std::size_t d = 0;  // 0: round-half-up of 2 sqrt(n)
  double p = 0.5;
  double sigma = 1.0;
  std::size_t true_rank = 2;
  double factor_range = 5.0;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::size_t metrics_m = 0;  // 0: true_rank
  double rank_constant = 1.0;

  std::size_t resolved_d() const;
  std::size_t resolved_m() const;
  // Throws on invalid values; returns false when d > n (allowed, warned).
  bool validate() const;
};

struct MetricRow {
  std::size_t replicate = 0;
  double mse_matrix = 0.0;  // ||M_hat - M0||_F^2 / (n d)
  double mse_lambda = 0.0;  // ||diag(lambda_hat) - Lambda||_F^2
  double mse_v = 0.0;       // ||align(V_hat) - V||_F^2
  double mse_u = 0.0;
  double sin2_v = 0.0;      // first m columns
  double sin2_u = 0.0;
  double z_stat = 0.0;      // NaN when sigma_lambda = 0
  std::size_t r_hat = 0;
  bool sign_correct = false;
  bool clamped = false;
};

struct MetricSummary {
  std::string name;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;  // finite values used
};

struct SimResult {
  SimConfig config;
  std::vector<MetricRow> rows;
  std::vector<MetricSummary> aggregates;
};

struct Instance {
  GroundTruth truth;
  ObservedMatrix observed;
};

// M0 = A B^T with A, B uniform on [-range, range]; mask Bernoulli(p); noise
// N(0, sigma^2) at observed cells. All draws come from the Philox stream
// (key = seed, stream = replicate_index).
Instance GenerateInstance(const SimConfig& config, std::size_t replicate_index);

// Full per-replicate pipeline on one instance.
MetricRow EvaluateReplicate(const SimConfig& config, std::size_t replicate_index);

// Replicates are distributed over `threads` workers (0: hardware
// concurrency) and gathered in index order; output is independent of the
// thread count.
SimResult RunReplicates(const SimConfig& config, std::size_t threads = 1);

std::vector<MetricSummary> Aggregate(const std::vector<MetricRow>& rows);

// One header row, then one line per replicate of every result.
void WriteSimRowsCsv(const std::vector<SimResult>& results,
                     const std::filesystem::path& path);
void WriteSimAggregatesCsv(const std::vector<SimResult>& results,
                           const std::filesystem::path& path);
std::string SimRowsCsv(const std::vector<SimResult>& results);
std::string SimAggregatesCsv(const std::vector<SimResult>& results);

}  // namespace smc

#endif  // SMC_SIM_HPP_
