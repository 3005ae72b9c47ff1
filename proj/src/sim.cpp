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

#include "smc/sim.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "smc/error.hpp"
#include "smc/eigen_solver.hpp"
#include "smc/gram.hpp"
#include "smc/inference.hpp"
#include "smc/metrics.hpp"
#include "smc/rank.hpp"
#include "smc/signs.hpp"
#include "smc/spectral.hpp"

namespace smc {

std::size_t SimConfig::resolved_d() const {
  if (d != 0) return d;
  return static_cast<std::size_t>(
      std::floor(2.0 * std::sqrt(static_cast<double>(n)) + 0.5));
}

std::size_t SimConfig::resolved_m() const {
  return metrics_m != 0 ? metrics_m : true_rank;
}

bool SimConfig::validate() const {
  const std::size_t dd = resolved_d();
  if (n < 2 || dd < 2) Fail(ErrorCode::kInvalidArgument, "sim: need n, d >= 2");
  if (!(p > 0.0 && p <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "sim: p must be in (0, 1]");
  }
  if (!(sigma >= 0.0)) Fail(ErrorCode::kInvalidArgument, "sim: sigma < 0");
  if (true_rank < 1 || true_rank >= std::min(n, dd)) {
    Fail(ErrorCode::kInvalidArgument, "sim: true_rank must be in [1, min(n,d))");
  }
  if (!(factor_range > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "sim: factor_range must be > 0");
  }
  if (resolved_m() < 1 || resolved_m() > true_rank) {
    Fail(ErrorCode::kInvalidArgument, "sim: metrics_m must be in [1, rank]");
  }
  if (!(rank_constant > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "sim: rank constant must be > 0");
  }
  return dd <= n;
}

Instance GenerateInstance(const SimConfig& config, std::size_t replicate_index) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(config.n);
  const auto d = static_cast<Eigen::Index>(config.resolved_d());
  const auto r = static_cast<Eigen::Index>(config.true_rank);
  Philox4x32 rng(config.seed, replicate_index);
  const double range = config.factor_range;

  Eigen::MatrixXd A(n, r), B(d, r);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < r; ++j) A(k, j) = rng.uniform(-range, range);
  for (Eigen::Index h = 0; h < d; ++h)
    for (Eigen::Index j = 0; j < r; ++j) B(h, j) = rng.uniform(-range, range);
  Eigen::MatrixXd M0 = A * B.transpose();

  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(
      config.p * static_cast<double>(n) * static_cast<double>(d) * 1.1) + 16);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index h = 0; h < d; ++h) {
      // p = 1 must observe every cell; uniform() < 1 always holds.
      if (rng.uniform() < config.p) {
        const double noise = config.sigma > 0.0 ? config.sigma * rng.normal() : 0.0;
        entries.push_back({static_cast<std::size_t>(k),
                           static_cast<std::size_t>(h), M0(k, h) + noise});
      }
    }
  }
  Instance out{GroundTruth::FromMatrix(std::move(M0), config.true_rank,
                                       config.sigma, config.p),
               ObservedMatrix(config.n, config.resolved_d(), std::move(entries))};
  return out;
}

MetricRow EvaluateReplicate(const SimConfig& config, std::size_t replicate_index) {
  Instance inst = GenerateInstance(config, replicate_index);
  const GroundTruth& truth = inst.truth;
  const ObservedMatrix& obs = inst.observed;
  const std::size_t m = config.resolved_m();
  const auto mm = static_cast<Eigen::Index>(m);

  MetricRow row;
  row.replicate = replicate_index;
  SpectralEstimate est = EstimateSingularTriplets(obs, config.true_rank);
  row.clamped = est.clamp_count > 0;

  std::vector<int> signs = ResolveSignsExhaustive(est, obs);
  row.sign_correct = signs == OracleSigns(est, truth);

  const double nd = static_cast<double>(obs.rows()) * static_cast<double>(obs.cols());
  CompletedMatrix cm = Assemble(est, signs, SignMethod::kExhaustive);
  row.mse_matrix = FrobeniusMse(cm.dense(), truth.M0, nd);
  row.mse_lambda = (est.lambda_hat - truth.lambdas).squaredNorm();
  row.mse_v = FrobeniusMse(SignAlign(est.V_hat, truth.V), truth.V, 1.0);
  row.mse_u = FrobeniusMse(SignAlign(est.U_hat, truth.U), truth.U, 1.0);
  row.sin2_v = SinThetaSq(est.V_hat.leftCols(mm), truth.V.leftCols(mm));
  row.sin2_u = SinThetaSq(est.U_hat.leftCols(mm), truth.U.leftCols(mm));

  if (SigmaLambda2(truth, m) > 0.0) {
    row.z_stat = StandardizedLambdaStat(est, truth, m);
  } else {
    row.z_stat = std::numeric_limits<double>::quiet_NaN();
  }

  EigenLadder full = SymEigDesc(BiasAdjust(GramRight(obs), est.p_hat),
                                kAllEigenpairs, false);
  row.r_hat = EstimateRank(full, est.p_hat, obs.rows(), obs.cols(),
                           config.rank_constant)
                  .r_hat;
  return row;
}

std::vector<MetricSummary> Aggregate(const std::vector<MetricRow>& rows) {
  struct Field {
    const char* name;
    double (*get)(const MetricRow&);
  };
  static constexpr Field kFields[] = {
      {"mse_matrix", [](const MetricRow& r) { return r.mse_matrix; }},
      {"mse_lambda", [](const MetricRow& r) { return r.mse_lambda; }},
      {"mse_v", [](const MetricRow& r) { return r.mse_v; }},
      {"mse_u", [](const MetricRow& r) { return r.mse_u; }},
      {"sin2_v", [](const MetricRow& r) { return r.sin2_v; }},
      {"sin2_u", [](const MetricRow& r) { return r.sin2_u; }},
      {"z_stat", [](const MetricRow& r) { return r.z_stat; }},
      {"r_hat", [](const MetricRow& r) { return static_cast<double>(r.r_hat); }},
      {"sign_correct",
       [](const MetricRow& r) { return r.sign_correct ? 1.0 : 0.0; }},
      {"clamped", [](const MetricRow& r) { return r.clamped ? 1.0 : 0.0; }},
  };
  std::vector<MetricSummary> out;
  for (const Field& f : kFields) {
    MetricSummary s;
    s.name = f.name;
    double sum = 0.0;
    for (const MetricRow& r : rows) {
      const double v = f.get(r);
      if (std::isfinite(v)) {
        sum += v;
        ++s.count;
      }
    }
    if (s.count == 0) {
      s.mean = s.std_error = std::numeric_limits<double>::quiet_NaN();
    } else {
      s.mean = sum / static_cast<double>(s.count);
      double ss = 0.0;
      for (const MetricRow& r : rows) {
        const double v = f.get(r);
        if (std::isfinite(v)) ss += (v - s.mean) * (v - s.mean);
      }
      s.std_error = s.count > 1
                        ? std::sqrt(ss / static_cast<double>(s.count - 1) /
                                    static_cast<double>(s.count))
                        : 0.0;
    }
    out.push_back(std::move(s));
  }
  return out;
}

SimResult RunReplicates(const SimConfig& config, std::size_t threads) {
  config.validate();
  SimResult result;
  result.config = config;
  result.rows.resize(config.replicates);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(config.replicates, 1));

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.replicates) return;
      try {
        result.rows[i] = EvaluateReplicate(config, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      Fail(e.code(), "replicate " + std::to_string(failed_index) + ": " + e.what());
    } catch (const std::exception& e) {
      Fail(ErrorCode::kNonConvergence,
           "replicate " + std::to_string(failed_index) + ": " + e.what());
    }
  }
  result.aggregates = Aggregate(result.rows);
  return result;
}

namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ConfigPrefix(const SimConfig& c) {
  return std::to_string(c.n) + "," + std::to_string(c.resolved_d()) + "," +
         Num(c.p) + "," + Num(c.sigma) + "," + std::to_string(c.true_rank) +
         "," + std::to_string(c.seed);
}

void WriteText(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace

std::string SimRowsCsv(const std::vector<SimResult>& results) {
  std::string out =
      "n,d,p,sigma,rank,seed,replicate,mse_matrix,mse_lambda,mse_v,mse_u,"
      "sin2_v,sin2_u,z_stat,r_hat,sign_correct,clamped\n";
  for (const SimResult& res : results) {
    const std::string prefix = ConfigPrefix(res.config);
    for (const MetricRow& r : res.rows) {
      out += prefix + "," + std::to_string(r.replicate) + "," +
             Num(r.mse_matrix) + "," + Num(r.mse_lambda) + "," + Num(r.mse_v) +
             "," + Num(r.mse_u) + "," + Num(r.sin2_v) + "," + Num(r.sin2_u) +
             "," + Num(r.z_stat) + "," + std::to_string(r.r_hat) + "," +
             (r.sign_correct ? "1" : "0") + "," + (r.clamped ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string SimAggregatesCsv(const std::vector<SimResult>& results) {
  std::string out = "n,d,p,sigma,rank,seed,metric,mean,std_error,count\n";
  for (const SimResult& res : results) {
    const std::string prefix = ConfigPrefix(res.config);
    for (const MetricSummary& s : res.aggregates) {
      out += prefix + "," + s.name + "," + Num(s.mean) + "," +
             Num(s.std_error) + "," + std::to_string(s.count) + "\n";
    }
  }
  return out;
}

void WriteSimRowsCsv(const std::vector<SimResult>& results,
                     const std::filesystem::path& path) {
  WriteText(SimRowsCsv(results), path);
}

void WriteSimAggregatesCsv(const std::vector<SimResult>& results,
                           const std::filesystem::path& path) {
  WriteText(SimAggregatesCsv(results), path);
}

}  // namespace smc
