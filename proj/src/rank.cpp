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

#include "smc/rank.hpp"

#include <cmath>

#include "smc/error.hpp"
#include "smc/gram.hpp"

namespace smc {

RankDecision EstimateRank(const EigenLadder& ladder, double p_hat,
                          std::size_t n, std::size_t d, double c_const) {
  if (!(p_hat > 0.0)) Fail(ErrorCode::kDegenerate, "rank: p_hat must be > 0");
  if (d < 2) Fail(ErrorCode::kInvalidArgument, "rank: need d >= 2");
  if (!(c_const > 0.0)) Fail(ErrorCode::kInvalidArgument, "rank: c must be > 0");
  if (!ladder.complete() || ladder.dim != d) {
    Fail(ErrorCode::kInvalidArgument, "rank: full eigenvalue ladder required");
  }
  RankDecision out;
  out.c_const = c_const;
  out.eigenvalues = ladder.values;
  out.threshold = p_hat * p_hat * static_cast<double>(n) * c_const *
                  std::log(static_cast<double>(d));
  for (Eigen::Index i = 0; i < ladder.values.size(); ++i) {
    if (ladder.values(i) >= out.threshold) ++out.r_hat;
  }
  return out;
}

RankDecision EstimateRank(const ObservedMatrix& obs, double c_const) {
  const double p_hat = EstimateObservationRate(obs);
  EigenLadder ladder =
      SymEigDesc(BiasAdjust(GramRight(obs), p_hat), kAllEigenpairs, false);
  return EstimateRank(ladder, p_hat, obs.rows(), obs.cols(), c_const);
}

std::vector<std::pair<std::size_t, double>> Scree(const Eigen::VectorXd& values,
                                                  std::size_t k) {
  if (k > static_cast<std::size_t>(values.size())) {
    Fail(ErrorCode::kInvalidArgument, "scree: k exceeds ladder length");
  }
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.emplace_back(i + 1, values(static_cast<Eigen::Index>(i)));
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> Scree(const EigenLadder& ladder,
                                                  std::size_t k) {
  return Scree(ladder.values, k);
}

}  // namespace smc
